#include "mzeta/mzv.hpp"

#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <filesystem>
#include <fstream>

using namespace mzeta;

namespace {

Real pi() { return boost::math::constants::pi<Real>(); }

// sum_{n<=N} n^-s + integral tail with the first Euler-Maclaurin corrections
Real zeta_direct(int s, long N) {
  Real sum = 0;
  for (long n = 1; n <= N; ++n) sum += 1 / pow(Real(n), s);
  Real x(N);
  return sum + 1 / ((s - 1) * pow(x, s - 1)) - 1 / (2 * pow(x, s)) + Real(s) / (12 * pow(x, s + 1));
}

Real zeta_twos_closed(int r) {
  return pow(pi(), 2 * r) / boost::math::factorial<Real>(static_cast<unsigned>(2 * r + 1));
}

EvalConfig config(unsigned digits = 30) {
  EvalConfig c;
  c.precision_digits = digits;
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mzeta_test_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_SUITE("mzv") {
  TEST_CASE("fast evaluator against classical values") {
    EvalConfig cfg = config(50);
    PrecisionScope ps(working_digits(cfg.precision_digits));
    CHECK(abs(zeta_fast(Index({2}), cfg).value - pi() * pi() / 6) < Real("1e-45"));
    CHECK(abs(zeta_fast(Index({1, 2}), cfg).value - zeta_direct(3, 20000)) < Real("1e-15"));
    for (int r = 1; r <= 3; ++r) {
      Index twos(std::vector<int>(static_cast<std::size_t>(r), 2));
      CHECK(abs(zeta_fast(twos, cfg).value - zeta_twos_closed(r)) < Real("1e-40"));
    }
    // Euler: zeta(1,1,2) = zeta(4)
    CHECK(abs(zeta_fast(Index({1, 1, 2}), cfg).value - zeta_fast(Index({4}), cfg).value) < Real("1e-45"));
  }

  TEST_CASE("error bounds of the fast evaluator are tight") {
    EvalConfig cfg = config(30);
    PrecisionScope ps(working_digits(cfg.precision_digits));
    Approx a = zeta_fast(Index({3}), cfg);
    CHECK(a.error <= Real("1e-28"));
    CHECK(abs(a.value - zeta_direct(3, 20000)) < Real("1e-15"));
  }

  TEST_CASE("series evaluator") {
    EvalConfig cfg = config(30);
    PrecisionScope ps(working_digits(cfg.precision_digits));
    Approx z2 = zeta_series(Index({2}), cfg);
    CHECK(abs(z2.value - pi() * pi() / 6) <= z2.error);
    CHECK(z2.error < Real("1e-10"));
    Approx z12 = zeta_series(Index({1, 2}), cfg);
    CHECK(abs(z12.value - zeta_direct(3, 20000)) < Real("1e-8"));
    Approx empty = zeta_series(Index(), cfg);
    CHECK(empty.value == 1);
    CHECK(empty.error == 0);
  }

  TEST_CASE("the two evaluators agree for every admissible index up to weight 5") {
    EvalConfig cfg = config(30);
    PrecisionScope ps(working_digits(cfg.precision_digits));
    for (int w = 2; w <= 5; ++w)
      for (const auto& k : indices_of_weight(w)) {
        if (!k.admissible()) continue;
        Approx f = zeta_fast(k, cfg), s = zeta_series(k, cfg);
        INFO(k.str(), " fast ", f.value.str(25), " series ", s.value.str(25), " err ", s.error.str(3));
        CHECK(abs(f.value - s.value) <= f.error + s.error);
      }
  }

  TEST_CASE("divergent indices are rejected") {
    EvalConfig cfg = config();
    CHECK_THROWS_WITH(zeta_fast(Index({2, 1}), cfg), doctest::Contains("divergent multiple zeta value"));
    CHECK_THROWS_WITH(zeta_series(Index({1}), cfg), doctest::Contains("divergent multiple zeta value"));
    IndexCombination c;
    c.add_term(PaddedIndex({2}), 1);
    c.add_term(PaddedIndex({3, 1}), 2);
    CHECK_THROWS_WITH(zeta_combination(c, cfg), doctest::Contains("(3,1)"));
  }

  TEST_CASE("linear extension") {
    EvalConfig cfg = config();
    PrecisionScope ps(working_digits(cfg.precision_digits));
    IndexCombination c;
    c.add_term(PaddedIndex({1, 2}), 1);
    c.add_term(PaddedIndex({3}), 1);
    Approx a = zeta_combination(c, cfg);
    CHECK(abs(a.value - 2 * zeta_direct(3, 20000)) < Real("1e-14"));
    Approx zero = zeta_combination(IndexCombination(), cfg);
    CHECK(zero.value == 0);
    CHECK(zero.error == 0);
    IndexCombination half(PaddedIndex({2}), Rational(-1, 2));
    CHECK(abs(zeta_combination(half, cfg).value + pi() * pi() / 12) < Real("1e-28"));
  }

  TEST_CASE("stuffle witness") {
    EvalConfig cfg = config();
    PrecisionScope ps(working_digits(cfg.precision_digits));
    for (int wa = 2; wa <= 4; ++wa)
      for (int wb = 2; wb <= 4; ++wb)
        for (const auto& a : indices_of_weight(wa))
          for (const auto& b : indices_of_weight(wb)) {
            if (!a.admissible() || !b.admissible()) continue;
            Approx za = zeta_value(a, cfg), zb = zeta_value(b, cfg);
            Approx p = zeta_combination(harmonic_product(a, b), cfg);
            CHECK(abs(za.value * zb.value - p.value) < Real("1e-25"));
          }
  }

  TEST_CASE("cache round trip and transparency") {
    auto path = temp_file("cache.jsonl");
    EvalConfig cfg = config();
    PrecisionScope ps(working_digits(cfg.precision_digits));
    Approx plain = zeta_value(Index({2, 3}), cfg);
    {
      MzvCache cache(path);
      Approx first = zeta_value(Index({2, 3}), cfg, &cache);
      CHECK(cache.misses() == 1);
      Approx second = zeta_value(Index({2, 3}), cfg, &cache);
      CHECK(cache.hits() == 1);
      CHECK(first.value == plain.value);
      CHECK(second.value == plain.value);
      CHECK(second.error == plain.error);
    }
    MzvCache reopened(path);
    CHECK(reopened.records().size() == 1);
    Approx third = zeta_value(Index({2, 3}), cfg, &reopened);
    CHECK(reopened.hits() == 1);
    CHECK(third.value == plain.value);

    // different digits is a different key
    EvalConfig other = config(40);
    CHECK_FALSE(reopened.lookup(Index({2, 3}), "fast", other.precision_digits, 1.0));
    reopened.clear();
    CHECK(reopened.records().empty());
    CHECK(std::filesystem::file_size(path) == 0);
    std::filesystem::remove(path);
  }

  TEST_CASE("damaged cache lines are skipped") {
    auto path = temp_file("damaged.jsonl");
    {
      std::ofstream out(path);
      out << "not json\n";
      out << R"({"index":[2],"value":"oops","error":"1e-40","method":"fast","digits":30})" << '\n';
      out << R"({"index":[3],"value":"1.2020569031595942853997381615114499907649862923405","error":"1e-40","method":"fast","digits":30})"
          << '\n';
      out << R"({"index":[4],"value":"1.0","error")" << '\n';
    }
    MzvCache cache(path);
    auto recs = cache.records();
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].index == Index({3}));
    std::filesystem::remove(path);
  }

  TEST_CASE("loose cache entries are recomputed") {
    MzvCache cache;
    cache.store({Index({2}), "1.6", "0.1", "fast", 30});
    EvalConfig cfg = config();
    PrecisionScope ps(working_digits(cfg.precision_digits));
    Approx a = zeta_value(Index({2}), cfg, &cache);
    CHECK(abs(a.value - pi() * pi() / 6) < Real("1e-28"));
  }

  TEST_CASE("cache location: flag, then environment") {
    CHECK(MzvCache::location(std::string("/tmp/x.jsonl"))->string() == "/tmp/x.jsonl");
    setenv("MZETA_CACHE", "/tmp/y.jsonl", 1);
    CHECK(MzvCache::location(std::nullopt)->string() == "/tmp/y.jsonl");
    unsetenv("MZETA_CACHE");
    CHECK_FALSE(MzvCache::location(std::nullopt));
  }

  TEST_CASE("record json lines") {
    MzvCacheRecord r{Index({1, 2}), "1.5", "1e-30", "fast", 30};
    auto back = record_from_json_line(record_to_json_line(r));
    REQUIRE(back);
    CHECK(back->index == r.index);
    CHECK(back->value == r.value);
    CHECK(back->digits == 30);
    CHECK_FALSE(record_from_json_line("{}"));
  }
}
