// One line per acceptance criterion; exit status 0 iff all pass.
#include "mzeta/eta.hpp"
#include "mzeta/identities.hpp"
#include "mzeta/mzv.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace mzeta;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << "    failed: " << what << '\n';
    }
  }
  void require_report(const Report& r) {
    if (!r.pass) {
      pass = false;
      notes << report_to_text(r, 20);
    }
  }
};

Real pi() { return boost::math::constants::pi<Real>(); }

Real twos_closed_form(int r) {
  return pow(pi(), 2 * r) / boost::math::factorial<Real>(static_cast<unsigned>(2 * r + 1));
}

// sum_{n<=N} n^-3 plus the integral tail and its first corrections
Real zeta3_direct() {
  const long N = 100000;
  Real s = 0;
  for (long n = N; n >= 1; --n) s += 1 / pow(Real(n), 3);
  Real x(N);
  return s + 1 / (2 * x * x) - 1 / (2 * x * x * x) + Real(3) / (12 * pow(x, 4));
}

EvalConfig base_config() {
  EvalConfig c;
  c.precision_digits = 30;
  return c;
}

std::string fmt(const Real& x) { return format_error(abs(x)); }

// --- criteria -------------------------------------------------------------

Outcome small_expansions() {
  Outcome o;
  EvalConfig cfg = base_config();
  cfg.cutoff = 10000;
  cfg.work_budget = 0;  // use the full cutoff
  PrecisionScope ps(working_digits(cfg.precision_digits));
  for (const auto& ex : small_eta_expansions()) {
    auto t0 = Clock::now();
    Approx eta = eta_pair(ex.k, ex.l, cfg);
    Approx rhs = zeta_combination(ex.rhs, cfg);
    const double dt = seconds_since(t0);
    Real gap = abs(eta.value - rhs.value);
    o.require(gap <= Real("1e-5"), ex.k.str() + ";" + ex.l.str() + " gap " + fmt(gap));
    o.require(dt < 60, ex.k.str() + ";" + ex.l.str() + " took " + std::to_string(dt) + " s");
  }
  return o;
}

Outcome ones_equal_twos() {
  Outcome o;
  EvalConfig cfg = base_config();
  PrecisionScope ps(working_digits(cfg.precision_digits));
  auto t0 = Clock::now();
  for (int r = 1; r <= 3; ++r) {
    Index ones(std::vector<int>(static_cast<std::size_t>(r), 1));
    Index twos(std::vector<int>(static_cast<std::size_t>(r), 2));
    Approx eta = eta_pair(ones, ones, cfg);
    Approx z = zeta_value(twos, cfg);
    const Real tol = r == 3 ? Real("1e-3") : Real("1e-4");
    o.require(abs(eta.value - z.value) <= tol, "r=" + std::to_string(r) + " eta vs zeta " + fmt(eta.value - z.value));
    o.require(abs(eta.value - twos_closed_form(r)) <= tol,
              "r=" + std::to_string(r) + " eta vs closed form " + fmt(eta.value - twos_closed_form(r)));
  }
  o.require(seconds_since(t0) < 300, "over 5 minutes");
  return o;
}

Outcome sum_formula_triples() {
  Outcome o;
  EvalConfig cfg = base_config();
  VerifyOptions opts;
  opts.floor = 1e-4;
  auto t0 = Clock::now();
  int count = 0;
  for (int r = 1; r <= 2; ++r)
    for (int k = r; k <= 7; ++k)
      for (int l = r; k + l <= 7; ++l) {
        o.require_report(verify_sum_formula(k, l, r, cfg, opts));
        ++count;
      }
  o.require(count == 31, "expected 31 parameter triples");
  o.require(seconds_since(t0) < 900, "over 15 minutes");
  return o;
}

Outcome decomposition() {
  Outcome o;
  EvalConfig cfg = base_config();
  PrecisionScope ps(working_digits(cfg.precision_digits));
  for (auto [k, l] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    auto reps = verify_thm45(k, l, cfg);
    for (auto& r : reps) o.require_report(r);
    if (k == 1 && l == 1) {
      const Real closed = pow(pi(), 4) / 120;
      o.require(abs(reps[0].routes[1].value - closed) <= Real("1e-4"), "(1,1) decomposition vs pi^4/120");
      o.require(abs(reps[0].routes[0].value - closed) <= Real("1e-4"), "(1,1) eta vs pi^4/120");
    }
  }
  return o;
}

Outcome dual_expansion() {
  Outcome o;
  EvalConfig cfg = base_config();
  for (int w = 1; w <= 4; ++w)
    for (const auto& k : indices_of_weight(w))
      for (int l = 1; l <= 2; ++l)
        for (auto& r : verify_appendix(k, l, cfg)) o.require_report(r);
  return o;
}

Outcome zeta_quality() {
  Outcome o;
  EvalConfig cfg = base_config();
  cfg.precision_digits = 50;
  PrecisionScope ps(working_digits(cfg.precision_digits));
  Approx z2 = zeta_value(Index({2}), cfg);
  o.require(abs(z2.value - pi() * pi() / 6) <= Real("1e-10"), "zeta(2)");
  Approx z12 = zeta_value(Index({1, 2}), cfg);
  o.require(abs(z12.value - zeta3_direct()) <= Real("1e-8"), "zeta(1,2) vs direct zeta(3)");
  Approx z22 = zeta_value(Index({2, 2}), cfg);
  o.require(abs(z22.value - pow(pi(), 4) / 120) <= Real("1e-8"), "zeta(2,2)");

  EvalConfig sc = base_config();
  PrecisionScope ws(working_digits(sc.precision_digits));
  for (int w = 2; w <= 7; ++w)
    for (const auto& k : indices_of_weight(w)) {
      if (!k.admissible()) continue;
      Approx f = zeta_fast(k, sc), s = zeta_series(k, sc);
      o.require(abs(f.value - s.value) <= f.error + s.error,
                "fast vs series at " + k.str() + ": gap " + fmt(f.value - s.value) + ", errors " + fmt(f.error) + " + " +
                    fmt(s.error));
    }
  return o;
}

Outcome quadrature() {
  Outcome o;
  EvalConfig cfg = base_config();
  PrecisionScope ps(working_digits(cfg.precision_digits));
  Approx q = eta_quadrature({{1.0}, {1.0}}, cfg);
  o.require(abs(q.value - pi() * pi() / 6) <= Real("1e-5"), "quadrature (1);(1) vs zeta(2)");
  for (double a : {0.5, 1.5, 2.5})
    for (double b : {0.5, 1.5, 2.5}) {
      if (a == b) continue;
      Approx x = eta_quadrature({{a}, {b}}, cfg), y = eta_quadrature({{b}, {a}}, cfg);
      std::ostringstream what;
      what << "symmetry " << a << ";" << b;
      o.require(abs(x.value - y.value) <= Real("1e-6"), what.str());
    }
  return o;
}

long delannoy(int r, int s) {
  if (r == 0 || s == 0) return 1;
  return delannoy(r - 1, s) + delannoy(r, s - 1) + delannoy(r - 1, s - 1);
}

Outcome combinatorics() {
  Outcome o;
  auto t0 = Clock::now();
  for (int w = 1; w <= 7; ++w)
    for (const auto& k : indices_of_weight(w)) {
      o.require(hoffman_dual(hoffman_dual(k)) == k, "dual involution " + k.str());
      o.require(index_from_jset(j_set(k)) == k, "j-set round trip " + k.str());
      o.require(refinements(k).size() == (std::size_t{1} << (w - k.depth())), "refinement count " + k.str());
      Rational stars = 0;
      const IndexCombination st = star(k);
      for (auto& [t, c] : st.terms()) stars += c;
      o.require(stars == Rational(1L << (k.depth() - 1)), "star count " + k.str());
    }
  for (int wa = 1; wa < 7; ++wa)
    for (int wb = 1; wa + wb <= 7; ++wb)
      for (const auto& a : indices_of_weight(wa))
        for (const auto& b : indices_of_weight(wb)) {
          Rational n = 0;
          const IndexCombination prod = harmonic_product(a, b);
          for (auto& [t, c] : prod.terms()) n += c;
          o.require(n == Rational(delannoy(a.depth(), b.depth())), "stuffle term count " + a.str() + "*" + b.str());
        }
  EvalConfig cfg = base_config();
  PrecisionScope ps(working_digits(cfg.precision_digits));
  Real lhs = zeta_value(Index({2}), cfg).value * zeta_value(Index({3}), cfg).value;
  Real rhs = zeta_combination(harmonic_product(Index({2}), Index({3})), cfg).value;
  o.require(abs(lhs - rhs) <= Real("1e-8"), "zeta(2) zeta(3) vs zeta((2)*(3))");
  o.require(seconds_since(t0) < 60, "over 1 minute");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  PrecisionScope ps(70);
  auto check = [&](const SumExpr& e, long bound, const std::string& what) {
    EvalConfig cfg;
    cfg.precision_digits = 60;
    cfg.cutoff = bound;
    cfg.extrapolate = false;
    Real exact = rational_to_real(brute_force_eval(e, bound));
    Real got = partial_sum(e, bound).value;
    o.require(abs(got - exact) <= Real("1e-40") * abs(exact), what + " at bound " + std::to_string(bound));
  };
  for (int w = 2; w <= 5; ++w)
    for (const auto& k : indices_of_weight(w))
      if (k.admissible() && k.depth() <= 3) check(zeta_expr(k), 30, "zeta " + k.str());
  for (auto [k, l] : {std::pair{Index({1}), Index({1})}, {Index({2}), Index({1})}, {Index({3}), Index({1})},
                      {Index({2}), Index({2})}, {Index({1, 1}), Index({1, 1})}, {Index({2, 1}), Index({1, 1})},
                      {Index({1, 2}), Index({1, 1})}}) {
    check(eta_pair_expr(k, l), 12, "pair " + k.str() + l.str());
    check(eta_pair_literal_expr(k, l, Eliminate::NSide), 12, "literal n-side " + k.str() + l.str());
    check(eta_pair_literal_expr(k, l, Eliminate::MSide), 12, "literal m-side " + k.str() + l.str());
  }
  for (int w = 1; w <= 4; ++w)
    for (const auto& k : indices_of_weight(w))
      for (int l = 1; l <= 2; ++l) check(chain_sum_expr(w, j_set(k).members, l), 20, "chain " + k.str());
  for (auto [k, l, r] : {std::tuple{1, 1, 1}, {2, 1, 1}, {3, 2, 1}, {2, 2, 2}, {3, 2, 2}})
    check(sumformula_rhs_expr(k, l, r), 16, "right-hand series");
  for (auto [k, l] : {std::pair{1, 1}, {2, 1}, {2, 2}})
    for (const auto& e : eta_1k1l_exprs(k, l)) check(e, 14, "decomposition part");
  return o;
}

Outcome negative_control() {
  Outcome o;
  // same settings as the passing checks, otherwise a loose tolerance could hide the shift
  EvalConfig cfg = base_config();
  VerifyOptions bad;
  bad.rhs_shift = Rational(1, 10);
  bad.floor = 1e-4;  // the loosest floor any passing check uses
  auto expect_fail = [&](const Report& r) {
    o.require(!r.pass, "perturbed " + r.identity + " [" + r.params + "] still passes");
  };
  for (const auto& ex : small_eta_expansions()) expect_fail(verify_eta_expansion(ex.k, ex.l, ex.rhs, cfg, bad));
  for (int r = 1; r <= 2; ++r) expect_fail(verify_eta_ones(r, cfg, bad));
  for (int k = 1; k <= 6; ++k)
    for (int l = 1; k + l <= 7; ++l) expect_fail(verify_sum_formula(k, l, 1, cfg, bad));
  expect_fail(verify_sum_formula(2, 2, 2, cfg, bad));
  expect_fail(verify_sum_formula(3, 2, 2, cfg, bad));
  expect_fail(verify_symmetry(Index({2}), Index({1}), cfg, bad));
  expect_fail(verify_symmetry(RealArgPair{{0.5}, {2.5}}, cfg, bad));
  for (auto [k, l] : {std::pair{1, 1}, {2, 1}})
    for (auto& r : verify_thm45(k, l, cfg, bad)) expect_fail(r);
  for (int w = 1; w <= 4; ++w)
    for (const auto& k : indices_of_weight(w))
      for (int l = 1; l <= 2; ++l)
        for (auto& r : verify_appendix(k, l, cfg, bad)) expect_fail(r);
  expect_fail(verify_stuffle(Index({2}), Index({3}), cfg, bad));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "small eta(k;l) equal their zeta expansions within 1e-5 at N=1e4", small_expansions},
      {2, "eta(1^r;1^r) = zeta(2^r) = pi^2r/(2r+1)! for r=1,2,3", ones_equal_twos},
      {3, "sum formula, three routes, r<=2 and k+l<=7", sum_formula_triples},
      {4, "eta(1,k;1,l) = S1-S2-S3+S4 and S1 = zeta(2) eta(k;l)", decomposition},
      {5, "eta_kt dual expansion and chain-sum identity, wt(k)<=4, l=1,2", dual_expansion},
      {6, "zeta closed forms; fast vs series through weight 7", zeta_quality},
      {7, "quadrature: zeta(2) and real-argument symmetry", quadrature},
      {8, "exact combinatorics through weight 7 and the stuffle witness", combinatorics},
      {9, "engine equals exact enumeration to 40 digits", oracle_equivalence},
      {10, "perturbed right-hand sides fail", negative_control},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes << "    exception: " << e.what() << '\n';
    }
    char line[64];
    std::snprintf(line, sizeof line, "(%.1f s)", seconds_since(t0));
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.what << "  " << line << std::endl;
    if (!o.pass) std::cout << o.notes.str() << std::flush;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
