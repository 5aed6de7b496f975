#include "mzeta/identities.hpp"

#include "mzeta/parallel.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace mzeta {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Route route(std::string name, const Approx& a) { return {std::move(name), a.value, a.error}; }

IndexCombination shift_leading(IndexCombination c, const Rational& shift) {
  if (shift == 0 || c.empty()) return c;
  c.add_term(c.terms().begin()->first, shift);
  return c;
}

Approx scaled(const Approx& a, const Real& c) {
  Approx out = a;
  out.value = a.value * c;
  out.error = a.error * abs(c);
  return out;
}

Real factor_for(const Rational& shift) { return 1 + rational_to_real(shift); }

std::string pair_str(const Index& k, const Index& l) {
  std::string a = k.str(), b = l.str();
  // "(2,1)" + "(1,1)" -> "(2,1;1,1)"
  return a.substr(0, a.size() - 1) + ";" + b.substr(1);
}

std::string reals_str(const std::vector<double>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

Report start(std::string identity, std::string params) {
  Report r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  return r;
}

Report done(Report rep, const VerifyOptions& opts, Clock::time_point t0) {
  finalize(rep, opts);
  rep.ms = ms_since(t0);
  return rep;
}

}  // namespace

void finalize(Report& rep, const VerifyOptions& opts) {
  rep.discrepancy = 0;
  for (std::size_t i = 0; i < rep.routes.size(); ++i)
    for (std::size_t j = i + 1; j < rep.routes.size(); ++j)
      rep.discrepancy = max(rep.discrepancy, Real(abs(rep.routes[i].value - rep.routes[j].value)));
  std::vector<Real> errs;
  for (auto& r : rep.routes) errs.push_back(r.error);
  std::sort(errs.begin(), errs.end(), std::greater<>());
  Real two = 0;
  for (std::size_t i = 0; i < errs.size() && i < 2; ++i) two += errs[i];
  rep.tolerance = max(Real(opts.floor), Real(opts.safety * two));
  rep.pass = rep.routes.size() >= 2 && rep.discrepancy <= rep.tolerance;
}

Report verify_sum_formula(int k, int l, int r, const EvalConfig& cfg, const VerifyOptions& opts) {
  auto t0 = Clock::now();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Report rep = start("sum-formula", "k=" + std::to_string(k) + ",l=" + std::to_string(l) + ",r=" + std::to_string(r));
  rep.routes.push_back(route("eta-sum", sumformula_lhs(k, l, r, cfg)));
  rep.routes.push_back(
      route("zeta-formal", zeta_combination(shift_leading(sumformula_rhs_formal(k, l, r), opts.rhs_shift), cfg, opts.cache)));
  rep.routes.push_back(route("rhs-series", sumformula_rhs_series(k, l, r, cfg)));
  return done(std::move(rep), opts, t0);
}

Report verify_symmetry(const Index& k, const Index& l, const EvalConfig& cfg, const VerifyOptions& opts) {
  auto t0 = Clock::now();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Report rep = start("symmetry", pair_str(k, l));
  rep.routes.push_back(route("eta" + pair_str(k, l), eta_pair(k, l, cfg)));
  rep.routes.push_back(route("eta" + pair_str(l, k), scaled(eta_pair(l, k, cfg), factor_for(opts.rhs_shift))));
  return done(std::move(rep), opts, t0);
}

Report verify_symmetry(const RealArgPair& args, const EvalConfig& cfg, const VerifyOptions& opts) {
  auto t0 = Clock::now();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  const std::string p = reals_str(args.s_prime) + ";" + reals_str(args.s);
  Report rep = start("symmetry-real", p);
  rep.routes.push_back(route("quadrature" + p, eta_quadrature(args, cfg)));
  RealArgPair swapped{args.s, args.s_prime};
  rep.routes.push_back(route("quadrature" + reals_str(args.s) + ";" + reals_str(args.s_prime),
                             scaled(eta_quadrature(swapped, cfg), factor_for(opts.rhs_shift))));
  return done(std::move(rep), opts, t0);
}

std::vector<Report> verify_thm45(int k, int l, const EvalConfig& cfg, const VerifyOptions& opts) {
  if (k < 1 || l < 1) throw std::invalid_argument("k and l must be positive");
  PrecisionScope scope(working_digits(cfg.precision_digits));
  const std::string p = "k=" + std::to_string(k) + ",l=" + std::to_string(l);
  const Real bump = factor_for(opts.rhs_shift);

  auto t0 = Clock::now();
  Eta1k1lParts parts = eta_1k1l_parts(k, l, cfg);
  Index kk({1, k}), ll({1, l});
  Report a = start("eta-1k1l-decomposition", p);
  a.routes.push_back(route("eta" + pair_str(kk, ll), eta_pair(kk, ll, cfg)));
  Eta1k1lParts shifted = parts;
  shifted.s1 = scaled(parts.s1, bump);
  a.routes.push_back(route("S1-S2-S3+S4", shifted.combined()));
  a = done(std::move(a), opts, t0);

  auto t1 = Clock::now();
  Report b = start("eta-1k1l-first-part", p);
  b.routes.push_back(route("S1", parts.s1));
  Approx z2 = zeta_value(Index({2}), cfg, opts.cache);
  Approx e = eta_pair(Index({k}), Index({l}), cfg);
  Approx prod;
  prod.value = z2.value * e.value * bump;
  prod.error = (abs(z2.value) * e.error + abs(e.value) * z2.error + z2.error * e.error) * abs(bump);
  b.routes.push_back(route("zeta(2)*eta(" + std::to_string(k) + ";" + std::to_string(l) + ")", prod));
  b = done(std::move(b), opts, t1);
  return {a, b};
}

std::vector<Report> verify_appendix(const Index& k, int l, const EvalConfig& cfg, const VerifyOptions& opts) {
  if (k.empty()) throw std::invalid_argument("nonempty index required");
  if (l < 1) throw std::invalid_argument("l must be positive");
  PrecisionScope scope(working_digits(cfg.precision_digits));
  std::string kstr = k.str();
  const std::string p = "k=" + kstr + ",l=" + std::to_string(l);

  auto t0 = Clock::now();
  Report a = start("eta-kt-dual-expansion", p);
  a.routes.push_back(route("eta_kt", eta_kt(k, l, cfg)));
  a.routes.push_back(
      route("zeta-dual-expansion", zeta_combination(shift_leading(appendix_rhs_formal(k, l), opts.rhs_shift), cfg, opts.cache)));
  a = done(std::move(a), opts, t0);

  auto t1 = Clock::now();
  Report b = start("star-circ-chain-sums", p);
  b.routes.push_back(route("zeta-star-circ", zeta_combination(zeta_star_circ(k, l), cfg, opts.cache)));
  // subsets of J(k) are the J-sets of the coarsenings of k, i.e. the terms of k*
  std::vector<std::pair<Real, Approx>> terms;
  bool first = true;
  const IndexCombination coarsenings = star(k);
  for (const auto& [coarse, coeff] : coarsenings.terms()) {
    Real c = first ? factor_for(opts.rhs_shift) : Real(1);
    first = false;
    terms.emplace_back(c, chain_sum_value(k.weight(), j_set(Index::from(coarse)).members, l, cfg));
  }
  b.routes.push_back(route("chain-sums", combine(terms)));
  b = done(std::move(b), opts, t1);
  return {a, b};
}

Report verify_stuffle(const Index& a, const Index& b, const EvalConfig& cfg, const VerifyOptions& opts) {
  auto t0 = Clock::now();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Report rep = start("stuffle (external oracle)", a.str() + "*" + b.str());
  Approx za = zeta_value(a, cfg, opts.cache), zb = zeta_value(b, cfg, opts.cache);
  Approx prod;
  prod.value = za.value * zb.value;
  prod.error = abs(za.value) * zb.error + abs(zb.value) * za.error + za.error * zb.error;
  rep.routes.push_back(route("product", prod));
  rep.routes.push_back(route("zeta-stuffle",
                             zeta_combination(shift_leading(harmonic_product(a, b), opts.rhs_shift), cfg, opts.cache)));
  return done(std::move(rep), opts, t0);
}

Report verify_eta_expansion(const Index& k, const Index& l, const IndexCombination& rhs, const EvalConfig& cfg,
                            const VerifyOptions& opts) {
  auto t0 = Clock::now();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Report rep = start("eta-expansion", pair_str(k, l));
  rep.routes.push_back(route("eta" + pair_str(k, l), eta_pair(k, l, cfg)));
  rep.routes.push_back(route(rhs.str(), zeta_combination(shift_leading(rhs, opts.rhs_shift), cfg, opts.cache)));
  return done(std::move(rep), opts, t0);
}

Report verify_eta_ones(int r, const EvalConfig& cfg, const VerifyOptions& opts) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  auto t0 = Clock::now();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Index ones(std::vector<int>(static_cast<std::size_t>(r), 1));
  Index twos(std::vector<int>(static_cast<std::size_t>(r), 2));
  Report rep = start("eta-ones", "r=" + std::to_string(r));
  rep.routes.push_back(route("eta" + pair_str(ones, ones), eta_pair(ones, ones, cfg)));
  Approx z = zeta_value(twos, cfg, opts.cache);
  rep.routes.push_back(route("zeta" + twos.str(), z));
  Approx closed;
  closed.value = pow(pi_value(), 2 * r) / boost::math::factorial<Real>(static_cast<unsigned>(2 * r + 1));
  closed.value *= factor_for(opts.rhs_shift);
  closed.error = 0;
  rep.routes.push_back(route("pi^" + std::to_string(2 * r) + "/" + std::to_string(2 * r + 1) + "!", closed));
  return done(std::move(rep), opts, t0);
}

std::vector<EtaExpansion> small_eta_expansions() {
  auto comb = [](std::initializer_list<std::pair<std::vector<int>, int>> terms) {
    IndexCombination c;
    for (auto& [parts, coeff] : terms) c.add_term(PaddedIndex(parts), Rational(coeff));
    return c;
  };
  return {
      {Index({1}), Index({1}), comb({{{2}, 1}})},
      {Index({2}), Index({1}), comb({{{1, 2}, 1}, {{3}, 1}})},
      {Index({3}), Index({1}), comb({{{1, 1, 2}, 1}, {{2, 2}, 1}, {{1, 3}, 1}, {{4}, 1}})},
      {Index({2}), Index({2}), comb({{{1, 1, 2}, 2}, {{2, 2}, 1}, {{1, 3}, 2}, {{4}, 1}})},
  };
}

namespace {

using Task = std::function<std::vector<Report>()>;

std::vector<Task> quick_tasks(const EvalConfig& cfg, const VerifyOptions& opts) {
  std::vector<Task> t;
  for (const auto& ex : small_eta_expansions())
    t.push_back([=] { return std::vector<Report>{verify_eta_expansion(ex.k, ex.l, ex.rhs, cfg, opts)}; });
  for (int r = 1; r <= 2; ++r) t.push_back([=] { return std::vector<Report>{verify_eta_ones(r, cfg, opts)}; });
  for (auto [k, l, r] : {std::tuple{1, 1, 1}, {2, 1, 1}, {2, 2, 2}, {3, 2, 1}})
    t.push_back([=] { return std::vector<Report>{verify_sum_formula(k, l, r, cfg, opts)}; });
  t.push_back([=] { return std::vector<Report>{verify_symmetry(Index({2}), Index({1}), cfg, opts)}; });
  return t;
}

std::vector<Task> thm45_tasks(const EvalConfig& cfg, const VerifyOptions& opts) {
  std::vector<Task> t;
  for (auto [k, l] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) t.push_back([=] { return verify_thm45(k, l, cfg, opts); });
  return t;
}

std::vector<Task> appendix_tasks(const EvalConfig& cfg, const VerifyOptions& opts) {
  std::vector<Task> t;
  for (int w = 1; w <= 4; ++w)
    for (const auto& k : indices_of_weight(w))
      for (int l = 1; l <= 2; ++l) t.push_back([=] { return verify_appendix(k, l, cfg, opts); });
  return t;
}

std::vector<Task> full_tasks(const EvalConfig& cfg, const VerifyOptions& opts) {
  std::vector<Task> t;
  for (const auto& ex : small_eta_expansions())
    t.push_back([=] { return std::vector<Report>{verify_eta_expansion(ex.k, ex.l, ex.rhs, cfg, opts)}; });
  for (int r = 1; r <= 3; ++r) t.push_back([=] { return std::vector<Report>{verify_eta_ones(r, cfg, opts)}; });
  for (int r = 1; r <= 2; ++r)
    for (int k = r; k <= 7; ++k)
      for (int l = r; k + l <= 7; ++l)
        t.push_back([=] { return std::vector<Report>{verify_sum_formula(k, l, r, cfg, opts)}; });
  for (auto& x : thm45_tasks(cfg, opts)) t.push_back(x);
  for (auto& x : appendix_tasks(cfg, opts)) t.push_back(x);
  for (auto [a, b] : {std::pair{Index({2}), Index({1})}, {Index({1, 2}), Index({1, 1})}})
    t.push_back([=] { return std::vector<Report>{verify_symmetry(a, b, cfg, opts)}; });
  for (double a : {0.5, 1.5, 2.5})
    for (double b : {0.5, 1.5, 2.5})
      if (a < b) t.push_back([=] { return std::vector<Report>{verify_symmetry(RealArgPair{{a}, {b}}, cfg, opts)}; });
  for (auto [a, b] : {std::pair{Index({2}), Index({3})}, {Index({2}), Index({2})}, {Index({1, 2}), Index({2})}})
    t.push_back([=] { return std::vector<Report>{verify_stuffle(a, b, cfg, opts)}; });
  return t;
}

}  // namespace

bool is_suite_name(const std::string& name) {
  return name == "quick" || name == "full" || name == "appendix" || name == "thm45";
}

std::vector<Report> run_suite(const std::string& name, const EvalConfig& cfg, const VerifyOptions& opts, int jobs) {
  std::vector<Task> tasks;
  if (name == "quick") tasks = quick_tasks(cfg, opts);
  else if (name == "full") tasks = full_tasks(cfg, opts);
  else if (name == "appendix") tasks = appendix_tasks(cfg, opts);
  else if (name == "thm45") tasks = thm45_tasks(cfg, opts);
  else throw std::invalid_argument("unknown suite '" + name + "' (quick, full, appendix, thm45)");

  // one shared precision for all workers; scopes inside then never write it
  PrecisionScope scope(working_digits(cfg.precision_digits));
  std::vector<std::vector<Report>> out(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) { out[i] = tasks[i](); });
  std::vector<Report> flat;
  for (auto& v : out)
    for (auto& r : v) flat.push_back(std::move(r));
  return flat;
}

namespace {

nlohmann::json to_json(const Report& rep) {
  nlohmann::json j;
  j["identity"] = rep.identity;
  j["params"] = rep.params;
  j["routes"] = nlohmann::json::array();
  for (auto& r : rep.routes)
    j["routes"].push_back({{"name", r.name}, {"value", to_exact_string(r.value)}, {"error", to_exact_string(r.error)}});
  j["discrepancy"] = to_exact_string(rep.discrepancy);
  j["tolerance"] = to_exact_string(rep.tolerance);
  j["verdict"] = rep.pass ? "pass" : "fail";
  j["ms"] = rep.ms;
  return j;
}

}  // namespace

std::string report_to_json(const Report& rep) { return to_json(rep).dump(); }

std::string reports_to_json(const std::vector<Report>& reps) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& r : reps) arr.push_back(to_json(r));
  return arr.dump(2);
}

std::string report_to_text(const Report& rep, unsigned digits) {
  std::ostringstream os;
  os << (rep.pass ? "PASS " : "FAIL ") << rep.identity << " [" << rep.params << "]  discrepancy "
     << format_error(rep.discrepancy) << " / tolerance " << format_error(rep.tolerance) << "  (" << static_cast<long>(rep.ms)
     << " ms)\n";
  for (auto& r : rep.routes) os << "    " << r.name << " = " << format_with_error(r.value, r.error, digits) << '\n';
  return os.str();
}

}  // namespace mzeta
