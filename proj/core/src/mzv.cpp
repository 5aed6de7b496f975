#include "mzeta/mzv.hpp"

#include <cmath>
#include <stdexcept>

namespace mzeta {

namespace {

void require_admissible(const Index& k) {
  if (!k.admissible()) throw std::domain_error("divergent multiple zeta value at " + k.str());
}

Approx exact_one() {
  Approx a;
  a.value = 1;
  a.error = 0;
  a.cutoff = 0;
  a.extrapolated = false;
  return a;
}

}  // namespace

SumExpr zeta_expr(const Index& k) {
  SumExpr e;
  VarId prev = -1;
  for (int j = 0; j < k.depth(); ++j) {
    std::optional<Bound> lo;
    if (prev >= 0) lo = gt(LinearForm::var(prev));
    VarId v = e.add_var("n" + std::to_string(j + 1), lo);
    e.add_factor(LinearForm::var(v), k[static_cast<std::size_t>(j)]);
    prev = v;
  }
  return e;
}

Approx zeta_series(const Index& k, const EvalConfig& cfg) {
  require_admissible(k);
  if (k.empty()) return exact_one();
  return truncated_eval(zeta_expr(k), cfg);
}

namespace {

// Letters of the iterated-integral word: true for dt/(1-t), false for dt/t.
std::vector<bool> word_of(const Index& k) {
  std::vector<bool> w;
  for (int part : k.parts()) {
    w.push_back(true);
    for (int i = 1; i < part; ++i) w.push_back(false);
  }
  return w;
}

// Word starting with dt/(1-t) back to block exponents.
std::vector<int> blocks_of(const std::vector<bool>& w) {
  std::vector<int> c;
  for (bool letter : w) {
    if (letter) c.push_back(1);
    else ++c.back();
  }
  return c;
}

struct Piece {
  Real value;
  Real tail;
};

// sum_{0<n_1<...<n_m<=T} 2^-n_m / prod n_j^c_j, with a bound on the omitted tail.
Piece polylog_half(const std::vector<int>& c, long terms, const std::vector<Real>& inv,
                   const std::vector<Real>& half_pow) {
  if (c.empty()) return {Real(1), Real(0)};
  const std::size_t m = c.size();
  std::vector<Real> level(static_cast<std::size_t>(terms) + 1, Real(0));
  for (long n = 1; n <= terms; ++n) level[static_cast<std::size_t>(n)] = pow(inv[static_cast<std::size_t>(n)], c[0]);
  for (std::size_t j = 1; j < m; ++j) {
    Real run(0);
    std::vector<Real> next(level.size(), Real(0));
    for (long n = 1; n <= terms; ++n) {
      next[static_cast<std::size_t>(n)] = run * pow(inv[static_cast<std::size_t>(n)], c[j]);
      run += level[static_cast<std::size_t>(n)];
    }
    level = std::move(next);
  }
  Real s(0);
  for (long n = 1; n <= terms; ++n) s += level[static_cast<std::size_t>(n)] * half_pow[static_cast<std::size_t>(n)];
  double t = static_cast<double>(terms);
  double bound = 2.5 * std::pow(2.0, -t) * std::pow(1 + std::log(t + 1), static_cast<double>(m - 1));
  return {s, Real(bound)};
}

}  // namespace

Approx zeta_fast(const Index& k, const EvalConfig& cfg) {
  require_admissible(k);
  if (k.empty()) throw std::invalid_argument("zeta_fast needs a nonempty index");
  cfg.validate();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  const std::vector<bool> w = word_of(k);
  const int weight = static_cast<int>(w.size());

  // smallest T whose tail bound, times the weight, is far below the target
  const double goal = std::pow(10.0, -static_cast<double>(cfg.precision_digits) - 5);
  long terms = 8 * weight;
  while (2.5 * std::pow(2.0, -static_cast<double>(terms)) * std::pow(1 + std::log(terms + 1.0), weight) * (weight + 1) >
         goal)
    terms += 8;

  std::vector<Real> inv(static_cast<std::size_t>(terms) + 1), half_pow(static_cast<std::size_t>(terms) + 1);
  inv[0] = 0;
  half_pow[0] = 1;
  for (long n = 1; n <= terms; ++n) {
    inv[static_cast<std::size_t>(n)] = Real(1) / n;
    half_pow[static_cast<std::size_t>(n)] = half_pow[static_cast<std::size_t>(n - 1)] / 2;
  }

  Real total(0), err(0);
  for (int i = 0; i <= weight; ++i) {
    std::vector<bool> head(w.begin(), w.begin() + i);
    std::vector<bool> tail(w.rbegin(), w.rend() - i);  // reversed suffix
    for (std::size_t j = 0; j < tail.size(); ++j) tail[j] = !tail[j];
    Piece a = polylog_half(blocks_of(head), terms, inv, half_pow);
    Piece b = polylog_half(blocks_of(tail), terms, inv, half_pow);
    total += a.value * b.value;
    err += abs(a.value) * b.tail + abs(b.value) * a.tail + a.tail * b.tail;
  }
  Approx out;
  out.value = total;
  Real floor_err = pow(Real(10), -static_cast<int>(cfg.precision_digits)) * (weight + 1);
  out.error = max(err, floor_err);
  out.cutoff = terms;
  out.extrapolated = false;
  return out;
}

Approx zeta_value(const Index& k, const EvalConfig& cfg, MzvCache* cache) {
  require_admissible(k);
  if (k.empty()) return exact_one();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  const std::string method = "fast";
  if (cache) {
    if (auto rec = cache->lookup(k, method, cfg.precision_digits, cfg.target_epsilon)) {
      Approx a;
      a.value = parse_real(rec->value);
      a.error = parse_real(rec->error);
      a.extrapolated = false;
      return a;
    }
  }
  Approx a = zeta_fast(k, cfg);
  if (a.error > cfg.target_epsilon) {
    Approx s = zeta_series(k, cfg);
    if (s.error < a.error) a = s;
  }
  if (cache) cache->store({k, to_exact_string(a.value), to_exact_string(a.error), method, cfg.precision_digits});
  // round-trip through the stored text so cached and fresh results coincide
  a.value = parse_real(to_exact_string(a.value));
  a.error = parse_real(to_exact_string(a.error));
  a.cutoff = 0;
  return a;
}

Approx zeta_combination(const IndexCombination& c, const EvalConfig& cfg, MzvCache* cache) {
  PrecisionScope scope(working_digits(cfg.precision_digits));
  for (auto& [k, coeff] : c.terms()) {
    if (!k.is_index()) throw std::domain_error("combination term " + k.str() + " is not an index");
    require_admissible(Index::from(k));
  }
  Approx out;
  out.value = 0;
  out.error = 0;
  for (auto& [k, coeff] : c.terms()) {
    Approx z = zeta_value(Index::from(k), cfg, cache);
    Real q = rational_to_real(coeff);
    out.value += q * z.value;
    out.error += abs(q) * z.error;
  }
  out.extrapolated = false;
  return out;
}

}  // namespace mzeta
