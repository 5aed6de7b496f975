#include "engine.hpp"
#include "mzeta/chainsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mzeta {

PartialSum partial_sum(const SumExpr& e, long cutoff) {
  detail::Engine eng(e);
  return eng.run(cutoff);
}

namespace {

long choose_top(detail::Engine& eng, const EvalConfig& cfg) {
  const long probe_lo = 64, probe_hi = 128;
  if (cfg.work_budget == 0 || cfg.cutoff <= probe_hi) return cfg.cutoff;
  double c1 = static_cast<double>(std::max<std::int64_t>(1, eng.run(probe_lo).steps));
  double c2 = static_cast<double>(std::max<std::int64_t>(1, eng.run(probe_hi).steps));
  double alpha = std::clamp(std::log2(c2 / c1), 0.5, 6.0);
  double ratio = std::pow(2.0, -alpha / 2);
  double ladder = (1 - std::pow(ratio, cfg.extrapolation_points)) / (1 - ratio);
  auto projected = [&](double n) { return c2 * std::pow(n / probe_hi, alpha) * ladder; };
  const double budget = static_cast<double>(cfg.work_budget);
  if (projected(static_cast<double>(cfg.cutoff)) <= budget) return cfg.cutoff;
  double n = probe_hi * std::pow(budget / (c2 * ladder), 1 / alpha);
  return std::max(probe_hi, std::min(cfg.cutoff, static_cast<long>(n)));
}

}  // namespace

Approx truncated_eval(const SumExpr& e, const EvalConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(working_digits(cfg.precision_digits));
  detail::Engine eng(e);
  if (!cfg.extrapolate) {
    // last-shell estimate: the tail beyond N is about S(N) - S(N/2)
    Approx a;
    a.value = eng.run(cfg.cutoff).value;
    Real half = eng.run(cfg.cutoff / 2).value;
    a.error = boost::multiprecision::abs(a.value - half);
    a.cutoff = cfg.cutoff;
    a.extrapolated = false;
    return a;
  }
  const long top = choose_top(eng, cfg);
  std::vector<long> ladder;
  for (int i = cfg.extrapolation_points - 1; i >= 0; --i) {
    long n = std::lround(static_cast<double>(top) * std::pow(2.0, -i / 2.0));
    if (n < 8) continue;
    if (ladder.empty() || n > ladder.back()) ladder.push_back(n);
  }
  if (ladder.size() < 3) throw std::invalid_argument("cutoff too small for extrapolation");
  std::vector<Sample> samples;
  for (long n : ladder) samples.push_back({n, eng.run(n).value});
  Approx a = extrapolate(samples);
  a.cutoff = top;
  return a;
}

namespace {

// Solves A x = b in place by partial pivoting; returns x[0].
Real solve_first(std::vector<std::vector<Real>>& a, std::vector<Real>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0) throw std::runtime_error("singular extrapolation system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      Real f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x[0];
}

struct Model {
  int q, p;
  std::size_t params() const { return 1 + static_cast<std::size_t>(q * (p + 1)); }
};

// Exact fit of the model through samples[first, first+params).
Real fit(std::span<const Sample> s, std::size_t first, const Model& m) {
  const std::size_t n = m.params();
  const double ref = static_cast<double>(s[first + n - 1].cutoff);
  std::vector<std::vector<Real>> a(n, std::vector<Real>(n));
  std::vector<Real> b(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& smp = s[first + r];
    Real t = Real(ref) / smp.cutoff;
    Real ell = log(Real(smp.cutoff) / Real(ref));
    a[r][0] = 1;
    std::size_t c = 1;
    Real tp = 1;
    for (int i = 1; i <= m.q; ++i) {
      tp *= t;
      Real lp = tp;
      for (int j = 0; j <= m.p; ++j) {
        a[r][c++] = lp;
        lp *= ell;
      }
    }
    b[r] = smp.value;
  }
  return solve_first(a, b);
}

}  // namespace

Approx extrapolate(std::span<const Sample> samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw std::invalid_argument("extrapolation needs at least 3 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (samples[i].cutoff <= samples[i - 1].cutoff)
      throw std::invalid_argument("extrapolation samples must have increasing cutoffs");

  const Real& last = samples.back().value;
  const int digits = static_cast<int>(Real::default_precision());
  Real noise = pow(Real(10), -(digits - 5)) * (abs(last) + 1);

  Approx out;
  out.cutoff = samples.back().cutoff;
  out.extrapolated = true;

  bool constant = true;
  for (const auto& s : samples)
    if (abs(s.value - last) > noise) constant = false;
  if (constant) {
    out.value = last;
    out.error = 0;
    return out;
  }

  struct Scored {
    Real limit, delta;
    std::size_t params;
  };
  std::vector<Scored> scored;
  for (int q = 1; q <= 3; ++q)
    for (int p = 0; p <= 6; ++p) {
      Model m{q, p};
      const std::size_t k = m.params();
      if (k + 1 > n) continue;
      Real la = fit(samples, n - k, m);
      Real lb = fit(samples, n - k - 1, m);
      scored.push_back({la, abs(la - lb), k});
    }
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
    if (x.delta != y.delta) return x.delta < y.delta;
    return x.params < y.params;
  });
  const Scored& best = scored.front();
  Real err = 2 * best.delta;
  if (scored.size() > 1) err = max(err, Real(abs(best.limit - scored[1].limit)));
  out.value = best.limit;
  out.error = max(err, noise);
  return out;
}

}  // namespace mzeta
