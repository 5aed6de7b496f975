#include "mzeta/eta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzeta {

namespace {

// Tanh-sinh nodes on (0,1): x, 1-x (both without cancellation), weight.
struct Node1 {
  double x, xc, w;
  double u;  // -log(1-x)
};

std::vector<Node1> nodes_for(int level, double t_max) {
  const double h = std::ldexp(1.0, -level);
  std::vector<Node1> out;
  const long kmax = static_cast<long>(t_max / h);
  for (long k = -kmax; k <= kmax; ++k) {
    double t = static_cast<double>(k) * h;
    double z = std::numbers::pi * std::sinh(t);
    double x = 1 / (1 + std::exp(-z));
    double xc = 1 / (1 + std::exp(z));
    double w = h * std::numbers::pi * std::cosh(t) * x * xc;
    if (w == 0 || x == 0 || xc == 0) continue;
    out.push_back({x, xc, w, std::log1p(std::exp(z))});
  }
  return out;
}

double power(double base, double expo) { return expo == 0 ? 1.0 : std::pow(base, expo); }

double integrate_r1(const std::vector<Node1>& nd, double a, double b) {
  // integrand u^(a-1) t^(b-1) / (A + B - AB), A = 1-x, B = 1-y
  std::vector<double> fu(nd.size()), fb(nd.size());
  for (std::size_t i = 0; i < nd.size(); ++i) {
    fu[i] = nd[i].w * power(nd[i].u, a - 1);
    fb[i] = nd[i].w * power(nd[i].u, b - 1);
  }
  double s = 0;
  for (std::size_t i = 0; i < nd.size(); ++i) {
    double row = 0;
    const double A = nd[i].xc;
    for (std::size_t j = 0; j < nd.size(); ++j) {
      const double B = nd[j].xc;
      row += fb[j] / (A + B - A * B);
    }
    s += fu[i] * row;
  }
  return s;
}

double integrate_r2(const std::vector<Node1>& nd, const std::vector<double>& sp, const std::vector<double>& s) {
  // x1,x2 on the u side, y1,y2 on the t side:
  //   u1^(s'1-1) u2^(s'2-1) t1^(s1-1) t2^(s2-1) (1-x2)(1-y2)
  //   / ((A1+B1-A1B1)(A2+B2-A2B2)),  A2 = 1-x2, A1 = (1-x1)(1-x2)
  const std::size_t n = nd.size();
  std::vector<double> f1(n), f2(n), g1(n), g2(n);
  double wmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    f1[i] = nd[i].w * power(nd[i].u, sp[0] - 1);
    f2[i] = nd[i].w * power(nd[i].u, sp[1] - 1) * nd[i].xc;
    g1[i] = nd[i].w * power(nd[i].u, s[0] - 1);
    g2[i] = nd[i].w * power(nd[i].u, s[1] - 1) * nd[i].xc;
    wmax = std::max({wmax, std::abs(f1[i]), std::abs(f2[i]), std::abs(g1[i]), std::abs(g2[i])});
  }
  const double skip = 1e-19 * wmax * wmax;
  double total = 0;
  for (std::size_t i2 = 0; i2 < n; ++i2) {
    const double A2 = nd[i2].xc;
    for (std::size_t j2 = 0; j2 < n; ++j2) {
      const double B2 = nd[j2].xc;
      const double outer = f2[i2] * g2[j2] / (A2 + B2 - A2 * B2);
      if (std::abs(outer) < skip) continue;
      double inner = 0;
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        const double A1 = nd[i1].xc * A2;
        double row = 0;
        for (std::size_t j1 = 0; j1 < n; ++j1) {
          const double B1 = nd[j1].xc * B2;
          row += g1[j1] / (A1 + B1 - A1 * B1);
        }
        inner += f1[i1] * row;
      }
      total += outer * inner;
    }
  }
  return total;
}

}  // namespace

Approx eta_quadrature(const RealArgPair& args, const EvalConfig& cfg) {
  const std::size_t r = args.s.size();
  if (args.s_prime.size() != r || r == 0) throw std::invalid_argument("argument tuples must have equal positive length");
  if (r > 2) throw std::invalid_argument("quadrature restricted to r ≤ 2");
  for (double v : args.s) if (!(v > 0)) throw std::invalid_argument("arguments must be positive");
  for (double v : args.s_prime) if (!(v > 0)) throw std::invalid_argument("arguments must be positive");

  double pref = 1;
  for (std::size_t j = 0; j < r; ++j) pref /= std::tgamma(args.s[j]) * std::tgamma(args.s_prime[j]);

  const double target = std::max(cfg.target_epsilon, 1e-13);
  const int first = r == 1 ? 3 : 2;
  const int last = r == 1 ? 8 : 4;
  const double t_max = 4.5;
  double prev = 0, cur = 0, diff = 0;
  int level = first;
  for (; level <= last; ++level) {
    auto nd = nodes_for(level, t_max);
    cur = pref * (r == 1 ? integrate_r1(nd, args.s_prime[0], args.s[0]) : integrate_r2(nd, args.s_prime, args.s));
    if (level > first) {
      diff = std::abs(cur - prev);
      if (diff < target) break;
    }
    prev = cur;
  }
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Approx a;
  a.value = cur;
  a.error = std::max(diff, 4e-16 * std::abs(cur));
  a.cutoff = std::min(level, last);
  a.extrapolated = false;
  return a;
}

}  // namespace mzeta
