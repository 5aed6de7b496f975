#include "mzeta/eta.hpp"

#include <stdexcept>
#include <string>

namespace mzeta {

namespace {

LinearForm var(VarId v) { return LinearForm::var(v); }

std::string nm(const char* base, int a, int b) {
  return std::string(base) + std::to_string(a) + "_" + std::to_string(b);
}

void require_pair(const Index& k, const Index& l) {
  if (k.depth() != l.depth()) throw std::invalid_argument("η(k;l) requires equal depths");
  if (k.empty()) throw std::invalid_argument("η(k;l) requires depth >= 1");
}

// Chain of `count` variables inside block `block`, listed from the bottom:
// the lowest is > floor (or >= 1 without floor), each next one is > the previous.
// Returns the top variable, or nullopt for an empty chain.
std::optional<VarId> rising_chain(SumExpr& e, const char* base, int block, int count,
                                  const std::optional<LinearForm>& floor) {
  std::optional<VarId> prev;
  for (int i = count; i >= 1; --i) {
    std::optional<Bound> lo;
    if (prev) lo = gt(var(*prev));
    else if (floor) lo = gt(*floor);
    VarId v = e.add_var(nm(base, block, i + 1), lo);
    e.add_factor(var(v));
    prev = v;
  }
  return prev;
}

// Chain listed from the top: first variable <= top (or uncapped), then each
// next one is < (strict) or <= the previous.
void falling_chain(SumExpr& e, const std::string& base, int count, const std::optional<LinearForm>& top,
                   bool strict) {
  std::optional<VarId> prev;
  for (int i = 0; i < count; ++i) {
    std::optional<Bound> hi;
    if (prev) hi = strict ? lt(var(*prev)) : le(var(*prev));
    else if (top) hi = le(*top);
    VarId v = e.add_var(base + std::to_string(count - i), std::nullopt, hi);
    e.add_factor(var(v));
    prev = v;
  }
}

}  // namespace

SumExpr eta_pair_expr(const Index& k, const Index& l) {
  require_pair(k, l);
  const int r = k.depth();
  SumExpr e;
  if (r == 1) {
    // d, then each side's chain from its top: X = d + P_2 > P_2 > ... > P_k > 0
    VarId d = e.add_var("d1");
    auto side = [&](const char* base, int parts) {
      LinearForm top = var(d);
      std::optional<VarId> prev;
      for (int i = 2; i <= parts; ++i) {
        std::optional<Bound> hi;
        if (prev) hi = lt(var(*prev));
        VarId v = e.add_var(nm(base, 1, i), std::nullopt, hi);
        e.add_factor(var(v));
        if (!prev) top = top + var(v);
        prev = v;
      }
      e.add_factor(top);
    };
    side("p", k[0]);
    side("q", l[0]);
    return e;
  }
  // r >= 2: innermost block first; within a block each chain from the bottom,
  // then the shared difference d_j.
  std::optional<LinearForm> x_next, y_next;  // X_{j+1}, Y_{j+1}
  for (int j = r; j >= 1; --j) {
    auto px = rising_chain(e, "p", j, k[static_cast<std::size_t>(j - 1)] - 1, x_next);
    auto qy = rising_chain(e, "q", j, l[static_cast<std::size_t>(j - 1)] - 1, y_next);
    VarId d = e.add_var("d" + std::to_string(j));
    LinearForm x = var(d) + (px ? var(*px) : (x_next ? *x_next : LinearForm()));
    LinearForm y = var(d) + (qy ? var(*qy) : (y_next ? *y_next : LinearForm()));
    e.add_factor(x);
    e.add_factor(y);
    x_next = x;
    y_next = y;
  }
  return e;
}

SumExpr eta_pair_literal_expr(const Index& k, const Index& l, Eliminate side) {
  require_pair(k, l);
  // first position of every block on both sides (0-based)
  std::vector<int> head_k, head_l;
  int acc = 0;
  for (int part : k.parts()) {
    head_k.push_back(acc);
    acc += part;
  }
  acc = 0;
  for (int part : l.parts()) {
    head_l.push_back(acc);
    acc += part;
  }
  const Index& kept = side == Eliminate::NSide ? k : l;
  const Index& gone = side == Eliminate::NSide ? l : k;
  const auto& kept_heads = side == Eliminate::NSide ? head_k : head_l;
  const auto& gone_heads = side == Eliminate::NSide ? head_l : head_k;
  const char* kept_name = side == Eliminate::NSide ? "m" : "n";
  const char* gone_name = side == Eliminate::NSide ? "n" : "m";

  SumExpr e;
  std::vector<VarId> a, b;
  for (int i = 0; i < kept.weight(); ++i) a.push_back(e.add_var(kept_name + std::to_string(i + 1)));
  for (int i = 0; i < gone.weight(); ++i) {
    std::optional<Bound> hi;
    for (std::size_t j = 0; j < gone_heads.size(); ++j)
      if (gone_heads[j] == i) hi = eq(var(a[static_cast<std::size_t>(kept_heads[j])]));
    b.push_back(e.add_var(gone_name + std::to_string(i + 1), std::nullopt, hi));
  }
  auto suffix_factors = [&](const std::vector<VarId>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      LinearForm f;
      for (std::size_t t = i; t < vs.size(); ++t) f.add(vs[t]);
      e.add_factor(f);
    }
  };
  suffix_factors(a);
  suffix_factors(b);
  return e;
}

SumExpr chain_sum_expr(int weight, const std::set<int>& strict, int l) {
  if (weight < 1) throw std::invalid_argument("chain sum needs weight >= 1");
  if (l < 1) throw std::invalid_argument("chain sum needs l >= 1");
  SumExpr e;
  VarId top = e.add_var("c");
  e.add_factor(var(top), 2);  // a_w and b_l coincide
  VarId prev = top;
  for (int i = weight - 1; i >= 1; --i) {
    Bound hi = strict.count(i) ? lt(var(prev)) : eq(var(prev));
    VarId v = e.add_var("a" + std::to_string(i), std::nullopt, hi);
    e.add_factor(var(v));
    prev = v;
  }
  falling_chain(e, "b", l - 1, var(top), false);
  return e;
}

SumExpr sumformula_rhs_expr(int k, int l, int r) {
  if (r < 1 || k < r || l < r) throw std::invalid_argument("I(k,r) empty");
  SumExpr e;
  VarId m1 = e.add_var("m1");
  e.add_factor(var(m1), 2);
  VarId prev = m1;
  for (int i = 2; i <= r; ++i) {
    VarId v = e.add_var("m" + std::to_string(i), std::nullopt, lt(var(prev)));
    e.add_factor(var(v), 2);
    prev = v;
  }
  falling_chain(e, "a", k - r, var(m1), false);
  falling_chain(e, "b", l - r, var(m1), false);
  return e;
}

std::array<SumExpr, 4> eta_1k1l_exprs(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("k and l must be positive");
  std::array<SumExpr, 4> out;
  for (int which = 0; which < 4; ++which) {
    SumExpr& e = out[static_cast<std::size_t>(which)];
    VarId n1 = e.add_var("n1");
    VarId n0 = e.add_var("n0");
    LinearForm sum = var(n0) + var(n1);
    e.add_factor(var(n0), 2);
    switch (which) {
      case 0: e.add_factor(var(n1), 2); break;
      case 1:
      case 2:
        e.add_factor(var(n1));
        e.add_factor(sum);
        break;
      case 3: e.add_factor(sum, 2); break;
    }
    bool p_wide = which == 1 || which == 3;
    bool q_wide = which == 2 || which == 3;
    falling_chain(e, "p", k - 1, p_wide ? sum : var(n1), false);
    falling_chain(e, "q", l - 1, q_wide ? sum : var(n1), false);
  }
  return out;
}

Approx combine(std::span<const std::pair<Real, Approx>> terms) {
  Approx out;
  out.value = 0;
  out.error = 0;
  out.extrapolated = false;
  for (auto& [c, a] : terms) {
    out.value += c * a.value;
    out.error += abs(c) * a.error;
    out.cutoff = std::max(out.cutoff, a.cutoff);
    out.extrapolated = out.extrapolated || a.extrapolated;
  }
  return out;
}

Approx eta_pair(const Index& k, const Index& l, const EvalConfig& cfg) {
  return truncated_eval(eta_pair_expr(k, l), cfg);
}

Approx chain_sum_value(int weight, const std::set<int>& strict, int l, const EvalConfig& cfg) {
  return truncated_eval(chain_sum_expr(weight, strict, l), cfg);
}

Approx xi_value(const Index& k, int l, const EvalConfig& cfg) {
  if (k.empty()) throw std::invalid_argument("ξ(k;l) requires depth >= 1");
  if (l < 1) throw std::invalid_argument("ξ(k;l) requires l >= 1");
  return chain_sum_value(k.weight(), j_set(k).members, l, cfg);
}

Approx eta_kt(const Index& k, int l, const EvalConfig& cfg) {
  if (l < 1) throw std::invalid_argument("η(k;l) requires l >= 1");
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Real sign = (k.depth() - 1) % 2 ? -1 : 1;
  std::vector<std::pair<Real, Approx>> terms;
  for (const auto& kp : refinements(k)) terms.emplace_back(sign, xi_value(kp, l, cfg));
  return combine(terms);
}

Approx sumformula_lhs(int k, int l, int r, const EvalConfig& cfg) {
  if (r < 1 || k < r || l < r) throw std::invalid_argument("I(k,r) empty");
  PrecisionScope scope(working_digits(cfg.precision_digits));
  std::vector<std::pair<Real, Approx>> terms;
  for (const auto& a : indices_of(k, r))
    for (const auto& b : indices_of(l, r)) terms.emplace_back(Real(1), eta_pair(a, b, cfg));
  return combine(terms);
}

Approx sumformula_rhs_series(int k, int l, int r, const EvalConfig& cfg) {
  return truncated_eval(sumformula_rhs_expr(k, l, r), cfg);
}

Approx Eta1k1lParts::combined() const {
  std::vector<std::pair<Real, Approx>> t{{Real(1), s1}, {Real(-1), s2}, {Real(-1), s3}, {Real(1), s4}};
  return combine(t);
}

Eta1k1lParts eta_1k1l_parts(int k, int l, const EvalConfig& cfg) {
  auto ex = eta_1k1l_exprs(k, l);
  return {truncated_eval(ex[0], cfg), truncated_eval(ex[1], cfg), truncated_eval(ex[2], cfg),
          truncated_eval(ex[3], cfg)};
}

IndexCombination sumformula_rhs_formal(int k, int l, int r) {
  if (r < 1 || k < r || l < r) throw std::invalid_argument("I(k,r) empty");
  std::vector<IndexCombination> ops{IndexCombination(repeated(2, r)), star(repeated(1, k - r, true)),
                                    star(repeated(1, l - r, true))};
  return circledast(ops);
}

IndexCombination zeta_star_circ(const Index& k, int l) {
  if (k.empty()) throw std::invalid_argument("nonempty index required");
  if (l < 1) throw std::invalid_argument("l must be positive");
  return circledast(star(k), star(repeated(1, l)));
}

IndexCombination appendix_rhs_formal(const Index& k, int l) {
  if (k.empty()) throw std::invalid_argument("nonempty index required");
  if (l < 1) throw std::invalid_argument("l must be positive");
  Index dual = hoffman_dual(k);
  IndexCombination ones = star(repeated(1, l));
  IndexCombination out;
  for (const auto& kp : refinements(dual)) {
    int sign = (dual.depth() + kp.depth()) % 2 ? -1 : 1;
    out += Rational(sign) * circledast(star(kp), ones);
  }
  return out;
}

}  // namespace mzeta
