#include "engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mzeta::detail {

namespace {

CForm compile(const LinearForm& f) {
  CForm c;
  for (auto [v, k] : f.coeffs()) c.terms.emplace_back(v, k);
  c.constant = f.constant_term();
  return c;
}

LinearForm restrict_outside(const LinearForm& f, const std::vector<char>& inside) {
  LinearForm r;
  for (auto [v, k] : f.coeffs())
    if (!inside[static_cast<std::size_t>(v)]) r.add(v, k);
  return r;
}

LinearForm drop_var(const LinearForm& f, VarId u) {
  LinearForm r;
  for (auto [v, k] : f.coeffs())
    if (v != u) r.add(v, k);
  r.add_constant(f.constant_term());
  return r;
}

bool only_var(const LinearForm& f, VarId u) {
  for (auto [v, k] : f.coeffs())
    if (v != u) return false;
  return true;
}

}  // namespace

std::size_t KeyHash::operator()(const Key& k) const {
  std::size_t h = static_cast<std::size_t>(k.n) * 0x9e3779b97f4a7c15ULL;
  for (int i = 0; i < k.n; ++i) h = (h ^ static_cast<std::size_t>(k.v[static_cast<std::size_t>(i)])) * 0x100000001b3ULL + (h >> 29);
  return h;
}

Engine::Engine(const SumExpr& e) : rp_(kMaxExponent + 1), h_(kMaxExponent + 1) {
  e.validate();
  reduce(e);
  std::vector<int> all(static_cast<std::size_t>(n_));
  std::iota(all.begin(), all.end(), 0);
  for (auto& comp : components(all)) {
    auto c = std::make_unique<Child>();
    c->node = build_node(comp);
    c->mode = Child::Mode::Const;
    roots_.push_back(std::move(c));
  }
}

Engine::~Engine() = default;

void Engine::reduce(const SumExpr& e) {
  const auto& vars = e.vars();
  std::vector<LinearForm> subst(vars.size());
  auto apply = [&](const LinearForm& f) {
    LinearForm r = LinearForm::constant(f.constant_term());
    for (auto [v, k] : f.coeffs())
    {
      const LinearForm& s = subst[static_cast<std::size_t>(v)];
      for (auto [w, c] : s.coeffs()) r.add(w, c * k);
      r.add_constant(s.constant_term() * k);
    }
    return r;
  };
  n_ = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (v.upper && v.upper->rel == Rel::Eq) {
      subst[i] = apply(v.upper->form);
      continue;
    }
    VarInfo info;
    if (v.lower) {
      info.lo = apply(v.lower->form);
      info.lo_adj = v.lower->rel == Rel::Gt ? 1 : 0;
    }
    if (v.upper) {
      info.hi = apply(v.upper->form);
      info.hi_adj = v.upper->rel == Rel::Lt ? 1 : 0;
    }
    subst[i] = LinearForm::var(n_++);
    info_.push_back(std::move(info));
  }
  std::map<LinearForm, int> merged;
  for (const auto& f : e.factors()) {
    LinearForm g = apply(f.form);
    if (g.is_zero()) throw std::invalid_argument("nonpositive LinearForm after substitution");
    if (g.is_constant()) {
      const_factors_.emplace_back(g.constant_term(), f.exponent);
    } else {
      merged[g] += f.exponent;
    }
  }
  for (auto& [f, ex] : merged) factors_.push_back({f, ex});
}

std::vector<std::vector<int>> Engine::components(const std::vector<int>& set) const {
  std::vector<int> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> in(static_cast<std::size_t>(n_), 0);
  for (int v : set) in[static_cast<std::size_t>(v)] = 1;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  auto link_form = [&](const LinearForm& f, int anchor) {
    for (auto [v, k] : f.coeffs())
      if (in[static_cast<std::size_t>(v)]) {
        if (anchor >= 0) unite(anchor, v);
        anchor = v;
      }
    return anchor;
  };
  for (int v : set) {
    const auto& info = info_[static_cast<std::size_t>(v)];
    if (info.lo) link_form(*info.lo, v);
    if (info.hi) link_form(*info.hi, v);
  }
  for (const auto& f : factors_) link_form(f.form, -1);
  std::map<int, std::vector<int>> groups;
  for (int v : set) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unique_ptr<Node> Engine::build_node(const std::vector<int>& set) {
  auto nd = std::make_unique<Node>();
  const int u = set.front();
  nd->var = u;
  const auto& info = info_[static_cast<std::size_t>(u)];
  if (info.lo) {
    nd->has_lo = true;
    nd->lo = compile(*info.lo);
    nd->lo_adj = info.lo_adj;
  }
  if (info.hi) {
    nd->has_hi = true;
    nd->hi = compile(*info.hi);
    nd->hi_adj = info.hi_adj;
  }
  std::vector<int> rest(set.begin() + 1, set.end());
  bool unit = true;
  std::vector<const FactorSpec*> attached;
  for (const auto& f : factors_)
    if (f.form.max_var() == u) {
      attached.push_back(&f);
      if (f.form.coeff(u) != 1) unit = false;
    }
  if (rest.empty() && unit) {
    nd->closed_leaf = true;
    for (auto* f : attached) nd->leaf_factors.push_back({compile(drop_var(f->form, u)), f->exponent});
    return nd;
  }
  for (auto* f : attached) {
    if (only_var(f->form, u)) nd->self_factors.push_back({compile(f->form), f->exponent});
    else nd->mixed_factors.push_back({compile(f->form), f->exponent});
  }
  for (auto& comp : components(rest)) {
    auto c = make_child(comp, u);
    if (c->self) nd->self_children.push_back(std::move(c));
    else nd->mixed_children.push_back(std::move(c));
  }
  nd->self_cached = !nd->self_factors.empty() || !nd->self_children.empty();
  return nd;
}

std::unique_ptr<Child> Engine::make_child(const std::vector<int>& comp, int parent_var) {
  auto c = std::make_unique<Child>();
  c->node = build_node(comp);
  std::vector<char> inside(static_cast<std::size_t>(n_), 0);
  for (int v : comp) inside[static_cast<std::size_t>(v)] = 1;

  // Restricted forms and where they came from: 0 other, 1 lower of first var, 2 upper of first var.
  std::map<LinearForm, std::vector<int>> seen;
  auto note = [&](const LinearForm& f, int origin) {
    LinearForm r = restrict_outside(f, inside);
    if (!r.is_zero()) seen[r].push_back(origin);
  };
  const int first = comp.front();
  for (int v : comp) {
    const auto& info = info_[static_cast<std::size_t>(v)];
    if (info.lo) note(*info.lo, v == first ? 1 : 0);
    if (info.hi) note(*info.hi, v == first ? 2 : 0);
  }
  for (const auto& f : factors_)
    if (f.form.max_var() >= 0 && inside[static_cast<std::size_t>(f.form.max_var())]) note(f.form, 0);

  c->self = true;
  std::vector<LinearForm> iface;
  for (auto& [f, origins] : seen) {
    iface.push_back(f);
    if (!only_var(f, parent_var)) c->self = false;
  }
  if (iface.empty()) {
    c->mode = Child::Mode::Const;
    return c;
  }
  for (auto& f : iface) c->iface.push_back(compile(f));
  if (iface.size() > Key::kMax) {
    c->mode = Child::Mode::NoMemo;
    return c;
  }
  c->mode = Child::Mode::Direct;
  const auto& info = info_[static_cast<std::size_t>(first)];
  for (std::size_t i = 0; i < iface.size(); ++i) {
    const auto& origins = seen[iface[i]];
    if (origins.size() != 1 || origins[0] == 0) continue;
    c->moving = static_cast<int>(i);
    if (origins[0] == 2) {
      c->mode = Child::Mode::RecUpper;
      c->rec_const = info.hi->constant_term() - info.hi_adj;
    } else {
      c->mode = Child::Mode::RecLower;
      c->rec_const = info.lo->constant_term() + info.lo_adj;
    }
    break;
  }
  return c;
}

// ---- runtime ----

const Real& Engine::rpow(int e, long n) {
  if (n <= 0) throw std::invalid_argument("nonpositive LinearForm detected");
  if (e < 1 || e > kMaxExponent) throw std::invalid_argument("factor exponent out of range");
  auto& t1 = rp_[1];
  if (t1.empty()) t1.emplace_back(0);
  while (static_cast<long>(t1.size()) <= n) {
    Real one(1);
    one /= static_cast<long>(t1.size());
    t1.push_back(std::move(one));
  }
  auto& te = rp_[static_cast<std::size_t>(e)];
  if (e > 1) {
    if (te.empty()) te.emplace_back(0);
    while (static_cast<long>(te.size()) <= n) {
      long m = static_cast<long>(te.size());
      Real x = rpow(e - 1, m) * t1[static_cast<std::size_t>(m)];
      te.push_back(std::move(x));
    }
  }
  return te[static_cast<std::size_t>(n)];
}

Real Engine::harmonic_diff(int e, long hi, long lo) {
  if (lo < 0) throw std::invalid_argument("nonpositive LinearForm detected");
  auto& h = h_[static_cast<std::size_t>(e)];
  if (h.empty()) h.emplace_back(0);
  while (static_cast<long>(h.size()) <= hi) {
    long m = static_cast<long>(h.size());
    Real x = h.back() + rpow(e, m);
    h.push_back(std::move(x));
  }
  return h[static_cast<std::size_t>(hi)] - h[static_cast<std::size_t>(lo)];
}

void Engine::reset(Child& c) {
  c.have_const = false;
  c.direct.clear();
  c.tables.clear();
  c.entries = 0;
  reset(*c.node);
}

void Engine::reset(Node& nd) {
  nd.g.clear();
  nd.have.clear();
  for (auto& c : nd.self_children) reset(*c);
  for (auto& c : nd.mixed_children) reset(*c);
}

PartialSum Engine::run(long cutoff) {
  cap_ = cutoff;
  steps_ = 0;
  memo_entries_ = 0;
  val_.assign(static_cast<std::size_t>(n_), 0);
  for (auto& r : roots_) reset(*r);
  Real total(1);
  for (auto [c, e] : const_factors_) total *= rpow(e, c);
  for (auto& r : roots_) total *= child_value(*r);
  return {total, steps_};
}

Real Engine::eval_node(Node& nd) {
  long lo = 1;
  if (nd.has_lo) lo = std::max(lo, nd.lo.eval(val_.data()) + nd.lo_adj);
  long hi = nd.has_hi ? nd.hi.eval(val_.data()) - nd.hi_adj : cap_;
  if (hi < lo) return Real(0);
  if (nd.closed_leaf) return closed_sum(nd, lo, hi);
  Real s(0), t;
  for (long x = lo; x <= hi; ++x) {
    val_[static_cast<std::size_t>(nd.var)] = x;
    body(nd, t);
    s += t;
    ++steps_;
  }
  return s;
}

void Engine::body(Node& nd, Real& out) {
  const long x = val_[static_cast<std::size_t>(nd.var)];
  if (nd.closed_leaf) {
    // recurrence fill on a closed leaf: plain term
    out = 1;
    for (auto& [f, e] : nd.leaf_factors) out *= rpow(e, f.eval(val_.data()) + x);
    return;
  }
  if (nd.self_cached) out = self_value(nd, x);
  else out = 1;
  for (auto& [f, e] : nd.mixed_factors) out *= rpow(e, f.eval(val_.data()));
  for (auto& c : nd.mixed_children) out *= child_value(*c);
}

const Real& Engine::self_value(Node& nd, long x) {
  auto ix = static_cast<std::size_t>(x);
  if (ix >= nd.have.size()) {
    std::size_t grow = std::max<std::size_t>(ix + 1, nd.have.size() * 2);
    nd.have.resize(grow, 0);
    nd.g.resize(grow);
  }
  if (!nd.have[ix]) {
    Real v(1);
    for (auto& [f, e] : nd.self_factors) v *= rpow(e, f.eval(val_.data()));
    for (auto& c : nd.self_children) v *= child_value(*c);
    nd.g[ix] = std::move(v);
    nd.have[ix] = 1;
  }
  return nd.g[ix];
}

Real Engine::closed_sum(Node& nd, long lo, long hi) {
  ++steps_;
  if (nd.leaf_factors.empty()) return Real(hi - lo + 1);
  // group shifts
  std::map<long, int> groups;
  for (auto& [f, e] : nd.leaf_factors) groups[f.eval(val_.data())] += e;
  if (groups.size() == 1) {
    auto [c, e] = *groups.begin();
    return harmonic_diff(e, hi + c, lo - 1 + c);
  }
  std::vector<std::pair<long, int>> g(groups.begin(), groups.end());
  steps_ += static_cast<std::int64_t>(g.size() * g.size());
  Real total(0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int ei = g[i].second;
    std::vector<Real> s(static_cast<std::size_t>(ei), Real(0));
    s[0] = 1;
    for (std::size_t m = 0; m < g.size(); ++m) {
      if (m == i) continue;
      const long delta = g[m].first - g[i].first;
      const int em = g[m].second;
      // (t+delta)^(-em) = sum_n (-1)^n C(em+n-1,n) delta^(-em-n) t^n
      std::vector<Real> b(static_cast<std::size_t>(ei));
      Real inv = Real(1) / Real(delta);
      Real p = boost::multiprecision::pow(inv, em);
      Real binom(1);
      for (int n = 0; n < ei; ++n) {
        if (n > 0) {
          binom *= (em + n - 1);
          binom /= n;
          p *= inv;
        }
        b[static_cast<std::size_t>(n)] = (n % 2 ? -binom : binom) * p;
      }
      std::vector<Real> r(static_cast<std::size_t>(ei), Real(0));
      for (int a = 0; a < ei; ++a)
        for (int bb = 0; a + bb < ei; ++bb) r[static_cast<std::size_t>(a + bb)] += s[static_cast<std::size_t>(a)] * b[static_cast<std::size_t>(bb)];
      s = std::move(r);
    }
    const long ci = g[i].first;
    for (int n = 0; n < ei; ++n) {
      int j = ei - n;
      total += s[static_cast<std::size_t>(n)] * harmonic_diff(j, hi + ci, lo - 1 + ci);
    }
  }
  return total;
}

Key Engine::make_key(const Child& c, int skip) const {
  Key k;
  for (std::size_t i = 0; i < c.iface.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    k.v[static_cast<std::size_t>(k.n++)] = c.iface[i].eval(val_.data());
  }
  return k;
}

void Engine::account(Child& c, std::size_t added) {
  c.entries += added;
  memo_entries_ += added;
}

void Engine::maybe_evict(Child& c) {
  if (memo_entries_ <= kMemoCap || c.entries == 0) return;
  memo_entries_ -= c.entries;
  c.entries = 0;
  c.direct.clear();
  c.tables.clear();
}

const Real& Engine::child_value(Child& c) {
  switch (c.mode) {
    case Child::Mode::Const:
      if (!c.have_const) {
        c.const_value = eval_node(*c.node);
        c.have_const = true;
      }
      return c.const_value;
    case Child::Mode::NoMemo:
      c.const_value = eval_node(*c.node);
      return c.const_value;
    case Child::Mode::Direct: {
      maybe_evict(c);
      Key k = make_key(c, -1);
      auto it = c.direct.find(k);
      if (it != c.direct.end()) return it->second;
      Real v = eval_node(*c.node);
      account(c, 1);
      return c.direct.emplace(k, std::move(v)).first->second;
    }
    case Child::Mode::RecUpper:
    case Child::Mode::RecLower:
      break;
  }
  maybe_evict(c);
  Node& nd = *c.node;
  Key k = make_key(c, c.moving);
  const long x = c.iface[static_cast<std::size_t>(c.moving)].eval(val_.data());
  auto [it, fresh] = c.tables.try_emplace(k);
  Table& t = it->second;
  if (fresh) {
    if (c.mode == Child::Mode::RecUpper) {
      long lo = 1;
      if (nd.has_lo) lo = std::max(lo, nd.lo.eval(val_.data()) + nd.lo_adj);
      t.anchor = lo;
    } else {
      t.anchor = nd.has_hi ? nd.hi.eval(val_.data()) - nd.hi_adj : cap_;
    }
  }
  std::size_t idx;
  Real term;
  if (c.mode == Child::Mode::RecUpper) {
    // R(x) = sum_{u=lo}^{x+k} body(u), stored at index x+k-lo
    const long top = x + c.rec_const;
    if (top < t.anchor) return zero_;
    idx = static_cast<std::size_t>(top - t.anchor);
    while (t.vals.size() <= idx) {
      val_[static_cast<std::size_t>(nd.var)] = t.anchor + static_cast<long>(t.vals.size());
      body(nd, term);
      if (!t.vals.empty()) term += t.vals.back();
      t.vals.push_back(term);
      ++steps_;
      account(c, 1);
    }
  } else {
    // Q(y) = sum_{u=y}^{hi} body(u), stored at index hi-y
    const long y = std::max(1L, x + c.rec_const);
    if (y > t.anchor) return zero_;
    idx = static_cast<std::size_t>(t.anchor - y);
    while (t.vals.size() <= idx) {
      val_[static_cast<std::size_t>(nd.var)] = t.anchor - static_cast<long>(t.vals.size());
      body(nd, term);
      if (!t.vals.empty()) term += t.vals.back();
      t.vals.push_back(term);
      ++steps_;
      account(c, 1);
    }
  }
  return t.vals[idx];
}

}  // namespace mzeta::detail
