#include "mzeta/chainsum.hpp"

#include <sstream>
#include <stdexcept>

namespace mzeta {

void EvalConfig::validate() const {
  if (precision_digits < 10) throw std::invalid_argument("precision_digits must be >= 10");
  if (cutoff < 10) throw std::invalid_argument("cutoff must be >= 10");
  if (!(target_epsilon > 0)) throw std::invalid_argument("target_epsilon must be positive");
  if (extrapolation_points < 3) throw std::invalid_argument("extrapolation_points must be >= 3");
  if (work_budget < 0) throw std::invalid_argument("work_budget must be nonnegative");
}

LinearForm LinearForm::var(VarId v, long coeff) { return LinearForm().add(v, coeff); }

LinearForm LinearForm::constant(long c) { return LinearForm().add_constant(c); }

LinearForm& LinearForm::add(VarId v, long coeff) {
  if (v < 0) throw std::invalid_argument("negative variable id");
  if (coeff < 0) throw std::invalid_argument("linear form coefficients must be nonnegative");
  if (coeff == 0) return *this;
  coeffs_[v] += coeff;
  return *this;
}

LinearForm& LinearForm::add_constant(long c) {
  if (c < 0 || constant_ + c < 0) throw std::invalid_argument("linear form constant must be nonnegative");
  constant_ += c;
  return *this;
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  LinearForm r = *this;
  for (auto [v, c] : o.coeffs_) r.add(v, c);
  r.constant_ += o.constant_;
  return r;
}

LinearForm LinearForm::operator+(long c) const {
  LinearForm r = *this;
  r.add_constant(c);
  return r;
}

long LinearForm::coeff(VarId v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? 0 : it->second;
}

long LinearForm::eval(std::span<const long> values) const {
  long s = constant_;
  for (auto [v, c] : coeffs_) s += c * values[static_cast<std::size_t>(v)];
  return s;
}

std::string LinearForm::str(const std::vector<std::string>& names) const {
  std::string s;
  for (auto [v, c] : coeffs_) {
    if (!s.empty()) s += "+";
    if (c != 1) s += std::to_string(c) + "*";
    s += static_cast<std::size_t>(v) < names.size() ? names[static_cast<std::size_t>(v)] : "v" + std::to_string(v);
  }
  if (constant_ != 0 || s.empty()) {
    if (!s.empty()) s += "+";
    s += std::to_string(constant_);
  }
  return s;
}

Bound ge(LinearForm f) { return {Rel::Ge, std::move(f)}; }
Bound gt(LinearForm f) { return {Rel::Gt, std::move(f)}; }
Bound le(LinearForm f) { return {Rel::Le, std::move(f)}; }
Bound lt(LinearForm f) { return {Rel::Lt, std::move(f)}; }
Bound eq(LinearForm f) { return {Rel::Eq, std::move(f)}; }

VarId SumExpr::add_var(std::string name, std::optional<Bound> lower, std::optional<Bound> upper) {
  vars_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return static_cast<VarId>(vars_.size() - 1);
}

void SumExpr::add_factor(LinearForm form, int exponent) {
  factors_.push_back({std::move(form), exponent});
}

std::vector<std::string> SumExpr::names() const {
  std::vector<std::string> n;
  for (auto& v : vars_) n.push_back(v.name);
  return n;
}

void SumExpr::validate() const {
  const VarId n = static_cast<VarId>(vars_.size());
  for (VarId i = 0; i < n; ++i) {
    const auto& v = vars_[static_cast<std::size_t>(i)];
    if (v.lower) {
      if (v.lower->rel != Rel::Ge && v.lower->rel != Rel::Gt)
        throw std::invalid_argument("lower bound of " + v.name + " must use >= or >");
      if (v.lower->form.max_var() >= i)
        throw std::invalid_argument("non-triangular bound dependency at " + v.name);
    }
    if (v.upper) {
      if (v.upper->rel == Rel::Ge || v.upper->rel == Rel::Gt)
        throw std::invalid_argument("upper bound of " + v.name + " must use <=, < or =");
      if (v.upper->form.max_var() >= i)
        throw std::invalid_argument("non-triangular bound dependency at " + v.name);
      if (v.upper->rel == Rel::Eq) {
        if (v.lower) throw std::invalid_argument("= bounded variable " + v.name + " cannot carry a lower bound");
        if (v.upper->form.is_zero()) throw std::invalid_argument("nonpositive LinearForm in bound of " + v.name);
      }
    }
  }
  for (const auto& f : factors_) {
    if (f.form.is_zero()) throw std::invalid_argument("nonpositive LinearForm in factor");
    if (f.form.max_var() >= n) throw std::invalid_argument("factor references unknown variable");
    if (f.exponent < 1) throw std::invalid_argument("factor exponent must be positive");
  }
}

namespace {

const char* rel_str(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
  }
  return "?";
}

}  // namespace

std::string SumExpr::str() const {
  auto nm = names();
  std::ostringstream os;
  for (const auto& v : vars_) {
    os << v.name << ", ";
    if (v.lower) os << rel_str(v.lower->rel) << " " << v.lower->form.str(nm);
    else os << ">= 1";
    os << ", ";
    if (v.upper) os << rel_str(v.upper->rel) << " " << v.upper->form.str(nm);
    else os << "<= inf";
    os << "\n";
  }
  os << ";";
  for (const auto& f : factors_) {
    os << " 1/(" << f.form.str(nm) << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  os << "\n";
  return os.str();
}

namespace {

struct Brute {
  const SumExpr& e;
  long bound;
  std::int64_t limit;
  std::int64_t visited = 0;
  std::vector<long> val;
  Rational sum = 0;

  void run(std::size_t i) {
    if (i == e.vars().size()) {
      boost::multiprecision::mpz_int den = 1;
      for (const auto& f : e.factors()) {
        long x = f.form.eval(val);
        if (x <= 0) throw std::invalid_argument("nonpositive LinearForm detected");
        for (int k = 0; k < f.exponent; ++k) den *= x;
      }
      sum += Rational(1, den);
      return;
    }
    const auto& v = e.vars()[i];
    long lo = 1, hi = bound;
    long target = -1;
    if (v.lower) {
      long x = v.lower->form.eval(val);
      lo = std::max(lo, v.lower->rel == Rel::Gt ? x + 1 : x);
    }
    if (v.upper) {
      long x = v.upper->form.eval(val);
      switch (v.upper->rel) {
        case Rel::Le: hi = x; break;
        case Rel::Lt: hi = x - 1; break;
        case Rel::Eq: hi = x; target = x; break;
        default: break;
      }
    }
    for (long x = lo; x <= hi; ++x) {
      if (++visited > limit) throw std::runtime_error("oracle too large");
      if (target >= 0 && x != target) continue;  // explicit equality filter
      val[i] = x;
      run(i + 1);
    }
  }
};

}  // namespace

Rational brute_force_eval(const SumExpr& e, long bound, std::int64_t enumeration_limit) {
  e.validate();
  Brute b{e, bound, enumeration_limit, 0, std::vector<long>(e.vars().size(), 0)};
  b.run(0);
  return b.sum;
}

}  // namespace mzeta
