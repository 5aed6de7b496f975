#pragma once

#include "mzeta/index.hpp"
#include "mzeta/real.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mzeta {

struct EvalConfig {
  long cutoff = 10000;
  double target_epsilon = 1e-10;
  unsigned precision_digits = 50;
  bool extrapolate = true;
  int extrapolation_points = 12;
  // Cap on inner-loop steps spent across the cutoff ladder of one series;
  // the ladder is scaled down to fit. 0 disables the cap.
  std::int64_t work_budget = 10'000'000;

  void validate() const;
};

struct Approx {
  Real value = 0;
  Real error = 0;
  long cutoff = 0;
  bool extrapolated = false;
};

using VarId = int;

class LinearForm {
 public:
  LinearForm() = default;
  static LinearForm var(VarId v, long coeff = 1);
  static LinearForm constant(long c);

  LinearForm& add(VarId v, long coeff = 1);
  LinearForm& add_constant(long c);
  LinearForm operator+(const LinearForm& o) const;
  LinearForm operator+(long c) const;

  const std::map<VarId, long>& coeffs() const { return coeffs_; }
  long constant_term() const { return constant_; }
  long coeff(VarId v) const;
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
  bool is_constant() const { return coeffs_.empty(); }
  // Largest referenced variable, -1 for a constant.
  VarId max_var() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  long eval(std::span<const long> values) const;

  std::string str(const std::vector<std::string>& names) const;

  auto operator<=>(const LinearForm&) const = default;
  bool operator==(const LinearForm&) const = default;

 private:
  std::map<VarId, long> coeffs_;
  long constant_ = 0;
};

enum class Rel { Ge, Gt, Le, Lt, Eq };

struct Bound {
  Rel rel;
  LinearForm form;
};

struct Variable {
  std::string name;
  std::optional<Bound> lower;  // absent: >= 1
  std::optional<Bound> upper;  // absent: unbounded (capped at the cutoff)
};

struct Factor {
  LinearForm form;
  int exponent = 1;
};

// Nested series  sum over the domain of  prod 1/form^exponent.
class SumExpr {
 public:
  VarId add_var(std::string name, std::optional<Bound> lower = std::nullopt,
                std::optional<Bound> upper = std::nullopt);
  void add_factor(LinearForm form, int exponent = 1);

  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::vector<std::string> names() const;

  // Throws std::invalid_argument for non-triangular bounds, zero forms,
  // references to unknown variables and lower bounds on `=` variables.
  void validate() const;

  // One line per variable: "name, lower, upper" then "; factors".
  std::string str() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Factor> factors_;
};

// Convenience bound builders.
Bound ge(LinearForm f);
Bound gt(LinearForm f);
Bound le(LinearForm f);
Bound lt(LinearForm f);
Bound eq(LinearForm f);

// Exact sum with every unbounded variable capped at `bound`.
Rational brute_force_eval(const SumExpr& e, long bound, std::int64_t enumeration_limit = 3'000'000);

struct PartialSum {
  Real value;
  std::int64_t steps = 0;
};

// Plain truncated sum at one cutoff, computed at the current default precision.
PartialSum partial_sum(const SumExpr& e, long cutoff);

// Full evaluation: cutoff ladder plus extrapolation, or one crude estimate
// when extrapolation is disabled.
Approx truncated_eval(const SumExpr& e, const EvalConfig& cfg);

struct Sample {
  long cutoff;
  Real value;
};

// Limit of samples taken at increasing cutoffs under an asymptotic model
// sum_i sum_j c_ij log^j(N)/N^i.
Approx extrapolate(std::span<const Sample> samples);

}  // namespace mzeta
