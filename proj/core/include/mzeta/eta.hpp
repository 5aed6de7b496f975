#pragma once

#include "mzeta/chainsum.hpp"
#include "mzeta/index.hpp"
#include "mzeta/mzv.hpp"

#include <array>
#include <set>
#include <vector>

namespace mzeta {

// ---- series builders ----

// Pair form in suffix-sum coordinates (every suffix sum of the m's and n's is
// a variable or a sum of variables); this is the form used for evaluation.
SumExpr eta_pair_expr(const Index& k, const Index& l);

// Which side of each matching constraint is eliminated in the literal form.
enum class Eliminate { NSide, MSide };

// Literal variables m_1.., n_1.. with the matching constraints as `=` bounds.
SumExpr eta_pair_literal_expr(const Index& k, const Index& l, Eliminate side = Eliminate::NSide);

// a_1 [] a_2 ... [] a_w = b_l >= ... >= b_1 > 0, [] strict on J, equal elsewhere.
SumExpr chain_sum_expr(int weight, const std::set<int>& strict, int l);

// m_1 > ... > m_r > 0 with two weakly increasing chains capped by m_1.
SumExpr sumformula_rhs_expr(int k, int l, int r);

// S_1..S_4 of the (1,k;1,l) decomposition.
std::array<SumExpr, 4> eta_1k1l_exprs(int k, int l);

// ---- numeric values ----

Approx eta_pair(const Index& k, const Index& l, const EvalConfig& cfg);

struct RealArgPair {
  std::vector<double> s_prime;
  std::vector<double> s;
};

// Direct numerical integration, r <= 2, positive real arguments.
Approx eta_quadrature(const RealArgPair& args, const EvalConfig& cfg);

Approx chain_sum_value(int weight, const std::set<int>& strict, int l, const EvalConfig& cfg);
Approx xi_value(const Index& k, int l, const EvalConfig& cfg);
// Single-argument function at s = l via the refinement sum of xi values.
Approx eta_kt(const Index& k, int l, const EvalConfig& cfg);

Approx sumformula_lhs(int k, int l, int r, const EvalConfig& cfg);
Approx sumformula_rhs_series(int k, int l, int r, const EvalConfig& cfg);

struct Eta1k1lParts {
  Approx s1, s2, s3, s4;
  Approx combined() const;  // s1 - s2 - s3 + s4
};
Eta1k1lParts eta_1k1l_parts(int k, int l, const EvalConfig& cfg);

// ---- formal right-hand sides ----

IndexCombination sumformula_rhs_formal(int k, int l, int r);
IndexCombination appendix_rhs_formal(const Index& k, int l);
IndexCombination zeta_star_circ(const Index& k, int l);

// Sum of approximations with signs/coefficients; errors add in absolute value.
Approx combine(std::span<const std::pair<Real, Approx>> terms);

}  // namespace mzeta
