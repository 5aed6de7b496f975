#pragma once

#include "mzeta/eta.hpp"
#include "mzeta/mzv.hpp"

#include <string>
#include <vector>

namespace mzeta {

struct Route {
  std::string name;
  Real value;
  Real error;
};

struct Report {
  std::string identity;
  std::string params;
  std::vector<Route> routes;
  Real discrepancy;  // largest pairwise gap between routes
  Real tolerance;
  bool pass = false;
  double ms = 0;
};

struct VerifyOptions {
  double floor = 1e-6;
  double safety = 4;
  // Added to the leading right-hand-side coefficient; nonzero only for
  // negative controls.
  Rational rhs_shift = 0;
  MzvCache* cache = nullptr;
};

// Recomputes discrepancy, tolerance and verdict from the stored routes:
// tolerance = max(floor, safety * (sum of the two largest route errors)).
void finalize(Report& rep, const VerifyOptions& opts);

// Three routes: sum of eta values, zeta of the formal right side, and the
// right side summed directly as a series.
Report verify_sum_formula(int k, int l, int r, const EvalConfig& cfg, const VerifyOptions& opts = {});

Report verify_symmetry(const Index& k, const Index& l, const EvalConfig& cfg, const VerifyOptions& opts = {});
Report verify_symmetry(const RealArgPair& args, const EvalConfig& cfg, const VerifyOptions& opts = {});

// [0]: eta((1,k);(1,l)) against S1 - S2 - S3 + S4, [1]: S1 against zeta(2) * eta(k;l).
std::vector<Report> verify_thm45(int k, int l, const EvalConfig& cfg, const VerifyOptions& opts = {});

// [0]: eta_kt(k,l) against zeta of the dual-refinement expansion,
// [1]: zeta(k* ⊛ (1^l)*) against the sum of chain sums over subsets of J(k).
std::vector<Report> verify_appendix(const Index& k, int l, const EvalConfig& cfg, const VerifyOptions& opts = {});

// zeta(a) zeta(b) against zeta(a * b); classical, used as an external oracle.
Report verify_stuffle(const Index& a, const Index& b, const EvalConfig& cfg, const VerifyOptions& opts = {});

// eta(k;l) against an explicitly given zeta combination.
Report verify_eta_expansion(const Index& k, const Index& l, const IndexCombination& rhs, const EvalConfig& cfg,
                            const VerifyOptions& opts = {});

// eta(1^r;1^r), zeta(2^r) and pi^(2r)/(2r+1)!.
Report verify_eta_ones(int r, const EvalConfig& cfg, const VerifyOptions& opts = {});

struct EtaExpansion {
  Index k, l;
  IndexCombination rhs;
};
// The r = 1 expansions of eta(1;1), eta(2;1), eta(3;1), eta(2;2).
std::vector<EtaExpansion> small_eta_expansions();

// Named suites: quick, full, appendix, thm45. Checks run on `jobs` threads;
// reports come back in the fixed suite order.
std::vector<Report> run_suite(const std::string& name, const EvalConfig& cfg, const VerifyOptions& opts = {},
                              int jobs = 1);
bool is_suite_name(const std::string& name);

std::string report_to_json(const Report& rep);
std::string reports_to_json(const std::vector<Report>& reps);
std::string report_to_text(const Report& rep, unsigned digits);

}  // namespace mzeta
