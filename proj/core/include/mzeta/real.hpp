#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace mzeta {

using Real = boost::multiprecision::mpfr_float;

// Sets the process-wide default MPFR precision for the lifetime of the scope.
// The default is shared by all threads, so concurrent evaluations must agree
// on the digit count (the CLI sets it once before spawning workers).
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Digits used for arithmetic when the caller asks for `digits`: ten guard
// digits, and never below 40 since the extrapolation fits are ill-conditioned.
inline unsigned working_digits(unsigned digits) { return digits + 10 < 40 ? 40 : digits + 10; }

// Full round-trip decimal in scientific notation.
std::string to_exact_string(const Real& x);
Real parse_real(const std::string& s);

// Value rendered with as many decimals as the error bound justifies, capped at
// max_digits significant digits, followed by " ± e" with one significant digit.
std::string format_with_error(const Real& value, const Real& error, unsigned max_digits);

// Only the value part of format_with_error.
std::string format_value(const Real& value, const Real& error, unsigned max_digits);
std::string format_error(const Real& error);

Real pi_value();
Real rational_to_real(const boost::multiprecision::mpq_rational& q);

}  // namespace mzeta
