#include "mzeta/real.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ios>

namespace mzeta {

// Writes only on change, so workers that all run at the preset digit count
// never touch the shared default.
PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  if (saved_ != digits) Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() {
  if (Real::default_precision() != saved_) Real::default_precision(saved_);
}

std::string to_exact_string(const Real& x) {
  // digits10 of the variable plus a few guards round-trips the binary value
  return x.str(static_cast<std::streamsize>(x.precision() + 5), std::ios::scientific);
}

Real parse_real(const std::string& s) { return Real(s); }

namespace {

int floor_log10(const Real& x) {
  using boost::multiprecision::abs;
  using boost::multiprecision::floor;
  using boost::multiprecision::log10;
  Real l = floor(log10(abs(x)));
  return l.convert_to<int>();
}

int decimals_for(const Real& value, const Real& error, unsigned max_digits) {
  int cap;
  if (value == 0) {
    cap = static_cast<int>(max_digits);
  } else {
    cap = static_cast<int>(max_digits) - 1 - floor_log10(value);
  }
  int want = cap;
  if (error > 0) want = -floor_log10(error) + 2;
  return std::max(0, std::min(want, cap));
}

}  // namespace

std::string format_value(const Real& value, const Real& error, unsigned max_digits) {
  int d = decimals_for(value, error, max_digits);
  return value.str(d, std::ios::fixed);
}

std::string format_error(const Real& error) {
  if (error <= 0) return "0";
  int e = floor_log10(error);
  Real scaled = error / boost::multiprecision::pow(Real(10), e);
  int mant = static_cast<int>(std::ceil(scaled.convert_to<double>() - 1e-12));
  if (mant < 1) mant = 1;
  if (mant >= 10) {
    mant = 1;
    ++e;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%de%s%02d", mant, e < 0 ? "-" : "+", std::abs(e));
  return buf;
}

std::string format_with_error(const Real& value, const Real& error, unsigned max_digits) {
  return format_value(value, error, max_digits) + " ± " + format_error(error);
}

Real pi_value() { return boost::math::constants::pi<Real>(); }

Real rational_to_real(const boost::multiprecision::mpq_rational& q) {
  return Real(boost::multiprecision::numerator(q).str()) / Real(boost::multiprecision::denominator(q).str());
}

}  // namespace mzeta
