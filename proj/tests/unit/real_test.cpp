#include "mzeta/index.hpp"
#include "mzeta/real.hpp"

#include <doctest.h>

using namespace mzeta;

TEST_SUITE("real") {
  TEST_CASE("precision scopes nest and restore") {
    const unsigned outer = Real::default_precision();
    {
      PrecisionScope a(60);
      CHECK(Real::default_precision() == 60);
      {
        PrecisionScope b(80);
        CHECK(Real::default_precision() == 80);
      }
      CHECK(Real::default_precision() == 60);
    }
    CHECK(Real::default_precision() == outer);
  }

  TEST_CASE("working digits keep guard digits and a floor") {
    CHECK(working_digits(50) == 60);
    CHECK(working_digits(10) == 40);
  }

  TEST_CASE("error formatting rounds up to one digit") {
    PrecisionScope ps(40);
    CHECK(format_error(Real("2e-7")) == "2e-07");
    CHECK(format_error(Real("2.1e-7")) == "3e-07");
    CHECK(format_error(Real("9.5e-3")) == "1e-02");
    CHECK(format_error(Real(0)) == "0");
  }

  TEST_CASE("values print only justified digits") {
    PrecisionScope ps(40);
    Real v("1.64493406684822643647");
    CHECK(format_value(v, Real("2e-7"), 30) == "1.644934067");
    CHECK(format_value(v, Real("0"), 10) == "1.644934067");
    CHECK(format_with_error(v, Real("2e-7"), 30) == "1.644934067 ± 2e-07");
    CHECK(format_value(Real("-1.2020569031595942"), Real("1e-3"), 30) == "-1.20206");
  }

  TEST_CASE("exact strings round trip") {
    PrecisionScope ps(50);
    Real x = Real(1) / 3;
    CHECK(parse_real(to_exact_string(x)) == x);
    CHECK_THROWS(parse_real("nope"));
  }

  TEST_CASE("rational conversion") {
    PrecisionScope ps(40);
    CHECK(abs(rational_to_real(Rational(1, 7)) - Real(1) / 7) < Real("1e-39"));
    CHECK(rational_to_real(Rational(-3)) == -3);
  }
}
