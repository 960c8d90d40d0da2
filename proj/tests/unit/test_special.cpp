#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "latsum/special_functions.hpp"

using namespace latsum;

TEST_SUITE("special") {

TEST_CASE("upper gamma matches Boost for positive order") {
  for (double s : {0.5, 1.0, 2.5, 7.25, 15.0})
    for (double x : {0.01, 0.3, 1.0, 4.0, 12.0, 40.0}) {
      const double ref = boost::math::tgamma(s, x);
      CHECK(upper_gamma(s, x) == doctest::Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("upper gamma at order zero is E1") {
  for (double x : {0.05, 0.7, 3.0, 20.0})
    CHECK(upper_gamma(0.0, x) == doctest::Approx(boost::math::expint(1, x)).epsilon(1e-14));
}

TEST_CASE("negative order satisfies the recurrence") {
  // Gamma(s+1, x) = s Gamma(s, x) + x^s e^{-x}
  for (long double s : {-0.5L, -1.5L, -3.25L, -7.5L, -2.0L, -5.0L})
    for (long double x : {0.02L, 0.5L, 2.0L, 9.0L}) {
      const long double lhs = upper_gamma(s + 1, x);
      const long double rhs = s * upper_gamma(s, x) + std::pow(x, s) * std::exp(-x);
      CHECK(std::abs(lhs - rhs) <= 1e-15L * std::max(std::abs(lhs), 1.0L));
    }
}

TEST_CASE("scaled upper gamma is Gamma(s,x) x^-s") {
  for (double s : {-2.5, -0.5, 0.0, 1.5})
    for (double x : {0.1, 1.0, 5.0})
      CHECK(upper_gamma_scaled(s, x) == doctest::Approx(upper_gamma(s, x) * std::pow(x, -s)).epsilon(1e-13));
}

TEST_CASE("reciprocal gamma vanishes at poles") {
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rgamma(0.5) == doctest::Approx(1 / std::sqrt(pi_v<double>)).epsilon(1e-15));
  CHECK(is_nonpositive_integer(-4.0));
  CHECK_FALSE(is_nonpositive_integer(-4.5));
}

TEST_CASE("digamma at integers") {
  CHECK(digamma_int<double>(1) == doctest::Approx(-euler_gamma_v<double>).epsilon(1e-15));
  CHECK(digamma_int<double>(4) == doctest::Approx(boost::math::digamma(4.0)).epsilon(1e-15));
}

}
