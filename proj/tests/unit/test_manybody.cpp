#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "latsum/manybody.hpp"
#include "latsum/oracle.hpp"

using namespace latsum;

namespace {

ManyBodyConfig quiet() {
  ManyBodyConfig c;
  c.error_estimate = false;
  return c;
}

double z0(const Lattice<double>& lat, double nu) {
  EpsteinOptions eo;
  eo.lambda_scale = 1.5;
  return EpsteinZeta<double>(lat, nu, eo).value(Vector<double>::Zero(lat.dim()));
}

}  // namespace

TEST_SUITE("manybody") {

TEST_CASE("one- and two-body shortcuts") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  const auto r1 = many_body_zeta<double>(z, {5.0}, quiet());
  CHECK(r1.value == 0.0);
  CHECK_FALSE(r1.integral_path);
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  const auto r2 = many_body_zeta<double>(hex, {4.0, 5.0}, quiet());
  CHECK(r2.value == doctest::Approx(z0(hex, 9.0)).epsilon(1e-15));
  ManyBodyConfig f = quiet();
  f.force_integral = true;
  const auto r2f = many_body_zeta<double>(hex, {4.0, 5.0}, f);
  CHECK(r2f.integral_path);
  CHECK(testing::rel_err(r2f.value, r2.value) < 1e-12);
  CHECK(table_square({2}, {3.0}, quiet())[0].value == doctest::Approx(z0(named_lattice<double>(LatticeName::square), 6.0)).epsilon(1e-15));
}

TEST_CASE("three-body integer lattice against direct summation") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  const auto zl = named_lattice<long double>(LatticeName::integer_1d);
  for (std::vector<double> nu : {std::vector<double>{3.0, 3.0, 3.0}, {3.0, 3.5, 4.0}, {3.25, 3.9, 3.05}}) {
    const double v = many_body_zeta<double>(z, nu, quiet()).value;
    const double ref = static_cast<double>(direct_sum_zeta<long double>(zl, {nu[0], nu[1], nu[2]}, 1000));
    CHECK(std::abs(v - ref) <= 1e-13 * std::abs(ref));
  }
}

TEST_CASE("ATM constant on the integer lattice") {
  ManyBodyConfig c;
  c.quad = atm_default_config(1);
  c.quad.adaptive_rel_tol = 1e-18;
  c.error_estimate = false;
  const auto r = atm_cohesive_energy(named_lattice<long double>(LatticeName::integer_1d), c);
  const double v = static_cast<double>(r.value);
  CHECK(v >= -0.2723018495076888);
  CHECK(v <= -0.2723018495076885);
  CHECK(r.value == doctest::Approx(atm_combination(r.zeta_333, r.zeta_m155, r.zeta_135)));
}

TEST_CASE("ATM constant on the square lattice") {
  const auto r = atm_cohesive_energy(named_lattice<double>(LatticeName::square));
  CHECK(testing::rel_err(r.value, 0.77009365051710454) < 1e-9);
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate < 1e-9);
}

TEST_CASE("ATM energy scales as R^-9") {
  ManyBodyConfig c;
  c.quad = atm_default_config(2);
  c.error_estimate = false;
  const double a = atm_cohesive_energy(named_lattice<double>(LatticeName::hexagonal), c).value;
  const double b = atm_cohesive_energy(named_lattice<double>(LatticeName::hexagonal, 1.3), c).value;
  CHECK(testing::rel_err(b, a * std::pow(1.3, -9)) < 1e-11);
  CHECK_THROWS_AS(atm_cohesive_energy(Lattice<double>(Matrix<double>::Identity(4, 4)), c), DomainError);
}

TEST_CASE("normalized sequence is bounded and decreasing") {
  for (auto name : {LatticeName::square, LatticeName::hexagonal}) {
    const auto lat = named_lattice<double>(name);
    CHECK(normalized_many_body<double>(lat, 3.0, 2, quiet()) == doctest::Approx(z0(lat, 6.0) / std::pow(z0(lat, 3.0), 2)));
    double prev = 1.0;
    for (int n = 2; n <= 8; ++n) {
      const double q = normalized_many_body<double>(lat, 3.0, n, quiet());
      CHECK(std::abs(q) <= 1.0);
      CHECK(std::abs(q) < prev);
      prev = std::abs(q);
    }
  }
  CHECK_THROWS_AS(normalized_many_body<double>(named_lattice<double>(LatticeName::square), 1.5, 3, quiet()), DomainError);
}

TEST_CASE("square three-body value against extrapolated direct sums") {
  // Truncation error of the L-box sum decays as L^-4 for nu = (3,3,3) in 2D.
  const auto sq = named_lattice<double>(LatticeName::square);
  const double v = many_body_zeta<double>(sq, {3.0, 3.0, 3.0}, quiet()).value;
  const double s25 = direct_sum_zeta<double>(sq, {3.0, 3.0, 3.0}, 25);
  const double s50 = direct_sum_zeta<double>(sq, {3.0, 3.0, 3.0}, 50);
  const double extrap = (16 * s50 - s25) / 15;
  CHECK(std::abs(v - s50) < 1e-4);
  CHECK(std::abs(v - extrap) < std::abs(v - s50) / 4);
}

TEST_CASE("five-body value is insensitive to the split point") {
  const auto sq = named_lattice<double>(LatticeName::square);
  ManyBodyConfig c = quiet();
  c.quad.radial_mode = RadialMode::split;
  c.quad.taylor_order = 16;
  c.quad.max_taylor_order = 20;
  c.quad.epsilon = 1.0 / 16;
  const double a = many_body_zeta<double>(sq, std::vector<double>(5, 2.5), c).value;
  c.quad.epsilon = 1.0 / 10;
  const double b = many_body_zeta<double>(sq, std::vector<double>(5, 2.5), c).value;
  CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
}

TEST_CASE("cyclic shifts and reversal leave the value unchanged") {
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  const std::vector<double> nu{3.1, 4.0, 5.2, 6.3};
  const double ref = many_body_zeta<double>(hex, nu, quiet()).value;
  CHECK(testing::rel_err(many_body_zeta<double>(hex, {4.0, 5.2, 6.3, 3.1}, quiet()).value, ref) < 1e-12);
  CHECK(testing::rel_err(many_body_zeta<double>(hex, {6.3, 5.2, 4.0, 3.1}, quiet()).value, ref) < 1e-12);
}

TEST_CASE("lattice scaling multiplies by s^-sum(nu)") {
  const std::vector<double> nu{2.5, 3.5, 4.5};
  const double a = many_body_zeta<double>(named_lattice<double>(LatticeName::fcc), nu, quiet()).value;
  const double b = many_body_zeta<double>(named_lattice<double>(LatticeName::fcc, 0.8), nu, quiet()).value;
  CHECK(testing::rel_err(b, a * std::pow(0.8, -10.5)) < 1e-11);
}

TEST_CASE("error estimate is reported and small") {
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  ManyBodyConfig c;
  const auto r = many_body_zeta<double>(hex, {0.5, 2.5, 3.0}, c);
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate < 1e-9 * std::max(1.0, std::abs(r.value)));
  const auto a = many_body_zeta<double>(hex, {4.0, 4.0, 4.0}, c);
  CHECK(a.error_estimate >= 0.0);
  CHECK(a.error_estimate < 1e-10 * std::abs(a.value));
}

TEST_CASE("invalid exponents") {
  const auto sq = named_lattice<double>(LatticeName::square);
  CHECK_THROWS_AS(many_body_zeta<double>(sq, {}, quiet()), DomainError);
  CHECK_THROWS_AS(many_body_zeta<double>(sq, {3.0, std::nan(""), 3.0}, quiet()), DomainError);
  CHECK_THROWS_AS(table_square({0}, {3.0}, quiet()), DomainError);
}

}
