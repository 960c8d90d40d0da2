#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "latsum/epstein.hpp"
#include "latsum/oracle.hpp"

using namespace latsum;
using testing::vec;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE("epstein") {

TEST_CASE("one-dimensional values at k = 0 are 2 zeta(nu)") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  for (double nu : {1.5, 2.0, 3.0, 4.25, 7.0, 12.0}) {
    const double v = EpsteinZeta<double>(z, nu).value(vec({0.0}));
    CHECK(testing::rel_err(v, 2 * boost::math::zeta(nu)) < 1e-14);
  }
}

TEST_CASE("nu = 2 in one dimension is a quadratic polynomial in k") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  const EpsteinZeta<double> e(z, 2.0);
  for (double k : {0.03, 0.2, 0.37, 0.5}) {
    const double exact = pi * pi / 3 - 2 * pi * pi * k + 2 * pi * pi * k * k;
    CHECK(e.value(vec({k})) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(e.regular(vec({k})) == doctest::Approx(pi * pi / 3 + 2 * pi * pi * k * k).epsilon(1e-14));
    CHECK(e.singular(vec({k})) == doctest::Approx(-2 * pi * pi * k).epsilon(1e-14));
  }
}

TEST_CASE("evenness and reciprocal periodicity") {
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  const EpsteinZeta<double> e(hex, 3.3);
  const auto k = vec({0.21, -0.13});
  const double v = e.value(k);
  CHECK(e.value(Vector<double>(-k)) == doctest::Approx(v).epsilon(1e-14));
  const auto g = hex.reciprocal().generator();
  const Vector<double> shifted = k + g.col(0) * 2.0 - g.col(1);
  CHECK(e.value(shifted) == doctest::Approx(v).epsilon(1e-13));
}

TEST_CASE("square lattice against the direct sum") {
  const auto sq = named_lattice<double>(LatticeName::square);
  const EpsteinZeta<double> e(sq, 10.0);
  for (auto k : {vec({0.0, 0.0}), vec({0.1, 0.2}), vec({0.5, 0.5}), vec({0.31, -0.07})})
    CHECK(testing::rel_err(e.value(k), testing::direct_epstein(sq, 10.0, k, 40)) < 1e-12);
}

TEST_CASE("fcc against the direct sum") {
  const auto fcc = named_lattice<double>(LatticeName::fcc);
  const EpsteinZeta<double> e(fcc, 14.0);
  for (auto k : {vec({0.0, 0.0, 0.0}), vec({0.2, 0.1, -0.3})})
    CHECK(testing::rel_err(e.value(k), testing::direct_epstein(fcc, 14.0, k, 12)) < 1e-12);
}

TEST_CASE("value splits into regular plus singular over the volume") {
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  for (double nu : {0.7, 2.6, 4.0, 5.5}) {
    const EpsteinZeta<double> e(hex, nu);
    const auto k = vec({0.05, 0.04});
    CHECK(e.value(k) == doctest::Approx(e.regular(k) + e.singular(k) / hex.volume()).epsilon(1e-13));
  }
}

TEST_CASE("logarithmic branch") {
  const auto sq = named_lattice<double>(LatticeName::square);
  const EpsteinZeta<double> e(sq, 2.0);
  CHECK(e.params().branch == EpsteinBranch::log_case);
  CHECK(e.params().log_index == 0);
  const auto k = vec({0.1, 0.05});
  const double r2 = k.squaredNorm();
  CHECK(e.singular(k) == doctest::Approx(-pi * std::log(pi * r2)).epsilon(1e-14));
  CHECK_THROWS_AS(e.value(vec({0.0, 0.0})), PoleError);

  const auto fcc = named_lattice<double>(LatticeName::fcc);
  const EpsteinZeta<double> e5(fcc, 5.0 + 1e-13);
  CHECK(e5.params().log_index == 1);
  CHECK(e5.nu() == 5.0);
  const auto k3 = vec({0.05, 0.0, 0.02});
  CHECK(e5.value(k3) == doctest::Approx(e5.regular(k3) + e5.singular(k3) / fcc.volume()).epsilon(1e-13));
}

TEST_CASE("singular part vanishes for nu = d - 2m") {
  const auto sq = named_lattice<double>(LatticeName::square);
  for (double nu : {0.0, -2.0, -4.0}) {
    const EpsteinZeta<double> e(sq, nu);
    CHECK(e.singular(vec({0.2, 0.1})) == 0.0);
  }
  CHECK(EpsteinZeta<double>(sq, 0.0).value(vec({0.0, 0.0})) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("regular part is smooth where the singular part is not") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  const EpsteinZeta<double> e(z, 0.5);
  const double r0 = e.regular(vec({0.0}));
  CHECK(r0 == doctest::Approx(2 * boost::math::zeta(0.5)).epsilon(1e-13));
  for (double k : {1e-8, 1e-6, 1e-4})
    CHECK(std::abs(e.regular(vec({k})) - r0) < 200 * k * k);
}

TEST_CASE("one-dimensional series oracle") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  for (double nu : {-0.7, 0.5, 2.5, 4.2, 6.0}) {
    const EpsteinZeta<double> e(z, nu);
    const SeriesOracle1D<double> s(nu, 10);
    for (double k : {0.01, 0.05, 0.1}) CHECK(std::abs(e.value(vec({k})) - s.value(k)) < 1e-10 * std::max(1.0, std::abs(s.value(k))));
  }
  CHECK_THROWS_AS(SeriesOracle1D<double>(3.0), DomainError);
}

TEST_CASE("Taylor derivatives in one dimension") {
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  const EpsteinZeta<double> e(z, 4.0);
  const auto t = e.taylor(12);
  MultiIndex a{};
  CHECK(t.derivative(a) == doctest::Approx(2 * boost::math::zeta(4.0)).epsilon(1e-14));
  a[0] = 2;
  CHECK(t.derivative(a) == doctest::Approx(-4 * pi * pi * 2 * boost::math::zeta(2.0)).epsilon(1e-13));
  a[0] = 3;
  CHECK(t.derivative(a) == 0.0);
  a[0] = 4;
  CHECK(t.derivative(a) == doctest::Approx(-std::pow(2 * pi, 4)).epsilon(1e-12));
  a[0] = 6;
  CHECK(std::abs(t.derivative(a)) < 1e-9 * std::pow(2 * pi, 6));
  a[0] = 14;
  CHECK_THROWS_AS(t.derivative(a), OrderExceeded);
  CHECK_THROWS_AS(reg_zeta_derivatives(e, 14), OrderExceeded);
}

TEST_CASE("Taylor derivatives respect square symmetry") {
  const auto sq = named_lattice<double>(LatticeName::square);
  const auto t = EpsteinZeta<double>(sq, 5.0).taylor(8);
  std::vector<double> scale(9, 0.0);
  for (size_t i = 0; i < t.indices.size(); ++i) {
    const int k = t.indices[i][0] + t.indices[i][1];
    scale[static_cast<size_t>(k)] = std::max(scale[static_cast<size_t>(k)], std::abs(t.derivs[i]));
  }
  for (size_t i = 0; i < t.indices.size(); ++i) {
    MultiIndex a = t.indices[i];
    MultiIndex b = a;
    std::swap(b[0], b[1]);
    const double tol = 1e-12 * scale[static_cast<size_t>(a[0] + a[1])];
    CHECK(std::abs(t.derivative(b) - t.derivative(a)) <= tol);
    if ((a[0] + a[1]) % 2) CHECK(t.derivs[i] == 0.0);
    if (a[0] % 2 || a[1] % 2) CHECK(std::abs(t.derivs[i]) <= tol);
  }
}

TEST_CASE("directional Taylor series reproduces the regular part") {
  for (auto [name, nu] : {std::pair{LatticeName::square, 5.0}, std::pair{LatticeName::hexagonal, 1.3},
                          std::pair{LatticeName::fcc, 4.5}, std::pair{LatticeName::bcc, 3.0}}) {
    const auto lat = named_lattice<double>(name);
    const EpsteinZeta<double> e(lat, nu);
    const auto t = e.taylor(12);
    Vector<double> w(lat.dim());
    for (int i = 0; i < lat.dim(); ++i) w(i) = 0.3 + 0.7 * i;
    w /= w.norm();
    CHECK(directional_taylor_coeff(t, w, 0) == doctest::Approx(e.regular(Vector<double>::Zero(lat.dim()))).epsilon(1e-14));
    for (double u : {0.02, 0.05}) {
      double s = 0;
      for (int k = 0; k <= 6; ++k) s += directional_taylor_coeff(t, w, k) * std::pow(u, 2 * k);
      CHECK(testing::rel_err(s, e.regular(Vector<double>(u * w))) < 1e-12);
    }
    CHECK(directional_taylor_coeff(t, Vector<double>(Vector<double>::Zero(lat.dim())), 2) == 0.0);
    CHECK_THROWS_AS(directional_taylor_coeff(t, w, 7), OrderExceeded);
  }
}

TEST_CASE("long double agrees with double") {
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  const auto hexl = named_lattice<long double>(LatticeName::hexagonal);
  const double v = EpsteinZeta<double>(hex, 3.7).value(vec({0.1, 0.2}));
  const long double vl = EpsteinZeta<long double>(hexl, 3.7L).value(vec<long double>({0.1L, 0.2L}));
  CHECK(testing::rel_err(v, static_cast<double>(vl)) < 1e-14);
}

TEST_CASE("pole and domain errors") {
  const auto fcc = named_lattice<double>(LatticeName::fcc);
  CHECK_THROWS_AS(EpsteinZeta<double>(fcc, 3.0 + 1e-11).value(Vector<double>::Zero(3)), PoleError);
  CHECK_THROWS_AS(EpsteinZeta<double>(fcc, 3.0 + 1e-11).regular(vec({0.1, 0.0, 0.0})), PoleError);
  CHECK_THROWS_AS(EpsteinParams<double>(fcc, std::nan("")), DomainError);
  const EpsteinZeta<double> e(fcc, 4.0);
  CHECK_THROWS_AS(e.value(vec({0.1, 0.2})), DomainError);
  CHECK_THROWS_AS(e.regular(vec({5.0, 0.0, 0.0})), DomainError);
}

}
