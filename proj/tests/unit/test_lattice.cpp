#include <doctest.h>

#include <cmath>

#include "latsum/lattice.hpp"

using namespace latsum;

namespace {

double brute_nearest(const Lattice<double>& lat, int reach) {
  const int d = lat.dim();
  double best = 1e300;
  const int side = 2 * reach + 1;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= side;
  for (int code = 0; code < total; ++code) {
    Vector<double> n(d);
    int c = code;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      n(i) = c % side - reach;
      c /= side;
      zero = zero && n(i) == 0;
    }
    if (!zero) best = std::min(best, (lat.generator() * n).norm());
  }
  return best;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("catalog volumes") {
  CHECK(named_lattice<double>(LatticeName::integer_1d).volume() == doctest::Approx(1.0));
  CHECK(named_lattice<double>(LatticeName::square).volume() == doctest::Approx(1.0));
  CHECK(named_lattice<double>(LatticeName::hexagonal).volume() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(named_lattice<double>(LatticeName::fcc).volume() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(named_lattice<double>(LatticeName::bcc).volume() == doctest::Approx(4 / (3 * std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("fcc and bcc have unit nearest-neighbour distance") {
  for (auto name : {LatticeName::fcc, LatticeName::bcc, LatticeName::hexagonal, LatticeName::square}) {
    const auto lat = named_lattice<double>(name);
    CHECK(brute_nearest(lat, 3) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lat.shortest_vector() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("shortest vector of a skewed basis") {
  Matrix<double> a(2, 2);
  a << 1, 7.3, 0, 0.9;
  const Lattice<double> lat(a);
  CHECK(lat.shortest_vector() == doctest::Approx(brute_nearest(lat, 12)).epsilon(1e-14));
}

TEST_CASE("reciprocal lattice") {
  const auto lat = named_lattice<double>(LatticeName::hexagonal);
  const auto rec = lat.reciprocal();
  CHECK(rec.volume() * lat.volume() == doctest::Approx(1.0).epsilon(1e-15));
  const Matrix<double> prod = lat.generator().transpose() * rec.generator();
  CHECK((prod - Matrix<double>::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  const auto back = rec.reciprocal();
  CHECK((back.generator() - lat.generator()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("scaling multiplies volume by s^d") {
  for (auto name : {LatticeName::integer_1d, LatticeName::hexagonal, LatticeName::bcc}) {
    const auto lat = named_lattice<double>(name);
    const double s = 1.7;
    CHECK(lat.scaled(s).volume() == doctest::Approx(lat.volume() * std::pow(s, lat.dim())).epsilon(1e-14));
    CHECK(named_lattice<double>(name, s).shortest_vector() == doctest::Approx(s * lat.shortest_vector()).epsilon(1e-14));
  }
}

TEST_CASE("Brillouin zone") {
  const auto lat = named_lattice<double>(LatticeName::fcc);
  const BrillouinZone<double> bz(lat);
  CHECK(bz.volume() == doctest::Approx(1 / lat.volume()));
  Vector<double> k(3);
  k << 3.1, -2.4, 0.7;
  const Vector<double> r = bz.reduce(k);
  CHECK(bz.contains(r));
  const Vector<double> c = lat.generator().transpose() * (k - r);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(c(i) - std::round(c(i))) < 1e-13);
  Vector<double> inside = Vector<double>::Zero(3);
  inside(0) = 0.1;
  CHECK((bz.reduce(inside) - inside).norm() == 0.0);
  CHECK(bz.max_radius() > 0.5);
}

TEST_CASE("lattice spec parsing") {
  CHECK(parse_lattice_name("Z") == LatticeName::integer_1d);
  CHECK(parse_lattice_name("sq") == LatticeName::square);
  CHECK(parse_lattice_name("hex") == LatticeName::hexagonal);
  CHECK(parse_lattice_name("fcc") == LatticeName::fcc);
  CHECK(parse_lattice_name("bcc") == LatticeName::bcc);
  CHECK_THROWS_AS(parse_lattice_name("cubic"), InvalidLattice);

  const auto spec = parse_lattice_spec("d=2;A=1,0.5;0,0.8660254037844386");
  CHECK_FALSE(spec.named);
  const auto lat = spec.build<double>();
  CHECK(lat.volume() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  const auto again = parse_lattice_spec(spec.to_string()).build<double>();
  CHECK((again.generator() - lat.generator()).cwiseAbs().maxCoeff() == 0.0);

  const auto named = parse_lattice_spec("bcc", 2.0L);
  CHECK(named.build<double>().shortest_vector() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(parse_lattice_spec(named.to_string()).build<double>().volume() == doctest::Approx(named.build<double>().volume()));
}

TEST_CASE("invalid lattices") {
  Matrix<double> sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK_THROWS_AS(Lattice<double>{sing}, InvalidLattice);
  Matrix<double> nonsq(2, 3);
  nonsq.setOnes();
  CHECK_THROWS_AS(Lattice<double>{nonsq}, InvalidLattice);
  Matrix<double> bad(1, 1);
  bad << std::nan("");
  CHECK_THROWS_AS(Lattice<double>{bad}, InvalidLattice);
  CHECK_THROWS_AS(named_lattice<double>(LatticeName::square, -1.0), InvalidLattice);
  CHECK_THROWS_AS(parse_lattice_spec("d=2;A=1,0;0"), InvalidLattice);
}

}
