#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "latsum/gauss_rules.hpp"
#include "latsum/phase.hpp"

using namespace latsum;

namespace {

// ATM constants of the unit fcc and bcc lattices as produced by the library.
constexpr double kFcc = 19.18293107188866;
constexpr double kBcc = 14.780625583512077;

PhaseScanner scanner(const LJParams& lj) {
  return PhaseScanner(lattice_energetics_with_k(named_lattice<double>(LatticeName::fcc), lj, kFcc),
                      lattice_energetics_with_k(named_lattice<double>(LatticeName::bcc), lj, kBcc));
}

/// (1/2) sum U(R|x|) with a smoothstep taper on [a, b] and the continuum
/// integral of the tapered-off attractive part.
double pair_sum(const Lattice<double>& unit, const LJParams& lj, double R, double a, double b) {
  const int reach = static_cast<int>(std::ceil(b / 0.5)) + 2;
  auto taper = [&](double r) {
    const double t = (r - a) / (b - a);
    return t * t * (3 - 2 * t);
  };
  long double s = 0;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j)
      for (int k = -reach; k <= reach; ++k) {
        if (!i && !j && !k) continue;
        const double r = (unit.generator() * testing::vec({double(i), double(j), double(k)})).norm();
        if (r >= b) continue;
        const double w = r <= a ? 1.0 : 1.0 - taper(r);
        s += w * 0.5 * lj_potential(lj, R * r);
      }
  const auto g = gauss_legendre<double>(40, a, b);
  double ramp = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) ramp += g.weights[i] * taper(g.nodes[i]) * std::pow(g.nodes[i], 2 - lj.m);
  const double outer = std::pow(b, 3 - lj.m) / (lj.m - 3);
  const double c = 0.5 * (-lj.n / (lj.n - lj.m)) * std::pow(R, -lj.m);
  return static_cast<double>(s) + c * 4 * M_PI / unit.volume() * (ramp + outer);
}

}  // namespace

TEST_SUITE("phase") {

TEST_CASE("pair potential") {
  const LJParams lj;
  CHECK(lj_potential(lj, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(lj_potential(lj, std::pow(0.5, 1.0 / 6)) == doctest::Approx(0.0).epsilon(1e-15));
  const double h = 1e-6;
  CHECK(std::abs(lj_potential(lj, 1 + h) - lj_potential(lj, 1 - h)) < 1e-9);
  CHECK_THROWS_AS(LJParams({6, 12}).validate(3), DomainError);
  CHECK_THROWS_AS(LJParams({12, 3}).validate(3), DomainError);
}

TEST_CASE("lattice LJ energy against a pair sum") {
  const LJParams lj;
  for (auto name : {LatticeName::fcc, LatticeName::bcc}) {
    const auto unit = named_lattice<double>(name);
    const auto e = lattice_energetics(unit, lj, true);
    for (double R : {0.95, 1.1}) {
      const double ref = pair_sum(unit, lj, R, 30.0, 40.0);
      CHECK(std::abs(lj_cohesive(e, R) - ref) < 1e-10 * std::abs(ref));
      // Using Z_n in both numerators is far off.
      const double wrong = lj.n * lj.m / (2 * (lj.n - lj.m)) * e.z_n * (std::pow(R, -lj.n) / lj.n - std::pow(R, -lj.m) / lj.m);
      CHECK(std::abs(wrong - ref) > 1e-2 * std::abs(ref));
    }
  }
}

TEST_CASE("LJ energy asymptotics") {
  const LJParams lj;
  const auto e = lattice_energetics(named_lattice<double>(LatticeName::fcc), lj, true);
  const double R = 50;
  const double lead = -lj.n * e.z_m / (2 * (lj.n - lj.m)) * std::pow(R, -lj.m);
  CHECK(lj_cohesive(e, R) == doctest::Approx(lead).epsilon(1e-9));
  CHECK(lj_cohesive(e, 0.8) > 0);
}

TEST_CASE("closed-form optimum without pressure and three-body term") {
  for (LJParams lj : {LJParams{12, 6}, LJParams{8, 4}}) {
    for (auto name : {LatticeName::fcc, LatticeName::bcc}) {
      const auto e = lattice_energetics(named_lattice<double>(name), lj, true);
      const auto opt = optimize_scale(e, 0, 0);
      CHECK(opt.R == doctest::Approx(std::pow(e.z_n / e.z_m, 1 / (lj.n - lj.m))).epsilon(1e-10));
      CHECK(opt.H == doctest::Approx(lj_cohesive(e, opt.R)).epsilon(1e-15));
      const double h = 1e-8;
      CHECK(total_enthalpy(e, 0, 0, opt.R + h) >= opt.H);
      CHECK(total_enthalpy(e, 0, 0, opt.R - h) >= opt.H);
    }
  }
}

TEST_CASE("enthalpy identities") {
  const auto s = scanner(LJParams{});
  const auto& f = s.fcc();
  CHECK(total_enthalpy(f, 0, 0, 1.02) == lj_cohesive(f, 1.02));
  const double R = 0.97, h = 1e-4;
  const double dHdp = (total_enthalpy(f, 0.3, 1 + h, R) - total_enthalpy(f, 0.3, 1 - h, R)) / (2 * h);
  CHECK(dHdp == doctest::Approx(std::pow(R, 3) * f.v_unit).epsilon(1e-9));
  CHECK(total_enthalpy(f, 1, 0, R) - total_enthalpy(f, 0, 0, R) == doctest::Approx(kFcc * std::pow(R, -9)).epsilon(1e-12));
  // Envelope: dH*/dp is the volume at the optimum.
  const auto o = optimize_scale(f, 0.3, 1.0);
  const double d = (optimize_scale(f, 0.3, 1.0 + h).H - optimize_scale(f, 0.3, 1.0 - h).H) / (2 * h);
  CHECK(d == doctest::Approx(std::pow(o.R, 3) * f.v_unit).epsilon(1e-6));
  CHECK_THROWS_AS(total_enthalpy(f, -1, 0, 1), DomainError);
  CHECK_THROWS_AS(total_enthalpy(f, 0, 0, 0), DomainError);
}

TEST_CASE("optimum moves with pressure and three-body strength") {
  const auto s = scanner(LJParams{});
  double prevR = 1e9;
  for (double p : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const double R = optimize_scale(s.fcc(), 0.2, p).R;
    CHECK(R < prevR);
    prevR = R;
  }
  double prevH = -1e9;
  for (double lam : {0.0, 0.2, 0.4, 0.8}) {
    const double H = optimize_scale(s.bcc(), lam, 0.5).H;
    CHECK(H > prevH);
    prevH = H;
  }
  CHECK_THROWS_AS(optimize_scale(s.fcc(), 0, 1e7), NoInteriorMinimum);
}

TEST_CASE("integer lattice ATM constant") {
  const auto e = lattice_energetics(named_lattice<double>(LatticeName::integer_1d), LJParams{12, 6}, false);
  CHECK(e.k_atm == doctest::Approx(-0.2723018495076887).epsilon(1e-12));
}

TEST_CASE("phase diagram properties") {
  const auto s126 = scanner(LJParams{12, 6});
  const auto p_grid = parse_grid("0:2:0.5");
  for (const auto& pt : s126.scan(p_grid, {0.0}, 2)) {
    CHECK(pt.ok);
    CHECK(pt.winner == Phase::fcc);
  }
  const auto lc = s126.lambda_crit(0, parse_grid("0:2:0.05"));
  REQUIRE(lc.has_value());
  CHECK(s126.evaluate(0, *lc - 1e-3).winner == Phase::fcc);
  CHECK(s126.evaluate(0, *lc + 1e-3).winner == Phase::bcc);
  CHECK(s126.evaluate(0, 1.9).winner == Phase::bcc);

  const auto s84 = scanner(LJParams{8, 4});
  auto spread = [&](const PhaseScanner& s) {
    const auto b = s.boundary(p_grid, parse_grid("0:3:0.05"));
    double lo = 1e9, hi = -1e9;
    for (const auto& bp : b) {
      REQUIRE(bp.lambda_crit.has_value());
      lo = std::min(lo, *bp.lambda_crit);
      hi = std::max(hi, *bp.lambda_crit);
    }
    return (hi - lo) / lo;
  };
  CHECK(spread(s84) < spread(s126));
}

TEST_CASE("scan ordering and failure flags") {
  const auto s = scanner(LJParams{});
  const auto pts = s.scan({0.0, 1e7}, {0.0, 0.5}, 1);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].p == 0.0);
  CHECK(pts[1].lambda == 0.5);
  CHECK(pts[0].ok);
  CHECK_FALSE(pts[2].ok);
  CHECK_FALSE(pts[2].error.empty());
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0:1:0.25");
  REQUIRE(g.size() == 5);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(parse_grid("0.5,2,3").size() == 3);
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), DomainError);
  CHECK_THROWS_AS(parse_grid("a,b"), DomainError);
  CHECK_THROWS_AS(parse_grid(""), DomainError);
}

}
