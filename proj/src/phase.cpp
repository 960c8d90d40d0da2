#include "latsum/phase.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <utility>

#include "latsum/parallel.hpp"

namespace latsum {

void LJParams::validate(int dim) const {
  if (!std::isfinite(n) || !std::isfinite(m)) throw DomainError("LJ exponents must be finite");
  if (!(n > m)) throw DomainError("LJ exponents need n > m");
  if (!(m > dim)) throw DomainError("LJ attractive exponent must exceed the dimension");
}

double lj_potential(const LJParams& lj, double r) {
  return (lj.m * std::pow(r, -lj.n) - lj.n * std::pow(r, -lj.m)) / (lj.n - lj.m);
}

LatticeEnergetics lattice_energetics_with_k(const Lattice<double>& unit, const LJParams& lj, double k_atm) {
  lj.validate(unit.dim());
  LatticeEnergetics e{unit, lj};
  const Vector<double> zero = Vector<double>::Zero(unit.dim());
  e.z_n = EpsteinZeta<double>(unit, lj.n).value(zero);
  e.z_m = EpsteinZeta<double>(unit, lj.m).value(zero);
  e.k_atm = k_atm;
  e.v_unit = unit.volume();
  return e;
}

LatticeEnergetics lattice_energetics(const Lattice<double>& unit, const LJParams& lj, const ManyBodyConfig& atm_cfg,
                                     bool skip_atm) {
  lj.validate(unit.dim());
  const double k = skip_atm ? 0.0 : atm_cohesive_energy<double>(unit, atm_cfg).value;
  return lattice_energetics_with_k(unit, lj, k);
}

LatticeEnergetics lattice_energetics(const Lattice<double>& unit, const LJParams& lj, bool skip_atm) {
  ManyBodyConfig cfg;
  cfg.quad = atm_default_config(unit.dim());
  cfg.error_estimate = false;
  return lattice_energetics(unit, lj, cfg, skip_atm);
}

double lj_cohesive(const LatticeEnergetics& e, double R) {
  if (!(R > 0)) throw DomainError("scale R must be positive");
  const double n = e.lj.n, m = e.lj.m;
  return n * m / (2 * (n - m)) * (e.z_n / (n * std::pow(R, n)) - e.z_m / (m * std::pow(R, m)));
}

double lj_cohesive(const Lattice<double>& unit, const LJParams& lj, double R) {
  return lj_cohesive(lattice_energetics_with_k(unit, lj, 0.0), R);
}

double total_enthalpy(const LatticeEnergetics& e, double lambda, double p, double R) {
  if (!(R > 0)) throw DomainError("scale R must be positive");
  if (lambda < 0 || p < 0) throw DomainError("lambda and p must be nonnegative");
  const int d = e.lattice.dim();
  return lj_cohesive(e, R) + lambda * e.k_atm / std::pow(R, 9) + p * std::pow(R, d) * e.v_unit;
}

namespace {

std::pair<double, double> enthalpy_derivatives(const LatticeEnergetics& e, double lambda, double p, double R) {
  const double n = e.lj.n, m = e.lj.m, c = n * m / (2 * (n - m));
  const int d = e.lattice.dim();
  const double d1 = c * (-e.z_n * std::pow(R, -n - 1) + e.z_m * std::pow(R, -m - 1)) - 9 * lambda * e.k_atm * std::pow(R, -10) +
                    p * d * std::pow(R, d - 1) * e.v_unit;
  const double d2 = c * ((n + 1) * e.z_n * std::pow(R, -n - 2) - (m + 1) * e.z_m * std::pow(R, -m - 2)) +
                    90 * lambda * e.k_atm * std::pow(R, -11) + p * d * (d - 1) * std::pow(R, d - 2) * e.v_unit;
  return {d1, d2};
}

}  // namespace

ScaleOptimum optimize_scale(const LatticeEnergetics& e, double lambda, double p) {
  constexpr int kGrid = 200;
  const double h = (kScaleMax - kScaleMin) / (kGrid - 1);
  auto H = [&](double R) { return total_enthalpy(e, lambda, p, R); };
  int best = 0;
  double hbest = H(kScaleMin);
  for (int i = 1; i < kGrid; ++i) {
    const double v = H(kScaleMin + i * h);
    if (v < hbest) {
      hbest = v;
      best = i;
    }
  }
  if (best == 0 || best == kGrid - 1)
    throw NoInteriorMinimum("enthalpy minimum lies on the boundary of R in [0.5, 3]");
  double a = kScaleMin + (best - 1) * h, b = kScaleMin + (best + 1) * h;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = H(x1), f2 = H(x2);
  for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = H(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = H(x2);
    }
  }
  ScaleOptimum r;
  r.R = f1 < f2 ? x1 : x2;
  r.H = std::min(f1, f2);
  if (hbest < r.H) {
    r.R = kScaleMin + best * h;
    r.H = hbest;
  }
  // H is flat at the minimum, so golden section only pins R to ~1e-8.
  // Newton on dH/dR recovers the last digits.
  const double lo = kScaleMin + (best - 1) * h, hi = kScaleMin + (best + 1) * h;
  double R = r.R;
  for (int it = 0; it < 8; ++it) {
    const auto [d1, d2] = enthalpy_derivatives(e, lambda, p, R);
    if (!(d2 > 0)) break;
    const double next = R - d1 / d2;
    if (!(next > lo && next < hi)) break;
    const bool done = std::abs(next - R) <= 1e-16 * R;
    R = next;
    if (done) break;
  }
  const double hR = H(R);
  if (hR <= r.H + 4 * std::numeric_limits<double>::epsilon() * std::abs(r.H)) {
    r.R = R;
    r.H = hR;
  }
  return r;
}

std::string to_string(Phase p) { return p == Phase::fcc ? "fcc" : "bcc"; }

PhaseScanner::PhaseScanner(LatticeEnergetics fcc, LatticeEnergetics bcc) : fcc_(std::move(fcc)), bcc_(std::move(bcc)) {}

PhasePoint PhaseScanner::evaluate(double p, double lambda) const {
  PhasePoint pt;
  pt.p = p;
  pt.lambda = lambda;
  const auto f = optimize_scale(fcc_, lambda, p);
  const auto b = optimize_scale(bcc_, lambda, p);
  pt.R_fcc = f.R;
  pt.H_fcc = f.H;
  pt.R_bcc = b.R;
  pt.H_bcc = b.H;
  pt.winner = f.H <= b.H ? Phase::fcc : Phase::bcc;
  return pt;
}

std::vector<PhasePoint> PhaseScanner::scan(const std::vector<double>& p_grid, const std::vector<double>& lambda_grid,
                                           int threads) const {
  const std::size_t nl = lambda_grid.size();
  std::vector<PhasePoint> out(p_grid.size() * nl);
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const double p = p_grid[i / nl], lambda = lambda_grid[i % nl];
    try {
      out[i] = evaluate(p, lambda);
    } catch (const Error& e) {
      PhasePoint pt;
      pt.p = p;
      pt.lambda = lambda;
      pt.ok = false;
      pt.error = e.what();
      out[i] = pt;
    }
  });
  return out;
}

double PhaseScanner::gap(double p, double lambda) const {
  return optimize_scale(fcc_, lambda, p).H - optimize_scale(bcc_, lambda, p).H;
}

std::optional<double> PhaseScanner::lambda_crit(double p, const std::vector<double>& lambda_grid) const {
  if (lambda_grid.empty()) return std::nullopt;
  double lo = lambda_grid[0], glo = gap(p, lo);
  for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
    double hi = lambda_grid[i];
    const double ghi = gap(p, hi);
    if (glo <= 0 && ghi > 0) {
      while (hi - lo > kLambdaCritTol) {
        const double mid = (lo + hi) / 2;
        if (gap(p, mid) > 0)
          hi = mid;
        else
          lo = mid;
      }
      return (lo + hi) / 2;
    }
    lo = hi;
    glo = ghi;
  }
  return std::nullopt;
}

std::vector<BoundaryPoint> PhaseScanner::boundary(const std::vector<double>& p_grid,
                                                  const std::vector<double>& lambda_grid, int threads) const {
  std::vector<BoundaryPoint> out(p_grid.size());
  parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = {p_grid[i], lambda_crit(p_grid[i], lambda_grid)}; });
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  auto num = [&](const std::string& s) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x))
      throw DomainError("bad number '" + s + "' in grid '" + text + "'");
    return x;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("range grid must be a:b:step");
    const double a = num(parts[0]), b = num(parts[1]), step = num(parts[2]);
    if (!(step > 0) || b < a) throw DomainError("range grid needs step > 0 and b >= a");
    const long count = std::lround(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(num(item));
  if (out.empty()) throw DomainError("empty grid");
  return out;
}

}  // namespace latsum
