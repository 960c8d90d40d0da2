#ifndef LATSUM_MANYBODY_HPP
#define LATSUM_MANYBODY_HPP

#include <chrono>
#include <cmath>
#include <vector>

#include "latsum/epstein.hpp"
#include "latsum/lattice.hpp"
#include "latsum/quadrature.hpp"

namespace latsum {

struct ManyBodyConfig {
  QuadratureConfig quad;
  /// Use the Brillouin-zone integral also for n = 1, 2.
  bool force_integral = false;
  /// Rerun at epsilon/2 (split mode) or at gauss_order + 4 and rtol/100 (adaptive mode).
  bool error_estimate = true;
};

/// Default quadrature for the three ATM integrals: split radial mode with a
/// Taylor order high enough that the tail truncation is below rounding.
QuadratureConfig atm_default_config(int dim);

template <typename T>
struct ManyBodyResult {
  T value = 0;
  int n = 0;
  Lattice<T> lattice;
  std::vector<T> nu;
  ManyBodyConfig config;
  T error_estimate = 0;
  double wall_time = 0;
  std::size_t evaluations = 0;
  std::size_t tail_warnings = 0;
  bool integral_path = false;
};

template <typename T>
Vector<T> zero_vector(int d) {
  return Vector<T>::Zero(d);
}

/// zeta^(n)(nu) for the cycle interaction graph.
template <typename T>
ManyBodyResult<T> many_body_zeta(const Lattice<T>& lat, const std::vector<T>& nu, const ManyBodyConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (nu.empty()) throw DomainError("exponent vector must not be empty");
  for (T v : nu)
    if (!std::isfinite(v)) throw DomainError("exponents must be finite");
  ManyBodyResult<T> res{T(0), static_cast<int>(nu.size()), lat, nu, cfg};
  const int n = res.n;
  if (!cfg.force_integral && n == 1) {
    res.value = 0;
  } else if (!cfg.force_integral && n == 2) {
    EpsteinOptions eo;
    eo.lambda_scale = cfg.quad.lambda_scale;
    res.value = EpsteinZeta<T>(lat, nu[0] + nu[1], eo).value(zero_vector<T>(lat.dim()));
  } else {
    res.integral_path = true;
    ProductIntegrator<T> integ(lat, nu, cfg.quad);
    const auto main = integ.integrate();
    res.value = main.value;
    res.evaluations = main.evaluations;
    res.tail_warnings = main.tail_warnings;
    if (cfg.error_estimate) {
      if (integ.split()) {
        const auto half = integ.integrate(T(cfg.quad.epsilon) / T(2));
        res.error_estimate = std::abs(half.value - main.value);
        res.evaluations += half.evaluations;
      } else {
        QuadratureConfig q2 = cfg.quad;
        q2.gauss_order += 4;
        q2.adaptive_rel_tol /= 100;
        const auto alt = ProductIntegrator<T>(lat, nu, q2).integrate();
        res.error_estimate = std::abs(alt.value - main.value);
        res.evaluations += alt.evaluations;
      }
    }
  }
  res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

template <typename T>
struct AtmResult {
  T value = 0;
  T zeta_333 = 0;   // zeta(3,3,3)
  T zeta_m155 = 0;  // zeta(-1,5,5)
  T zeta_135 = 0;   // zeta(1,3,5)
  T error_estimate = 0;
  double wall_time = 0;
};

/// ATM recombination constant: E = zeta(3,3,3)/24 - 3/16 zeta(-1,5,5) + 3/8 zeta(1,3,5).
template <typename T>
T atm_combination(T z333, T zm155, T z135) {
  return z333 / T(24) - T(3) / T(16) * zm155 + T(3) / T(8) * z135;
}

template <typename T>
AtmResult<T> atm_cohesive_energy(const Lattice<T>& lat, const ManyBodyConfig& cfg) {
  if (lat.dim() > 3) throw DomainError("the ATM cohesive energy converges only for d <= 3");
  const auto t0 = std::chrono::steady_clock::now();
  ManyBodyConfig c = cfg;
  c.force_integral = true;
  AtmResult<T> r;
  const auto a = many_body_zeta<T>(lat, {T(3), T(3), T(3)}, c);
  const auto b = many_body_zeta<T>(lat, {T(-1), T(5), T(5)}, c);
  const auto e = many_body_zeta<T>(lat, {T(1), T(3), T(5)}, c);
  r.zeta_333 = a.value;
  r.zeta_m155 = b.value;
  r.zeta_135 = e.value;
  r.value = atm_combination(a.value, b.value, e.value);
  r.error_estimate = a.error_estimate / T(24) + T(3) / T(16) * b.error_estimate + T(3) / T(8) * e.error_estimate;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

template <typename T>
AtmResult<T> atm_cohesive_energy(const Lattice<T>& lat) {
  ManyBodyConfig cfg;
  cfg.quad = atm_default_config(lat.dim());
  return atm_cohesive_energy(lat, cfg);
}

/// zeta^(n)(nu,...,nu) / Z_nu(0)^n.
template <typename T>
T normalized_many_body(const Lattice<T>& lat, T nu, int n, const ManyBodyConfig& cfg) {
  if (!(nu > T(lat.dim()))) throw DomainError("normalization needs nu > d");
  if (n < 1) throw DomainError("body count must be positive");
  const auto z = many_body_zeta<T>(lat, std::vector<T>(static_cast<size_t>(n), nu), cfg);
  EpsteinOptions eo;
  eo.lambda_scale = cfg.quad.lambda_scale;
  const T z0 = EpsteinZeta<T>(lat, nu, eo).value(zero_vector<T>(lat.dim()));
  return z.value / std::pow(z0, T(n));
}

struct TableRow {
  int n;
  double nu;
  double value;
};

/// Many-body zeta values on the square lattice for every (n, nu) pair.
std::vector<TableRow> table_square(const std::vector<int>& n_list, const std::vector<double>& nu_list,
                                   const ManyBodyConfig& cfg);

}  // namespace latsum

#endif  // LATSUM_MANYBODY_HPP
