#ifndef LATSUM_PHASE_HPP
#define LATSUM_PHASE_HPP

// Lennard-Jones(n, m) plus lambda * ATM enthalpies of fcc and bcc in reduced
// units (dissociation energy and equilibrium distance equal to 1).

#include <optional>
#include <string>
#include <vector>

#include "latsum/lattice.hpp"
#include "latsum/manybody.hpp"

namespace latsum {

struct LJParams {
  double n = 12;
  double m = 6;

  /// Requires n > m > d so both lattice sums converge.
  void validate(int dim) const;
};

/// Pair potential (m r^{-n} - n r^{-m}) / (n - m), minimum -1 at r = 1.
double lj_potential(const LJParams& lj, double r);

/// Per-lattice constants of the enthalpy. K is the ATM recombination constant.
struct LatticeEnergetics {
  Lattice<double> lattice;
  LJParams lj;
  double z_n = 0;
  double z_m = 0;
  double k_atm = 0;
  double v_unit = 0;
};

/// Computes Z_n(0), Z_m(0) and, unless skip_atm, the ATM constant.
LatticeEnergetics lattice_energetics(const Lattice<double>& unit, const LJParams& lj, const ManyBodyConfig& atm_cfg,
                                     bool skip_atm = false);
LatticeEnergetics lattice_energetics(const Lattice<double>& unit, const LJParams& lj, bool skip_atm = false);

/// Same constants with a known ATM value.
LatticeEnergetics lattice_energetics_with_k(const Lattice<double>& unit, const LJParams& lj, double k_atm);

double lj_cohesive(const LatticeEnergetics& e, double R);
double lj_cohesive(const Lattice<double>& unit, const LJParams& lj, double R);

double total_enthalpy(const LatticeEnergetics& e, double lambda, double p, double R);

struct ScaleOptimum {
  double R = 0;
  double H = 0;
};

inline constexpr double kScaleMin = 0.5;
inline constexpr double kScaleMax = 3.0;

/// Global minimum of H over R in [0.5, 3]: best of 200 grid points, then
/// golden section. Throws NoInteriorMinimum when the minimizer sits at the
/// bracket boundary.
ScaleOptimum optimize_scale(const LatticeEnergetics& e, double lambda, double p);

enum class Phase { fcc, bcc };
std::string to_string(Phase p);

struct PhasePoint {
  double p = 0;
  double lambda = 0;
  Phase winner = Phase::fcc;
  double R_fcc = 0;
  double R_bcc = 0;
  double H_fcc = 0;
  double H_bcc = 0;
  bool ok = true;
  std::string error;
};

struct BoundaryPoint {
  double p = 0;
  std::optional<double> lambda_crit;  // empty when no fcc -> bcc change in the lambda grid
};

inline constexpr double kLambdaCritTol = 1e-6;

class PhaseScanner {
public:
  PhaseScanner(LatticeEnergetics fcc, LatticeEnergetics bcc);

  PhasePoint evaluate(double p, double lambda) const;

  /// Points ordered by p, then lambda. Failed points are flagged, not thrown.
  std::vector<PhasePoint> scan(const std::vector<double>& p_grid, const std::vector<double>& lambda_grid,
                               int threads = 1) const;

  /// First fcc -> bcc change along the lambda grid, refined by bisection.
  std::optional<double> lambda_crit(double p, const std::vector<double>& lambda_grid) const;

  std::vector<BoundaryPoint> boundary(const std::vector<double>& p_grid, const std::vector<double>& lambda_grid,
                                      int threads = 1) const;

  const LatticeEnergetics& fcc() const { return fcc_; }
  const LatticeEnergetics& bcc() const { return bcc_; }

private:
  double gap(double p, double lambda) const;  // H_fcc - H_bcc

  LatticeEnergetics fcc_, bcc_;
};

/// "a:b:step" or "x1,x2,...". Ranges include b up to rounding.
std::vector<double> parse_grid(const std::string& text);

}  // namespace latsum

#endif  // LATSUM_PHASE_HPP
