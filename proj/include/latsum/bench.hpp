#ifndef LATSUM_BENCH_HPP
#define LATSUM_BENCH_HPP

// Benchmark grids with their reference values. Each row is independent, so
// grids run in parallel over rows with single-threaded quadrature inside.

#include <string>
#include <vector>

#include "latsum/lattice.hpp"
#include "latsum/manybody.hpp"

namespace latsum {

/// min(|v - ref|, |v - ref| / |ref|); the absolute error when ref = 0.
double error_metric(double value, double reference);

struct BenchRow {
  std::string lattice;
  std::vector<double> nu;
  double value = 0;
  double reference = 0;
  double error = 0;
  bool ok = true;
  std::string failure;
};

struct BenchOptions {
  ManyBodyConfig cfg;
  int threads = 1;
  /// Keep every stride-th grid value per axis (1 = the full grid).
  int stride = 1;
  /// Number of 1/20 steps above the lower end of the three-body grids.
  int steps = 20;
};

std::vector<std::string> bench_names();

/// nu - d in (0, 10] step 1/10, forced integral path; reference 0.
std::vector<BenchRow> bench_one_body(const std::vector<LatticeName>& lattices, const BenchOptions& opt);
/// (nu, nu) with nu - d in (0, 10] step 1/10 against Z_{2 nu}(0).
std::vector<BenchRow> bench_two_body(const std::vector<LatticeName>& lattices, const BenchOptions& opt);
/// Sorted triples nu_i = 3 + j/20 on Z against the direct sum with L = 1000.
std::vector<BenchRow> bench_three_body_1d(const BenchOptions& opt);
/// Sorted triples nu_i = -2 + j/20 + 1/50, j = 0..100, against the series oracle.
std::vector<BenchRow> bench_meromorphic_1d(const BenchOptions& opt);
/// Sorted triples nu_i = 5 + j/20 against the direct sum with L = 60.
std::vector<BenchRow> bench_three_body_2d(const std::vector<LatticeName>& lattices, const BenchOptions& opt);
/// Hexagonal zeta^(4) on [12, 32] (L = 6) and zeta^(5) on [26, 46] (L = 3), step 1/5.
std::vector<BenchRow> bench_four_five_body(const BenchOptions& opt);

struct ScalingRow {
  int n = 0;
  double value = 0;
  double normalized = 0;
  double wall_time = 0;
};

/// zeta^(n)(nu, ..., nu) and zeta^(n) / Z_nu(0)^n for each n.
std::vector<ScalingRow> bench_n_scaling(LatticeName lattice, double nu, const std::vector<int>& ns,
                                        const BenchOptions& opt);

/// Least-squares line t = a + b n and its coefficient of determination.
struct LinearFit {
  double intercept = 0;
  double slope = 0;
  double r2 = 0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace latsum

#endif  // LATSUM_BENCH_HPP
