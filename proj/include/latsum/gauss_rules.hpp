#ifndef LATSUM_GAUSS_RULES_HPP
#define LATSUM_GAUSS_RULES_HPP

#include <cmath>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/special_functions.hpp"

namespace latsum {

template <typename T>
struct QuadratureRule {
  std::vector<T> nodes;
  std::vector<T> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; nodes ascending.
template <typename T>
QuadratureRule<T> gauss_legendre(int n, T a = T(-1), T b = T(1)) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  QuadratureRule<T> r;
  r.nodes.resize(static_cast<size_t>(n));
  r.weights.resize(static_cast<size_t>(n));
  const T half = (b - a) / T(2), mid = (a + b) / T(2);
  for (int i = 0; i < n; ++i) {
    // Newton iteration in long double from the Tricomi initial guess.
    long double x = std::cos(pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-21L) break;
    }
    {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const long double w = 2 / ((1 - x * x) * dp * dp);
    const size_t j = static_cast<size_t>(n - 1 - i);
    r.nodes[j] = mid + half * T(x);
    r.weights[j] = half * T(w);
  }
  return r;
}

/// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK qk15 constants).
template <typename T>
struct GaussKronrod15 {
  static constexpr long double xgk[8] = {
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr long double wgk[8] = {
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  static constexpr long double wg[4] = {
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};
};

}  // namespace latsum

#endif  // LATSUM_GAUSS_RULES_HPP
