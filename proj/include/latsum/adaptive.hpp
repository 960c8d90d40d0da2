#ifndef LATSUM_ADAPTIVE_HPP
#define LATSUM_ADAPTIVE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/gauss_rules.hpp"
#include "latsum/summation.hpp"

namespace latsum {

template <typename T>
struct AdaptiveOptions {
  T rel_tol = T(1e-13);
  T abs_tol = T(1e-300);
  int max_depth = 40;
  std::size_t max_intervals = 200000;
};

template <typename T>
struct AdaptiveResult {
  T value = 0;
  T error = 0;
  T l1 = 0;  // integral of |f|, estimated by the Kronrod rule
  std::size_t intervals = 0;
  std::size_t evaluations = 0;
  int depth = 0;
};

template <typename T>
struct GK15Estimate {
  T kronrod, gauss, abs_kronrod;
};

/// One 15-point Gauss-Kronrod pass on [a, b]; f is never evaluated at a or b.
template <typename T, typename F>
GK15Estimate<T> gk15(F& f, T a, T b) {
  using R = GaussKronrod15<T>;
  const T c = (a + b) / T(2), h = (b - a) / T(2);
  const T fc = f(c);
  T k = T(R::wgk[7]) * fc;
  T g = T(R::wg[3]) * fc;
  T ak = T(R::wgk[7]) * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const T dx = h * T(R::xgk[j]);
    const T f1 = f(c - dx), f2 = f(c + dx);
    k += T(R::wgk[j]) * (f1 + f2);
    ak += T(R::wgk[j]) * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g += T(R::wg[j / 2]) * (f1 + f2);
  }
  return {k * h, g * h, ak * std::abs(h)};
}

/// Globally adaptive Gauss-Kronrod integration with bisection. The interval
/// with the largest error estimate is split first (ties broken by position),
/// until the summed estimate is below max(rel_tol * L1, abs_tol).
template <typename T, typename F>
AdaptiveResult<T> integrate_adaptive(F&& f, T a, T b, const AdaptiveOptions<T>& opt) {
  struct Piece {
    T a, b, value, error, l1;
    int depth;
  };
  struct ByError {
    bool operator()(const Piece& x, const Piece& y) const {
      if (x.error != y.error) return x.error < y.error;
      return x.a > y.a;
    }
  };
  const T eps = std::numeric_limits<T>::epsilon();
  std::priority_queue<Piece, std::vector<Piece>, ByError> queue;
  AdaptiveResult<T> res;
  auto make = [&](T lo, T hi, int depth) {
    const auto e = gk15(f, lo, hi);
    res.evaluations += 15;
    return Piece{lo, hi, e.kronrod, std::abs(e.kronrod - e.gauss), e.abs_kronrod, depth};
  };
  queue.push(make(a, b, 0));
  T total_err = queue.top().error, total_l1 = queue.top().l1;
  while (true) {
    const T target = std::max(opt.rel_tol * total_l1, opt.abs_tol);
    if (total_err <= target) break;
    Piece top = queue.top();
    // Errors at rounding level cannot be reduced further.
    if (top.error <= T(50) * eps * top.l1) break;
    if (top.depth >= opt.max_depth || queue.size() >= opt.max_intervals)
      throw ConvergenceError("adaptive radial integration did not reach the tolerance within the maximum depth");
    queue.pop();
    const T mid = (top.a + top.b) / T(2);
    const Piece left = make(top.a, mid, top.depth + 1);
    const Piece right = make(mid, top.b, top.depth + 1);
    total_err += left.error + right.error - top.error;
    total_l1 += left.l1 + right.l1 - top.l1;
    queue.push(left);
    queue.push(right);
  }
  // Final sums in left-to-right order, independent of the queue history.
  std::vector<Piece> pieces;
  pieces.reserve(queue.size());
  while (!queue.empty()) {
    pieces.push_back(queue.top());
    queue.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  CompensatedSum<T> v, e, l;
  for (const auto& p : pieces) {
    v += p.value;
    e += p.error;
    l += p.l1;
    res.depth = std::max(res.depth, p.depth);
  }
  res.value = v.value();
  res.error = e.value();
  res.l1 = l.value();
  res.intervals = pieces.size();
  return res;
}

}  // namespace latsum

#endif  // LATSUM_ADAPTIVE_HPP
