#ifndef LATSUM_SPECIAL_FUNCTIONS_HPP
#define LATSUM_SPECIAL_FUNCTIONS_HPP

// Gamma-function family on the real line. The upper incomplete gamma
// function is implemented here for every real order s (including negative
// and negative-integer s); Boost.Math supplies the complete gamma function.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

#include "latsum/errors.hpp"

namespace latsum {

template <typename T>
inline constexpr T pi_v = boost::math::constants::pi<T>();

template <typename T>
inline constexpr T euler_gamma_v = boost::math::constants::euler<T>();

/// True if x is 0, -1, -2, ...
template <typename T>
bool is_nonpositive_integer(T x) {
  return x <= T(0) && std::floor(x) == x;
}

/// Complete gamma function. Poles raise DomainError.
template <typename T>
T gamma_fn(T x) {
  if (is_nonpositive_integer(x)) throw DomainError("gamma function pole");
  return boost::math::tgamma(x);
}

/// 1/Gamma(x), entire: returns exactly 0 at the poles of Gamma.
template <typename T>
T rgamma(T x) {
  if (is_nonpositive_integer(x)) return T(0);
  return T(1) / boost::math::tgamma(x);
}

/// Digamma at a positive integer n: -gamma_E + sum_{k<n} 1/k.
template <typename T>
T digamma_int(int n) {
  T s = -euler_gamma_v<T>;
  for (int k = 1; k < n; ++k) s += T(1) / T(k);
  return s;
}

namespace detail {

// Lentz evaluation of the Legendre continued fraction,
// Gamma(s,x) = e^{-x} x^s / (x+1-s- 1(1-s)/(x+3-s- 2(2-s)/(x+5-s- ...))).
// Valid for every real s once x is not small.
template <typename T>
T upper_gamma_cf_ratio(T s, T x) {
  const T tiny = std::numeric_limits<T>::min() / std::numeric_limits<T>::epsilon();
  const T eps = std::numeric_limits<T>::epsilon();
  T b = x + T(1) - s;
  T c = T(1) / tiny;
  T d = T(1) / b;
  T h = d;
  for (int i = 1; i < 100000; ++i) {
    const T an = -T(i) * (T(i) - s);
    b += T(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = T(1) / d;
    const T delta = d * c;
    h *= delta;
    if (std::abs(delta - T(1)) <= eps) break;
  }
  return h;
}

template <typename T>
T upper_gamma_cf(T s, T x) {
  return std::exp(-x + s * std::log(x)) * upper_gamma_cf_ratio(s, x);
}

// gamma(s,x) by its positive-term series; for s > 0.
template <typename T>
T lower_gamma_series(T s, T x) {
  const T eps = std::numeric_limits<T>::epsilon();
  T term = T(1) / s;
  T sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + T(n));
    sum += term;
    if (term <= sum * eps) break;
  }
  return std::exp(-x + s * std::log(x)) * sum;
}

// Gamma(a,x) for |a| <= 1/2 and small x:
//   ((Gamma(1+a)-1) - (x^a-1))/a - sum_{n>=1} (-1)^n x^{a+n} / (n! (a+n)),
// with both bracketed differences formed without cancellation so the
// expression is smooth through a = 0 (where it reduces to E_1).
template <typename T>
T upper_gamma_small_order(T a, T x) {
  const T eps = std::numeric_limits<T>::epsilon();
  const T lx = std::log(x);
  T head;
  if (a == T(0)) {
    head = -euler_gamma_v<T> - lx;
  } else {
    head = (boost::math::tgamma1pm1(a) - std::expm1(a * lx)) / a;
  }
  const T xa = std::exp(a * lx);
  T pw = xa;  // x^{a+n} / n! * (-1)^n
  T tail = T(0);
  for (int n = 1; n < 1000; ++n) {
    pw *= -x / T(n);
    const T term = pw / (a + T(n));
    tail += term;
    if (std::abs(term) <= eps * std::abs(tail)) break;
  }
  return head - tail;
}

}  // namespace detail

/// Upper incomplete gamma function Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt
/// for real s and x > 0.
template <typename T>
T upper_gamma(T s, T x) {
  if (!(x > T(0)) || !std::isfinite(x) || !std::isfinite(s))
    throw DomainError("upper_gamma requires finite s and x > 0");
  if (s > T(0.5)) {
    if (x < s + T(1)) return boost::math::tgamma(s) - detail::lower_gamma_series(s, x);
    return detail::upper_gamma_cf(s, x);
  }
  if (x > T(1)) return detail::upper_gamma_cf(s, x);
  // Shift s into [-1/2, 1/2], then recur downwards:
  // Gamma(a-1,x) = (Gamma(a,x) - x^{a-1} e^{-x}) / (a-1).
  int steps = 0;
  T a = s;
  while (a < T(-0.5)) {
    a += T(1);
    ++steps;
  }
  T g = detail::upper_gamma_small_order(a, x);
  for (int i = 0; i < steps; ++i) {
    a -= T(1);
    g = (g - std::exp(-x + a * std::log(x))) / a;
  }
  return g;
}

/// Gamma(s, x) x^{-s} = int_1^inf t^{s-1} e^{-x t} dt; the derivative in x of
/// this kernel is minus the same kernel at order s+1.
template <typename T>
T upper_gamma_scaled(T s, T x) {
  if (x > T(1) && (s <= T(0.5) || x >= s + T(1)))
    return std::exp(-x) * detail::upper_gamma_cf_ratio(s, x);
  return upper_gamma(s, x) * std::exp(-s * std::log(x));
}

}  // namespace latsum

#endif  // LATSUM_SPECIAL_FUNCTIONS_HPP
