#ifndef LATSUM_TEST_HELPERS_HPP
#define LATSUM_TEST_HELPERS_HPP

#include <cmath>
#include <initializer_list>

#include "latsum/lattice.hpp"

namespace testing {

template <typename T = double>
latsum::Vector<T> vec(std::initializer_list<T> xs) {
  latsum::Vector<T> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (T x : xs) v(i++) = x;
  return v;
}

inline double rel_err(double v, double ref) { return std::abs(v - ref) / std::max(std::abs(ref), 1e-300); }

/// Brute-force sum' exp(2 pi i k.R) |R|^{-nu} over the box |n_i| <= L.
inline double direct_epstein(const latsum::Lattice<double>& lat, double nu, const latsum::Vector<double>& k, int L) {
  const int d = lat.dim();
  const int side = 2 * L + 1;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= side;
  double s = 0, c = 0;
  for (long code = 0; code < total; ++code) {
    latsum::Vector<double> n(d);
    long r = code;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      n(i) = static_cast<double>(r % side - L);
      r /= side;
      zero = zero && n(i) == 0;
    }
    if (zero) continue;
    const latsum::Vector<double> x = lat.generator() * n;
    const double term = std::cos(2 * M_PI * k.dot(x)) * std::pow(x.norm(), -nu);
    const double y = term - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace testing

#endif
