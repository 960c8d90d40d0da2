#ifndef LATSUM_ORACLE_HPP
#define LATSUM_ORACLE_HPP

// Brute-force references, independent of the Epstein and quadrature code.

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/lattice.hpp"
#include "latsum/special_functions.hpp"
#include "latsum/summation.hpp"

namespace latsum {

inline constexpr double kDirectSumGuard = 1e10;

/// Points A{-L..L}^d in lexicographic order.
template <typename T>
std::vector<Vector<T>> truncation_box(const Lattice<T>& lat, int L) {
  if (L < 1) throw DomainError("truncation L must be positive");
  const int d = lat.dim();
  std::vector<Vector<T>> pts;
  IntVector n = IntVector::Constant(d, -L);
  while (true) {
    pts.push_back(lat.generator() * n.template cast<T>());
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++n(i) <= L) break;
      n(i) = -L;
    }
    if (i < 0) break;
  }
  return pts;
}

inline double direct_sum_terms(int d, int L, int free_vectors) {
  return std::pow(std::pow(2.0 * L + 1.0, d), free_vectors);
}

/// Absolute convergence of the cycle sum. For three bodies all pair sums
/// must exceed d and the total 2d, which admits the negative exponent in
/// (-1, 5, 5); otherwise every exponent must exceed d.
template <typename T>
bool cycle_sum_converges(const std::vector<T>& nu, int d) {
  const T dd = T(d);
  if (nu.size() == 1) return true;
  if (nu.size() == 2) return nu[0] + nu[1] > dd;
  if (nu.size() == 3)
    return nu[0] + nu[1] > dd && nu[1] + nu[2] > dd && nu[0] + nu[2] > dd && nu[0] + nu[1] + nu[2] > T(2) * dd;
  for (T v : nu)
    if (!(v > dd)) return false;
  return true;
}

/// Truncated n-body sum over x^(1..n-1) in A{-L..L}^d with x^(0) = x^(n) = 0,
/// excluding vanishing consecutive differences. Evaluated by passing a
/// vector over the box from one body to the next.
template <typename T>
T direct_sum_zeta(const Lattice<T>& lat, const std::vector<T>& nu, int L, bool force = false) {
  const int d = lat.dim();
  const int n = static_cast<int>(nu.size());
  if (n < 1) throw DomainError("exponent vector must not be empty");
  if (!cycle_sum_converges(nu, d)) throw DomainError("direct summation requires an absolutely convergent sum");
  if (n == 1) return T(0);
  if (!force && direct_sum_terms(d, L, n - 1) > kDirectSumGuard)
    throw GuardExceeded("direct sum would exceed 1e10 terms; pass force to override");
  const auto box = truncation_box(lat, L);
  const size_t N = box.size();
  const int W = 4 * L + 1;  // difference-table width per axis
  size_t tsize = 1;
  for (int i = 0; i < d; ++i) tsize *= static_cast<size_t>(W);
  // |A m|^{-nu} for every difference m in {-2L..2L}^d.
  auto diff_table = [&](T v) {
    std::vector<T> tab(tsize, T(0));
    IntVector m = IntVector::Constant(d, -2 * L);
    for (size_t idx = 0; idx < tsize; ++idx) {
      if (!m.isZero()) tab[idx] = std::pow((lat.generator() * m.template cast<T>()).norm(), -v);
      for (int i = d - 1; i >= 0; --i) {
        if (++m(i) <= 2 * L) break;
        m(i) = -2 * L;
      }
    }
    return tab;
  };
  // Integer coordinates of box points for table lookups.
  std::vector<IntVector> coords;
  coords.reserve(N);
  {
    IntVector c = IntVector::Constant(d, -L);
    for (size_t i = 0; i < N; ++i) {
      coords.push_back(c);
      for (int j = d - 1; j >= 0; --j) {
        if (++c(j) <= L) break;
        c(j) = -L;
      }
    }
  }
  auto diff_index = [&](const IntVector& a, const IntVector& b) {
    size_t idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * static_cast<size_t>(W) + static_cast<size_t>(a(i) - b(i) + 2 * L);
    return idx;
  };
  const IntVector zero = IntVector::Zero(d);
  // vec[x] = sum over x^(1..j-1) of the partial product ending at x^(j) = x.
  std::vector<T> vec(N);
  {
    const auto tab = diff_table(nu[0]);
    for (size_t i = 0; i < N; ++i) vec[i] = tab[diff_index(coords[i], zero)];
  }
  for (int j = 1; j < n - 1; ++j) {
    const auto tab = diff_table(nu[static_cast<size_t>(j)]);
    std::vector<T> next(N);
    for (size_t x = 0; x < N; ++x) {
      CompensatedSum<T> s;
      for (size_t y = 0; y < N; ++y) {
        if (x == y || vec[y] == T(0)) continue;
        s += vec[y] * tab[diff_index(coords[x], coords[y])];
      }
      next[x] = s.value();
    }
    vec.swap(next);
  }
  const auto tab = diff_table(nu[static_cast<size_t>(n - 1)]);
  CompensatedSum<T> total;
  for (size_t i = 0; i < N; ++i) total += vec[i] * tab[diff_index(coords[i], zero)];
  return total.value();
}

/// ATM triple-dipole potential with z = y - x.
template <typename T>
T atm_potential(const Vector<T>& x, const Vector<T>& y) {
  const Vector<T> z = y - x;
  const T ax = x.norm(), ay = y.norm(), az = z.norm();
  const T p = ax * ay * az;
  const T r3 = T(1) / (p * p * p);
  const T dots = x.dot(y) * y.dot(z) * z.dot(x);
  return r3 - T(3) * dots * r3 / (p * p);
}

/// (1/6) sum' U_ATM(x, y) over x, y in A{-L..L}^d.
template <typename T>
T direct_sum_atm(const Lattice<T>& lat, int L, bool force = false) {
  const int d = lat.dim();
  if (d > 3) throw DomainError("the ATM sum converges only for d <= 3");
  if (!force && direct_sum_terms(d, L, 2) > kDirectSumGuard)
    throw GuardExceeded("direct sum would exceed 1e10 terms; pass force to override");
  const auto box = truncation_box(lat, L);
  CompensatedSum<T> total;
  for (size_t i = 0; i < box.size(); ++i) {
    if (box[i].isZero()) continue;
    CompensatedSum<T> row;
    for (size_t j = 0; j < box.size(); ++j) {
      if (j == i || box[j].isZero()) continue;
      row += atm_potential(box[i], box[j]);
    }
    total += row.value();
  }
  return total.value() / T(6);
}

/// Z_{Z,nu}(k) from s_hat(k) + sum_{n<=N} (-1)^n (2 pi k)^{2n}/(2n)! 2 zeta(nu - 2n),
/// valid for |k| < 1 and nu not in 1 + 2N_0.
template <typename T>
struct SeriesOracle1D {
  T nu;
  int terms;
  T sing;               // coefficient of |k|^{nu-1}
  std::vector<T> coef;  // coefficient of k^{2n}

  SeriesOracle1D(T nu_in, int n_terms = 60) : nu(nu_in), terms(n_terms) {
    const T odd = (nu - T(1)) / T(2);
    if (odd >= T(0) && std::abs(odd - std::round(odd)) < T(1e-12))
      throw DomainError("series oracle excludes nu in 1 + 2N_0");
    const T pi = pi_v<T>;
    sing = std::pow(pi, nu - T(0.5)) * boost::math::tgamma((T(1) - nu) / T(2)) * rgamma(nu / T(2));
    coef.resize(static_cast<size_t>(terms + 1));
    T f = 1;  // (2 pi)^{2n} / (2n)!
    for (int n = 0; n <= terms; ++n) {
      if (n > 0) f *= (T(2) * pi) * (T(2) * pi) / (T(2 * n - 1) * T(2 * n));
      const T s = nu - T(2 * n);
      coef[static_cast<size_t>(n)] = ((n % 2) ? -f : f) * T(2) * boost::math::zeta(s);
    }
  }

  T value(T k) const {
    T s = 0;
    const T k2 = k * k;
    T p = 1;
    for (int n = 0; n <= terms; ++n) {
      s += coef[static_cast<size_t>(n)] * p;
      p *= k2;
    }
    if (k != T(0)) s += sing * std::pow(std::abs(k), nu - T(1));
    return s;
  }
};

/// zeta^(n)_Z(nu) = 2 int_0^{1/2} prod_i Z_{nu_i}(k) dk with each factor
/// expanded by the series oracle and every monomial integrated in closed
/// form (continued analytically for negative powers).
template <typename T>
T series_many_body_1d(const std::vector<T>& nu, int terms = 60) {
  struct Mono {
    T power;
    T coef;
  };
  std::vector<Mono> prod{{T(0), T(1)}};
  const int maxdeg = 2 * terms;
  for (T v : nu) {
    SeriesOracle1D<T> f(v, terms);
    std::vector<Mono> next;
    for (const auto& a : prod) {
      if (f.sing != T(0)) next.push_back({a.power + v - T(1), a.coef * f.sing});
      for (int n = 0; n <= terms; ++n) {
        if (a.power + T(2 * n) > T(maxdeg) + T(8)) break;
        next.push_back({a.power + T(2 * n), a.coef * f.coef[static_cast<size_t>(n)]});
      }
    }
    // Merge equal powers.
    std::vector<Mono> merged;
    for (const auto& m : next) {
      bool done = false;
      for (auto& t : merged)
        if (std::abs(t.power - m.power) < T(1e-12)) {
          t.coef += m.coef;
          done = true;
          break;
        }
      if (!done) merged.push_back(m);
    }
    prod.swap(merged);
  }
  CompensatedSum<T> s;
  for (const auto& m : prod) {
    const T q = m.power + T(1);
    if (std::abs(q) < T(1e-12)) throw DivergenceError("series oracle hits a continuation pole");
    s += T(2) * m.coef * std::pow(T(0.5), q) / q;
  }
  return s.value();
}

}  // namespace latsum

#endif  // LATSUM_ORACLE_HPP
