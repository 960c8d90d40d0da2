#ifndef LATSUM_EPSTEIN_HPP
#define LATSUM_EPSTEIN_HPP

// Epstein zeta function Z_{L,nu}(k) = sum'_{z in L} e^{-2 pi i z.k} |z|^{-nu}
// and its continuation in nu, via a Crandall-type split into a real-space
// sum over L and a reciprocal-space sum over L*:
//
//   Z(k) = sum'_z W(z) cos(2 pi z.k) + F sum_g h_a(c |g+k|^2) + C0,
//
//   W(z) = Gamma(nu/2, pi z^2/lambda^2) |z|^{-nu} / Gamma(nu/2),
//   h_s(x) = Gamma(s,x) x^{-s},  a = (d-nu)/2,  c = pi lambda^2,
//   F = pi^{nu/2} lambda^{d-nu} / (V Gamma(nu/2)),
//   C0 = -pi^{nu/2} lambda^{-nu} / Gamma(nu/2+1).
//
// The g = 0 term splits as F h_a(y) = s_hat(k)/V + P(k), y = c|k|^2, with P
// an entire power series in y; the regularized part is Z minus s_hat/V.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/lattice.hpp"
#include "latsum/multi_index.hpp"
#include "latsum/special_functions.hpp"

namespace latsum {

enum class EpsteinBranch { generic, log_case };

inline constexpr double kLogBranchTol = 1e-12;
inline constexpr double kPoleTol = 1e-10;

/// Lattice, exponent and singular-part branch. nu is snapped to the exact
/// integer when it lies within 1e-12 of d + 2m.
template <typename T>
struct EpsteinParams {
  Lattice<T> lattice;
  T nu;
  EpsteinBranch branch;
  int log_index;  // m with nu = d + 2m in the log case, else -1

  EpsteinParams(const Lattice<T>& lat, T nu_in) : lattice(lat), nu(nu_in), branch(EpsteinBranch::generic), log_index(-1) {
    if (!std::isfinite(nu)) throw DomainError("exponent nu must be finite");
    const T shift = nu - T(lat.dim());
    const T m2 = std::round(shift / T(2));
    if (m2 >= T(0) && std::abs(shift - T(2) * m2) < T(kLogBranchTol)) {
      branch = EpsteinBranch::log_case;
      log_index = static_cast<int>(m2);
      nu = T(lat.dim()) + T(2) * m2;
    }
  }

  int dim() const { return lattice.dim(); }
  /// |nu - d| < 1e-10: Z has its simple pole at k in L*.
  bool at_pole() const { return std::abs(nu - T(dim())) < T(kPoleTol); }
};

template <typename T>
T default_term_tolerance() {
  return std::min(T(1e-18), std::numeric_limits<T>::epsilon() * T(4.5e-3));
}

struct EpsteinOptions {
  /// Multiplies the default splitting parameter lambda = V^{1/d}.
  double lambda_scale = 1.0;
  /// Relative truncation threshold for real and reciprocal sums; 0 selects
  /// the scalar-dependent default.
  double term_tolerance = 0.0;
};

/// Derivatives of Z^reg at k = 0 up to total order `order`.
template <typename T>
struct RegZetaTaylor {
  Lattice<T> lattice;
  T nu;
  int order;
  MultiIndexSet indices;
  /// derivs[i] = nabla^alpha Z^reg(0) for alpha = indices[i]; odd totals are 0.
  std::vector<T> derivs;

  T derivative(const MultiIndex& alpha) const {
    const long i = indices.index_of(alpha);
    if (i < 0) throw OrderExceeded("derivative order above the precomputed Taylor order");
    return derivs[static_cast<size_t>(i)];
  }
};

/// Evaluation context: immutable per-(lattice, nu) data for fast repeated
/// evaluation of Z, Z^reg and s_hat.
template <typename T>
class EpsteinZeta {
public:
  explicit EpsteinZeta(const EpsteinParams<T>& p, const EpsteinOptions& opt = {});
  EpsteinZeta(const Lattice<T>& lat, T nu, const EpsteinOptions& opt = {}) : EpsteinZeta(EpsteinParams<T>(lat, nu), opt) {}

  const EpsteinParams<T>& params() const { return p_; }
  const Lattice<T>& lattice() const { return p_.lattice; }
  T nu() const { return p_.nu; }
  int dim() const { return d_; }
  T lambda() const { return lambda_; }

  /// Z(k); k is reduced into the Brillouin zone first.
  T value(const Vector<T>& k) const;
  /// Z^reg(k) for k in the closed Brillouin zone.
  T regular(const Vector<T>& k) const;
  /// s_hat(k) (without the 1/V factor).
  T singular(const Vector<T>& k) const;
  /// Coefficient of the singular monomial: s_hat(k) = coef |k|^{nu-d} in the
  /// generic branch and coef |k|^{2m} log(pi |k|^2) in the log branch.
  T singular_coefficient() const { return sing_coef_; }

  RegZetaTaylor<T> taylor(int order) const;

private:
  struct RealTerm {
    IntVector n;
    T weight;
  };

  T real_space(const Vector<T>& k) const;
  T reciprocal_nonzero(const Vector<T>& k) const;
  T p_series(T y) const;
  T h(T s, T x) const { return upper_gamma_scaled(s, x); }
  void check_regular_pole() const;
  T real_weight(T r) const;
  std::vector<IntVector> ball(const Matrix<T>& gen, T radius) const;

  EpsteinParams<T> p_;
  BrillouinZone<T> bz_;
  int d_;
  T vol_, lambda_, a_, c_, F_, C0_, rg_, sing_coef_, tol_, scale_;
  T x_cut_;
  std::vector<RealTerm> real_;  // half space, paired with -n
  std::vector<int> nmax_;       // per-dimension extent of real_
  std::vector<Vector<T>> recip_;  // nonzero g within reach of the BZ
};

// ---------------------------------------------------------------------------

template <typename T>
std::vector<IntVector> EpsteinZeta<T>::ball(const Matrix<T>& gen, T radius) const {
  // |n_i| <= |row_i(gen^{-1})| * radius.
  const Matrix<T> inv = gen.inverse();
  std::vector<int> ext(static_cast<size_t>(d_));
  for (int i = 0; i < d_; ++i) ext[static_cast<size_t>(i)] = static_cast<int>(std::floor(inv.row(i).norm() * radius)) + 1;
  std::vector<IntVector> out;
  IntVector n(d_);
  for (int i = 0; i < d_; ++i) n(i) = -ext[static_cast<size_t>(i)];
  const T r2 = radius * radius;
  while (true) {
    if (!n.isZero() && (gen * n.template cast<T>()).squaredNorm() <= r2) out.push_back(n);
    int i = d_ - 1;
    for (; i >= 0; --i) {
      if (++n(i) <= ext[static_cast<size_t>(i)]) break;
      n(i) = -ext[static_cast<size_t>(i)];
    }
    if (i < 0) break;
  }
  return out;
}

template <typename T>
T EpsteinZeta<T>::real_weight(T r) const {
  if (rg_ == T(0)) return T(0);
  const T s = p_.nu / T(2);
  const T x = pi_v<T> * r * r / (lambda_ * lambda_);
  return rg_ * std::pow(pi_v<T> / (lambda_ * lambda_), s) * h(s, x);
}

template <typename T>
EpsteinZeta<T>::EpsteinZeta(const EpsteinParams<T>& p, const EpsteinOptions& opt)
    : p_(p), bz_(p.lattice), d_(p.dim()) {
  const T nu = p_.nu;
  const T dd = T(d_);
  const T pi = pi_v<T>;
  vol_ = p_.lattice.volume();
  lambda_ = std::pow(vol_, T(1) / dd) * T(opt.lambda_scale);
  a_ = (dd - nu) / T(2);
  c_ = pi * lambda_ * lambda_;
  rg_ = rgamma(nu / T(2));
  F_ = std::pow(pi, nu / T(2)) * std::pow(lambda_, dd - nu) / vol_ * rg_;
  C0_ = -std::pow(pi, nu / T(2)) * std::pow(lambda_, -nu) * rgamma(nu / T(2) + T(1));
  tol_ = opt.term_tolerance > 0 ? T(opt.term_tolerance) : default_term_tolerance<T>();

  if (p_.branch == EpsteinBranch::log_case) {
    const int m = p_.log_index;
    sing_coef_ = std::pow(pi, T(2 * m) + dd / T(2)) * rgamma(T(m) + dd / T(2)) * ((m + 1) % 2 == 0 ? T(1) : T(-1)) /
                 factorial<T>(m);
  } else {
    sing_coef_ = std::pow(pi, nu - dd / T(2)) * gamma_fn(a_) * rg_;
  }

  const T smin_direct = p_.lattice.shortest_vector();
  const Lattice<T> recip = p_.lattice.reciprocal();
  const T smin_recip = recip.shortest_vector();
  const T rbz = bz_.max_radius();

  // Reference magnitude for truncation.
  scale_ = std::max({std::abs(real_weight(smin_direct)), std::abs(F_ * h(a_, c_ * smin_recip * smin_recip / T(4))),
                     std::abs(C0_), std::numeric_limits<T>::min()});
  const T thresh = tol_ * scale_;

  // Real space: weights decrease monotonically in |z|.
  if (rg_ != T(0)) {
    T r = smin_direct;
    while (std::abs(real_weight(r)) >= thresh) r += smin_direct / T(4);
    for (const auto& n : ball(p_.lattice.generator(), r)) {
      int first = 0;
      while (n(first) == 0) ++first;
      if (n(first) < 0) continue;
      const T w = real_weight((p_.lattice.generator() * n.template cast<T>()).norm());
      if (std::abs(w) >= thresh) real_.push_back({n, w});
    }
  }
  nmax_.assign(static_cast<size_t>(d_), 0);
  for (const auto& t : real_)
    for (int i = 0; i < d_; ++i) nmax_[static_cast<size_t>(i)] = std::max(nmax_[static_cast<size_t>(i)], std::abs(t.n(i)));

  // Reciprocal space: h_a decreases monotonically in its argument.
  x_cut_ = std::max(T(1), a_ + T(1));
  if (F_ != T(0)) {
    while (std::abs(F_ * h(a_, x_cut_)) >= thresh) x_cut_ += T(0.5);
    const T rg = std::sqrt(x_cut_ / c_) + rbz;
    for (const auto& n : ball(recip.generator(), rg)) recip_.push_back(recip.generator() * n.template cast<T>());
  }
}

template <typename T>
T EpsteinZeta<T>::real_space(const Vector<T>& k) const {
  if (real_.empty()) return T(0);
  const Vector<T> kc = bz_.cube_coordinates(k);
  const T twopi = T(2) * pi_v<T>;
  // Per-dimension phase tables e^{2 pi i m kc_j}, m in [-N_j, N_j].
  std::vector<std::vector<std::complex<T>>> tab(static_cast<size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    const int nm = nmax_[static_cast<size_t>(j)];
    auto& t = tab[static_cast<size_t>(j)];
    t.resize(static_cast<size_t>(2 * nm + 1));
    for (int m = -nm; m <= nm; ++m) {
      const T ph = twopi * (T(m) * kc(j));
      t[static_cast<size_t>(m + nm)] = {std::cos(ph), std::sin(ph)};
    }
  }
  T sum = 0;
  for (const auto& term : real_) {
    std::complex<T> e = tab[0][static_cast<size_t>(term.n(0) + nmax_[0])];
    for (int j = 1; j < d_; ++j) e *= tab[static_cast<size_t>(j)][static_cast<size_t>(term.n(j) + nmax_[static_cast<size_t>(j)])];
    sum += term.weight * e.real();
  }
  return T(2) * sum;
}

template <typename T>
T EpsteinZeta<T>::reciprocal_nonzero(const Vector<T>& k) const {
  if (F_ == T(0)) return T(0);
  T sum = 0;
  for (const auto& g : recip_) {
    const T x = c_ * (g + k).squaredNorm();
    if (x <= x_cut_) sum += h(a_, x);
  }
  return F_ * sum;
}

template <typename T>
T EpsteinZeta<T>::p_series(T y) const {
  // P = F * sum_n q_n y^n.
  if (F_ == T(0)) return T(0);
  const T eps = std::numeric_limits<T>::epsilon();
  const int m = p_.log_index;
  T sum = 0, pw = 1;  // pw = (-y)^n / n!
  T maxabs = 0;
  for (int n = 0; n < 2000; ++n) {
    if (n > 0) pw *= -y / T(n);
    T term;
    if (n == m) {
      // (-1)^m/m! (psi(m+1) - log lambda^2) y^m
      term = pw * (digamma_int<T>(m + 1) - T(2) * std::log(lambda_));
    } else {
      term = -pw / (T(n) + a_);
    }
    sum += term;
    maxabs = std::max(maxabs, std::abs(term));
    if (n > m && T(n) > y && std::abs(term) <= eps * eps * maxabs) break;
    if (y == T(0)) break;
  }
  return F_ * sum;
}

template <typename T>
void EpsteinZeta<T>::check_regular_pole() const {
  if (p_.branch == EpsteinBranch::generic && p_.at_pole())
    throw PoleError("nu is within 1e-10 of the dimension but not on the log branch");
}

template <typename T>
T EpsteinZeta<T>::singular(const Vector<T>& k) const {
  if (!k.allFinite()) throw DomainError("non-finite wave vector");
  if (sing_coef_ == T(0)) return T(0);
  const T k2 = k.squaredNorm();
  if (p_.branch == EpsteinBranch::log_case) {
    const int m = p_.log_index;
    if (k2 == T(0)) {
      if (m == 0) throw DomainError("logarithmic singular part undefined at k = 0");
      return T(0);
    }
    return sing_coef_ * std::pow(k2, T(m)) * std::log(pi_v<T> * k2);
  }
  if (k2 == T(0)) {
    if (p_.nu < T(d_)) throw DomainError("singular part diverges at k = 0 for nu < d");
    return T(0);
  }
  return sing_coef_ * std::pow(k2, (p_.nu - T(d_)) / T(2));
}

template <typename T>
T EpsteinZeta<T>::regular(const Vector<T>& k) const {
  if (!k.allFinite()) throw DomainError("non-finite wave vector");
  if (static_cast<int>(k.size()) != d_) throw DomainError("wave vector dimension mismatch");
  check_regular_pole();
  const Vector<T> kc = bz_.cube_coordinates(k);
  if ((kc.array().abs() > T(0.5) + T(1e-9)).any()) throw DomainError("regularized part requires k in the Brillouin zone");
  return real_space(k) + reciprocal_nonzero(k) + p_series(c_ * k.squaredNorm()) + C0_;
}

template <typename T>
T EpsteinZeta<T>::value(const Vector<T>& kin) const {
  if (!kin.allFinite()) throw DomainError("non-finite wave vector");
  if (static_cast<int>(kin.size()) != d_) throw DomainError("wave vector dimension mismatch");
  const Vector<T> k = bz_.reduce(kin);
  const T k2 = k.squaredNorm();
  if (k2 == T(0)) {
    if (p_.at_pole()) throw PoleError("Epstein zeta has a pole at nu = d for k in the reciprocal lattice");
    return regular(k);
  }
  const T y = c_ * k2;
  if (y <= T(1)) return regular(k) + singular(k) / vol_;
  // Away from 0 the g = 0 term is summed directly.
  return real_space(k) + reciprocal_nonzero(k) + F_ * h(a_, y) + C0_;
}

template <typename T>
RegZetaTaylor<T> EpsteinZeta<T>::taylor(int order) const {
  if (order < 0 || order % 2 != 0) throw DomainError("Taylor order must be even and nonnegative");
  check_regular_pole();
  const int L = order;
  const MultiIndexSet set(d_, L);
  std::vector<T> tcoef(set.size(), T(0));  // Taylor coefficients T_alpha
  const T pi = pi_v<T>;
  const T twopi = T(2) * pi;
  const T thresh_rel = tol_;

  auto monomial = [&](const Vector<T>& v, const MultiIndex& al) {
    T r = 1;
    for (int i = 0; i < d_; ++i) r *= std::pow(v(i), T(al[static_cast<size_t>(i)]));
    return r;
  };
  std::vector<T> fact(static_cast<size_t>(2 * L + 2));
  for (int i = 0; i < static_cast<int>(fact.size()); ++i) fact[static_cast<size_t>(i)] = factorial<T>(i);
  std::vector<T> inv_afact(set.size());
  for (size_t i = 0; i < set.size(); ++i) inv_afact[i] = T(1) / multi_factorial<T>(set[i], d_);

  // Real space: cos(2 pi z.k) = sum_j (-1)^j (2 pi)^{2j} (z.k)^{2j} / (2j)!.
  if (rg_ != T(0)) {
    auto sig = [&](T r) {
      T best = 0;
      for (int j = 0; 2 * j <= L; ++j) best = std::max(best, std::pow(twopi * r, T(2 * j)) / fact[static_cast<size_t>(2 * j)]);
      return std::abs(real_weight(r)) * best;
    };
    const T s0 = p_.lattice.shortest_vector();
    T r = s0, peak = 0;
    while (true) {
      const T v = sig(r);
      peak = std::max(peak, v);
      if (v < thresh_rel * std::max(peak, scale_) && r > s0 * T(2)) break;
      r += s0 / T(4);
    }
    for (const auto& n : ball(p_.lattice.generator(), r)) {
      int first = 0;
      while (n(first) == 0) ++first;
      if (n(first) < 0) continue;
      const Vector<T> z = p_.lattice.generator() * n.template cast<T>();
      const T w = T(2) * real_weight(z.norm());
      for (int j = 0; 2 * j <= L; ++j) {
        const T f = w * ((j % 2) ? T(-1) : T(1)) * std::pow(twopi, T(2 * j));
        for (size_t i = set.begin_of_order(2 * j); i < set.end_of_order(2 * j); ++i)
          tcoef[i] += f * monomial(z, set[i]) * inv_afact[i];
      }
    }
  }

  // Nonzero reciprocal vectors: psi(q) = F h_a(c q), psi^{(j)}(q) = F (-c)^j h_{a+j}(c q),
  // expanded in delta = 2 g.k + |k|^2.
  if (F_ != T(0)) {
    const Lattice<T> recip = p_.lattice.reciprocal();
    auto psi = [&](int j, T q) { return F_ * std::pow(-c_, T(j)) * h(a_ + T(j), c_ * q); };
    auto sig = [&](T r) {
      T best = 0;
      for (int j = 0; j <= L; ++j)
        best = std::max(best, std::abs(psi(j, r * r)) * std::max(T(1), std::pow(T(2) * r, T(L))) / fact[static_cast<size_t>(j)]);
      return best;
    };
    const T s0 = recip.shortest_vector();
    T r = s0, peak = 0;
    while (true) {
      const T v = sig(r);
      peak = std::max(peak, v);
      if (v < thresh_rel * std::max(peak, scale_) && r > s0 * T(2)) break;
      r += s0 / T(4);
    }
    // Moments M[j][beta] = sum_g psi^{(j)}(|g|^2) (2g)^beta, |beta| even, over a half space.
    std::vector<std::vector<T>> mom(static_cast<size_t>(L + 1), std::vector<T>(set.size(), T(0)));
    for (const auto& n : ball(recip.generator(), r)) {
      int first = 0;
      while (n(first) == 0) ++first;
      if (n(first) < 0) continue;
      const Vector<T> g = recip.generator() * n.template cast<T>();
      const Vector<T> g2 = T(2) * g;
      const T q = g.squaredNorm();
      for (int j = 0; j <= L; ++j) {
        const T ps = T(2) * psi(j, q);
        const int bmax = std::min(j, L);
        for (int b = std::max(0, 2 * j - L); b <= bmax; b += 1) {
          if (b % 2) continue;
          for (size_t i = set.begin_of_order(b); i < set.end_of_order(b); ++i) mom[static_cast<size_t>(j)][i] += ps * monomial(g2, set[i]);
        }
      }
    }
    // T_{beta + 2 gamma} += M[j][beta]/j! C(j,|beta|) |beta|!/beta! r!/gamma!, r = j - |beta|.
    for (int j = 0; j <= L; ++j) {
      for (int b = std::max(0, 2 * j - L); b <= j; b += 2) {
        const int rr = j - b;
        const T cj = binomial<T>(j, b) / fact[static_cast<size_t>(j)];
        for (size_t ib = set.begin_of_order(b); ib < set.end_of_order(b); ++ib) {
          const T mb = mom[static_cast<size_t>(j)][ib];
          if (mb == T(0)) continue;
          const T fb = mb * cj * fact[static_cast<size_t>(b)] * inv_afact[ib];
          for (size_t ig = set.begin_of_order(rr); ig < set.end_of_order(rr); ++ig) {
            MultiIndex al{};
            for (int t = 0; t < d_; ++t)
              al[static_cast<size_t>(t)] = set[ib][static_cast<size_t>(t)] + 2 * set[ig][static_cast<size_t>(t)];
            const long pos = set.index_of(al);
            tcoef[static_cast<size_t>(pos)] += fb * fact[static_cast<size_t>(rr)] * inv_afact[ig];
          }
        }
      }
    }

    // P(k) = sum_n p_n |k|^{2n}, |k|^{2n} = sum_{|gamma|=n} n!/gamma! k^{2 gamma}.
    const int m = p_.log_index;
    for (int n = 0; 2 * n <= L; ++n) {
      const T cn = std::pow(c_, T(n)) * ((n % 2) ? T(-1) : T(1)) / fact[static_cast<size_t>(n)];
      T pn = (n == m) ? F_ * cn * (digamma_int<T>(m + 1) - T(2) * std::log(lambda_)) : -F_ * cn / (T(n) + a_);
      for (size_t ig = set.begin_of_order(n); ig < set.end_of_order(n); ++ig) {
        MultiIndex al{};
        for (int t = 0; t < d_; ++t) al[static_cast<size_t>(t)] = 2 * set[ig][static_cast<size_t>(t)];
        tcoef[static_cast<size_t>(set.index_of(al))] += pn * fact[static_cast<size_t>(n)] * inv_afact[ig];
      }
    }
  }
  tcoef[0] += C0_;

  RegZetaTaylor<T> out{p_.lattice, p_.nu, order, set, std::vector<T>(set.size())};
  for (size_t i = 0; i < set.size(); ++i) out.derivs[i] = total_order(set[i], d_) % 2 ? T(0) : tcoef[i] / inv_afact[i];
  return out;
}

// Free-function interface -----------------------------------------------------

template <typename T>
T epstein_zeta(const EpsteinZeta<T>& z, const Vector<T>& k) {
  return z.value(k);
}

template <typename T>
T singular_part(const EpsteinZeta<T>& z, const Vector<T>& k) {
  return z.singular(k);
}

template <typename T>
T regularized_zeta(const EpsteinZeta<T>& z, const Vector<T>& k) {
  return z.regular(k);
}

template <typename T>
RegZetaTaylor<T> reg_zeta_derivatives(const EpsteinZeta<T>& z, int order, int max_order = 12) {
  if (order > max_order) throw OrderExceeded("Taylor order above the configured ceiling");
  return z.taylor(order);
}

template <typename T>
T epstein_zeta(const EpsteinParams<T>& p, const Vector<T>& k) {
  return EpsteinZeta<T>(p).value(k);
}

template <typename T>
T singular_part(const EpsteinParams<T>& p, const Vector<T>& k) {
  return EpsteinZeta<T>(p).singular(k);
}

template <typename T>
T regularized_zeta(const EpsteinParams<T>& p, const Vector<T>& k) {
  return EpsteinZeta<T>(p).regular(k);
}

template <typename T>
RegZetaTaylor<T> reg_zeta_derivatives(const EpsteinParams<T>& p, int order, int max_order = 12) {
  return reg_zeta_derivatives(EpsteinZeta<T>(p), order, max_order);
}

/// (1/(2k)!) (w.nabla)^{2k} Z^reg(0) = sum_{|alpha|=2k} w^alpha nabla^alpha Z^reg(0) / alpha!.
template <typename T>
T directional_taylor_coeff(const RegZetaTaylor<T>& t, const Vector<T>& w, int k) {
  if (k < 0 || 2 * k > t.order) throw OrderExceeded("directional coefficient order above the Taylor order");
  const int d = t.indices.dim();
  T sum = 0;
  for (size_t i = t.indices.begin_of_order(2 * k); i < t.indices.end_of_order(2 * k); ++i) {
    const MultiIndex& al = t.indices[i];
    T mono = 1;
    for (int j = 0; j < d; ++j) mono *= std::pow(w(j), T(al[static_cast<size_t>(j)]));
    sum += mono * t.derivs[i] / multi_factorial<T>(al, d);
  }
  return sum;
}

extern template class EpsteinZeta<double>;
extern template class EpsteinZeta<long double>;

}  // namespace latsum

#endif  // LATSUM_EPSTEIN_HPP
