#ifndef LATSUM_QUADRATURE_HPP
#define LATSUM_QUADRATURE_HPP

// V * int_BZ prod_i Z_{nu_i}(k) dk via the Duffy decomposition of the cube
// A^T BZ = (-1/2, 1/2)^d into 2^{d-1} d pyramids around the origin:
//
//   2^d sum_p sum_j int_0^{1/2} int_{[0,1/2]^{d-1}} u^{d-1} f(u w(v)) dv du,
//   w(v) = A^{-T} sigma^j (2 p_1 v_1, ..., 2 p_{d-1} v_{d-1}, 1).

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "latsum/adaptive.hpp"
#include "latsum/epstein.hpp"
#include "latsum/gauss_rules.hpp"
#include "latsum/lattice.hpp"
#include "latsum/parallel.hpp"
#include "latsum/summation.hpp"

namespace latsum {

enum class RadialMode { automatic, split, full_adaptive };

std::string to_string(RadialMode m);
RadialMode parse_radial_mode(const std::string& s);

struct QuadratureConfig {
  int gauss_order = 14;
  double epsilon = 1.0 / 16.0;
  int taylor_order = 12;
  int max_taylor_order = 12;
  double adaptive_rel_tol = 1e-13;
  double adaptive_abs_tol = 1e-300;
  int adaptive_max_depth = 40;
  RadialMode radial_mode = RadialMode::automatic;
  bool general_log_recurrence = false;
  double lambda_scale = 1.5;
  int threads = 1;

  /// Throws DomainError on out-of-range fields.
  void validate() const;
  /// Flat "key = value" lines.
  std::string to_kv() const;
  static QuadratureConfig from_kv(const std::string& text);
  /// Apply one "key=value" assignment.
  void set(const std::string& key, const std::string& value);
};

struct DuffyCell {
  int dim = 1;
  std::array<int, kMaxDim - 1> signs{};  // p in {+1,-1}^{d-1}
  int pyramid = 0;                        // j in 0..d-1

  /// sigma^j (2 p v, 1): the 1 goes to coordinate (d-1+j) mod d.
  template <typename T>
  Vector<T> cube_direction(const T* v) const {
    Vector<T> x(dim);
    for (int i = 0; i < dim; ++i) {
      const int src = ((i - pyramid) % dim + dim) % dim;  // position before the shift
      x(i) = src == dim - 1 ? T(1) : T(2) * T(signs[static_cast<size_t>(src)]) * v[src];
    }
    return x;
  }

  template <typename T>
  Vector<T> direction(const Matrix<T>& a_inv_t, const T* v) const {
    return a_inv_t * cube_direction<T>(v);
  }
};

std::vector<DuffyCell> duffy_cells(int dim);

/// int_0^eps u^{-nu-1} log^m(pi u^2 |w|^2) du, continued analytically to
/// nu >= 0 (Hadamard finite part).
template <typename T>
T tail_primitive(T nu, int m, T eps, T wnorm, bool general_recurrence = false) {
  if (m < 0) throw DomainError("log power must be nonnegative");
  if (m > 3 && !general_recurrence) throw OrderExceeded("log powers above 3 need the general recurrence");
  const T t = -nu;
  if (std::abs(t) < T(1e-10)) throw DivergenceError("logarithmically divergent tail integral (continuation pole)");
  const T L = std::log(pi_v<T> * eps * eps * wnorm * wnorm);
  const T et = std::exp(t * std::log(eps));
  // I_m = eps^t L^m / t - (2m/t) I_{m-1}
  T I = et / t, Lp = 1;
  for (int k = 1; k <= m; ++k) {
    Lp *= L;
    I = et * Lp / t - T(2 * k) / t * I;
  }
  return I;
}

template <typename T>
struct SeriesTerm {
  T power;     // exponent of u
  int logpow;  // exponent of log(pi u^2 |w|^2)
  T coef;
};

template <typename T>
struct TailResult {
  T value = 0;
  /// Contribution of the highest retained u-power, relative to |value|.
  T last_order_ratio = 0;
};

/// Series of Z_nu(u w) in u near 0: singular monomial plus Taylor part up to
/// u^{order}.
template <typename T>
std::vector<SeriesTerm<T>> factor_series(const EpsteinZeta<T>& z, const RegZetaTaylor<T>& taylor, const Vector<T>& w) {
  std::vector<SeriesTerm<T>> out;
  const T wn = w.norm();
  const T sc = z.singular_coefficient() / z.lattice().volume();
  const int d = z.dim();
  if (sc != T(0)) {
    const auto& p = z.params();
    if (p.branch == EpsteinBranch::log_case) {
      const int m = p.log_index;
      out.push_back({T(2 * m), 1, sc * std::pow(wn, T(2 * m))});
    } else {
      out.push_back({p.nu - T(d), 0, sc * std::pow(wn, p.nu - T(d))});
    }
  }
  for (int k = 0; 2 * k <= taylor.order; ++k) {
    const T c = directional_taylor_coeff(taylor, w, k);
    if (c != T(0)) out.push_back({T(2 * k), 0, c});
  }
  return out;
}

/// int_0^eps u^{d-1} prod_i Z_{nu_i}(u w) du from the product of the factor
/// series truncated at total u-power (sum of leading powers) + ell.
template <typename T>
TailResult<T> tail_expansion(const std::vector<std::vector<SeriesTerm<T>>>& factors, int dim, const Vector<T>& w, T eps,
                             int ell, bool general_recurrence = false) {
  const T ptol = T(1e-9);
  std::vector<T> lead(factors.size(), T(0));
  T lead_sum = 0;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].empty()) return {};  // identically zero factor
    T lo = factors[i][0].power;
    for (const auto& t : factors[i]) lo = std::min(lo, t.power);
    lead[i] = lo;
    lead_sum += lo;
  }
  const T cutoff = lead_sum + T(ell);
  // Remaining leading power after factor i.
  std::vector<T> rest(factors.size() + 1, T(0));
  for (size_t i = factors.size(); i-- > 0;) rest[i] = rest[i + 1] + lead[i];

  std::vector<SeriesTerm<T>> prod{{T(0), 0, T(1)}};
  for (size_t i = 0; i < factors.size(); ++i) {
    std::vector<SeriesTerm<T>> next;
    T maxc = 0;
    for (const auto& a : prod) {
      for (const auto& b : factors[i]) {
        const T pw = a.power + b.power;
        if (pw + rest[i + 1] > cutoff + ptol) continue;
        const T c = a.coef * b.coef;
        const int lp = a.logpow + b.logpow;
        bool merged = false;
        for (auto& t : next) {
          if (t.logpow == lp && std::abs(t.power - pw) <= ptol) {
            t.coef += c;
            merged = true;
            break;
          }
        }
        if (!merged) next.push_back({pw, lp, c});
        maxc = std::max(maxc, std::abs(c));
      }
    }
    prod.clear();
    for (const auto& t : next)
      if (std::abs(t.coef) > T(1e-20) * maxc) prod.push_back(t);
  }

  TailResult<T> res;
  const T wn = w.norm();
  T top = 0;
  T last = 0;
  for (const auto& t : prod) top = std::max(top, t.power);
  for (const auto& t : prod) {
    // Snap powers that are integers up to rounding.
    T pw = t.power;
    if (std::abs(pw - std::round(pw)) <= ptol) pw = std::round(pw);
    const T v = t.coef * tail_primitive(-(pw + T(dim)), t.logpow, eps, wn, general_recurrence);
    res.value += v;
    if (t.power > top - T(2) + ptol) last += v;
  }
  res.last_order_ratio = res.value != T(0) ? std::abs(last / res.value) : T(0);
  return res;
}

template <typename T>
struct ProductIntegral {
  T value = 0;
  std::size_t rays = 0;
  std::size_t evaluations = 0;
  T max_tail_ratio = 0;
  std::size_t tail_warnings = 0;
  bool split = false;
};

/// Reusable integrator for a fixed lattice and exponent vector: Epstein
/// contexts and Taylor tables are built once and shared between runs (for
/// example the epsilon/2 rerun of the error estimate).
template <typename T>
class ProductIntegrator {
public:
  ProductIntegrator(const Lattice<T>& lat, std::vector<T> nus, const QuadratureConfig& cfg)
      : lat_(lat), nus_(std::move(nus)), cfg_(cfg) {
    cfg_.validate();
    if (nus_.empty()) throw DomainError("exponent vector must not be empty");
    const int d = lat_.dim();
    T min_nu = nus_[0];
    for (T v : nus_) {
      if (!std::isfinite(v)) throw DomainError("exponents must be finite");
      min_nu = std::min(min_nu, v);
    }
    switch (cfg_.radial_mode) {
      case RadialMode::automatic: split_ = !(min_nu >= T(d)); break;
      case RadialMode::split: split_ = true; break;
      case RadialMode::full_adaptive:
        if (min_nu < T(d)) throw DomainError("full adaptive radial mode needs all exponents >= d");
        split_ = false;
        break;
    }
    EpsteinOptions eo;
    eo.lambda_scale = cfg_.lambda_scale;
    std::map<T, size_t> seen;
    for (T v : nus_) {
      auto it = seen.find(v);
      if (it == seen.end()) {
        it = seen.emplace(v, contexts_.size()).first;
        contexts_.push_back(std::make_shared<const EpsteinZeta<T>>(lat_, v, eo));
      }
      factor_ctx_.push_back(it->second);
    }
    if (split_) build_taylors();
  }

  bool split() const { return split_; }
  const QuadratureConfig& config() const { return cfg_; }

  ProductIntegral<T> integrate() { return integrate(T(cfg_.epsilon)); }

  /// In automatic mode a full adaptive run that exhausts the depth (exponents
  /// just above d) switches this integrator to split mode for good.
  ProductIntegral<T> integrate(T eps) {
    if (split_ || cfg_.radial_mode != RadialMode::automatic) return run(eps);
    try {
      return run(eps);
    } catch (const ConvergenceError&) {
      split_ = true;
      build_taylors();
      return run(eps);
    }
  }

  ProductIntegral<T> run(T eps) const {
    const int d = lat_.dim();
    const auto cells = duffy_cells(d);
    const auto rule = gauss_legendre<T>(cfg_.gauss_order, T(0), T(0.5));
    const int g = cfg_.gauss_order;
    std::size_t per_cell = 1;
    for (int i = 0; i < d - 1; ++i) per_cell *= static_cast<std::size_t>(g);
    const std::size_t nrays = cells.size() * per_cell;

    struct RayOut {
      T value = 0;
      std::size_t evals = 0;
      T tail_ratio = 0;
    };
    std::vector<RayOut> out(nrays);
    parallel_for(nrays, cfg_.threads, [&](std::size_t r) {
      const DuffyCell& cell = cells[r / per_cell];
      std::size_t idx = r % per_cell;
      std::array<T, kMaxDim> v{};
      T weight = 1;
      for (int i = 0; i < d - 1; ++i) {
        const std::size_t q = idx % static_cast<std::size_t>(g);
        idx /= static_cast<std::size_t>(g);
        v[static_cast<size_t>(i)] = rule.nodes[q];
        weight *= rule.weights[q];
      }
      const Vector<T> w = cell.direction<T>(lat_.inverse_transpose(), v.data());
      RayOut o;
      const T rv = radial(w, eps, o.evals, o.tail_ratio);
      o.value = weight * rv;
      out[r] = o;
    });

    ProductIntegral<T> res;
    std::vector<T> vals(nrays);
    for (std::size_t r = 0; r < nrays; ++r) {
      vals[r] = out[r].value;
      res.evaluations += out[r].evals;
      res.max_tail_ratio = std::max(res.max_tail_ratio, out[r].tail_ratio);
      if (out[r].tail_ratio > T(cfg_.adaptive_rel_tol)) ++res.tail_warnings;
    }
    res.value = std::ldexp(pairwise_sum(vals), d);
    res.rays = nrays;
    res.split = split_;
    return res;
  }

  /// int u^{d-1} prod Z(u w) du over (0, 1/2) along one direction.
  T radial(const Vector<T>& w, T eps, std::size_t& evals, T& tail_ratio) const {
    const int d = lat_.dim();
    auto f = [&](T u) {
      const Vector<T> k = u * w;
      T p = std::pow(u, T(d - 1));
      for (size_t i = 0; i < factor_ctx_.size(); ++i) p *= contexts_[factor_ctx_[i]]->value(k);
      return p;
    };
    AdaptiveOptions<T> ao;
    ao.rel_tol = T(cfg_.adaptive_rel_tol);
    ao.abs_tol = T(cfg_.adaptive_abs_tol);
    ao.max_depth = cfg_.adaptive_max_depth;
    if (!split_) {
      const auto r = integrate_adaptive(f, T(0), T(0.5), ao);
      evals += r.evaluations * factor_ctx_.size();
      tail_ratio = 0;
      return r.value;
    }
    const auto r = integrate_adaptive(f, eps, T(0.5), ao);
    evals += r.evaluations * factor_ctx_.size();
    std::vector<std::vector<SeriesTerm<T>>> series;
    series.reserve(factor_ctx_.size());
    std::vector<std::vector<SeriesTerm<T>>> per_ctx(contexts_.size());
    for (size_t c = 0; c < contexts_.size(); ++c) per_ctx[c] = factor_series(*contexts_[c], *taylors_[c], w);
    for (size_t i = 0; i < factor_ctx_.size(); ++i) series.push_back(per_ctx[factor_ctx_[i]]);
    const auto tail = tail_expansion(series, d, w, eps, cfg_.taylor_order, cfg_.general_log_recurrence);
    tail_ratio = tail.last_order_ratio;
    return r.value + tail.value;
  }

private:
  void build_taylors() {
    if (cfg_.taylor_order > cfg_.max_taylor_order) throw OrderExceeded("Taylor order above the configured ceiling");
    taylors_.clear();
    for (const auto& c : contexts_) taylors_.push_back(std::make_shared<const RegZetaTaylor<T>>(c->taylor(cfg_.taylor_order)));
  }

  Lattice<T> lat_;
  std::vector<T> nus_;
  QuadratureConfig cfg_;
  bool split_ = false;
  std::vector<std::shared_ptr<const EpsteinZeta<T>>> contexts_;
  std::vector<std::shared_ptr<const RegZetaTaylor<T>>> taylors_;
  std::vector<size_t> factor_ctx_;
};

template <typename T>
ProductIntegral<T> integrate_product(const Lattice<T>& lat, const std::vector<T>& nus, const QuadratureConfig& cfg) {
  return ProductIntegrator<T>(lat, nus, cfg).integrate();
}

extern template class ProductIntegrator<double>;
extern template class ProductIntegrator<long double>;

}  // namespace latsum

#endif  // LATSUM_QUADRATURE_HPP
