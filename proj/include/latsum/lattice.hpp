#ifndef LATSUM_LATTICE_HPP
#define LATSUM_LATTICE_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "latsum/errors.hpp"

namespace latsum {

inline constexpr int kMaxDim = 4;

/// Dense d x d matrix, d <= 4, row-major, stored inline.
template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, kMaxDim, kMaxDim>;

/// Dense d-vector, d <= 4, stored inline.
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

using IntVector = Eigen::Matrix<int, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// Bravais lattice A Z^d. Immutable after construction.
template <typename T>
class Lattice {
public:
  explicit Lattice(const Matrix<T>& generator) : a_(generator) {
    const auto d = a_.rows();
    if (d < 1 || d != a_.cols()) throw InvalidLattice("generator must be square");
    if (d > kMaxDim) throw InvalidLattice("lattice dimension above 4 is not supported");
    if (!a_.allFinite()) throw InvalidLattice("generator has non-finite entries");
    volume_ = std::abs(a_.determinant());
    const T scale = a_.cwiseAbs().maxCoeff();
    if (!(volume_ > T(0)) || volume_ <= std::pow(scale, T(d)) * T(64) * Eigen::NumTraits<T>::epsilon())
      throw InvalidLattice("generator is singular");
    a_inv_t_ = a_.inverse().transpose();
  }

  int dim() const { return static_cast<int>(a_.rows()); }
  const Matrix<T>& generator() const { return a_; }
  /// A^{-T}: generator of the reciprocal lattice.
  const Matrix<T>& inverse_transpose() const { return a_inv_t_; }
  T volume() const { return volume_; }

  Lattice reciprocal() const { return Lattice(a_inv_t_); }
  Lattice scaled(T s) const { return Lattice(Matrix<T>(a_ * s)); }

  template <typename U>
  Lattice<U> cast() const {
    return Lattice<U>(Matrix<U>(a_.template cast<U>()));
  }

  /// Shortest nonzero vector length, by enumeration over a box that is
  /// guaranteed to contain it.
  T shortest_vector() const { return shortest_vector_of(a_); }

private:
  static T shortest_vector_of(const Matrix<T>& m) {
    const int d = static_cast<int>(m.rows());
    // Any column is an upper bound; |m n| >= sigma_min |n|_2 bounds the box.
    T best = m.col(0).norm();
    for (int j = 1; j < d; ++j) best = std::min(best, T(m.col(j).norm()));
    Eigen::JacobiSVD<Matrix<T>> svd(m);
    const T smin = svd.singularValues()(d - 1);
    const int nmax = static_cast<int>(std::ceil(best / smin));
    IntVector n = IntVector::Constant(d, -nmax);
    while (true) {
      if (!n.isZero()) {
        const T len = (m * n.template cast<T>()).norm();
        best = std::min(best, len);
      }
      int i = 0;
      for (; i < d; ++i) {
        if (++n(i) <= nmax) break;
        n(i) = -nmax;
      }
      if (i == d) break;
    }
    return best;
  }

  Matrix<T> a_;
  Matrix<T> a_inv_t_;
  T volume_{};
};

template <typename T>
T volume(const Lattice<T>& lat) {
  return lat.volume();
}

template <typename T>
Lattice<T> reciprocal(const Lattice<T>& lat) {
  return lat.reciprocal();
}

/// The elementary cell A^{-T}(-1/2,1/2)^d of the reciprocal lattice, kept
/// implicitly as the map A^{-T} applied to the unit cube.
template <typename T>
class BrillouinZone {
public:
  explicit BrillouinZone(const Lattice<T>& parent) : parent_(parent) {}

  const Lattice<T>& parent() const { return parent_; }
  const Matrix<T>& box() const { return parent_.inverse_transpose(); }
  T volume() const { return T(1) / parent_.volume(); }

  /// Cube coordinates A^T k of a wave vector.
  Vector<T> cube_coordinates(const Vector<T>& k) const {
    return parent_.generator().transpose() * k;
  }

  bool contains(const Vector<T>& k) const {
    return (cube_coordinates(k).array().abs() <= T(0.5)).all();
  }

  /// Representative of k modulo the reciprocal lattice inside the closed
  /// zone. Vectors already inside are returned unchanged.
  Vector<T> reduce(const Vector<T>& k) const {
    Vector<T> c = cube_coordinates(k);
    if ((c.array().abs() <= T(0.5)).all()) return k;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) -= std::round(c(i));
    return box() * c;
  }

  /// Largest |k| over the closed zone (attained at a corner).
  T max_radius() const {
    const int d = parent_.dim();
    T best = 0;
    for (int mask = 0; mask < (1 << d); ++mask) {
      Vector<T> c(d);
      for (int i = 0; i < d; ++i) c(i) = (mask >> i & 1) ? T(0.5) : T(-0.5);
      best = std::max(best, T((box() * c).norm()));
    }
    return best;
  }

private:
  Lattice<T> parent_;
};

enum class LatticeName { integer_1d, square, hexagonal, fcc, bcc };

LatticeName parse_lattice_name(std::string_view name);
std::string_view to_string(LatticeName name);

/// Catalog lattices at the given scale. fcc and bcc have unit
/// nearest-neighbour distance at scale 1.
template <typename T>
Lattice<T> named_lattice(LatticeName name, T scale = T(1)) {
  if (!(scale > T(0))) throw InvalidLattice("lattice scale must be positive");
  Matrix<T> a;
  switch (name) {
    case LatticeName::integer_1d:
      a.resize(1, 1);
      a << T(1);
      break;
    case LatticeName::square:
      a = Matrix<T>::Identity(2, 2);
      break;
    case LatticeName::hexagonal:
      a.resize(2, 2);
      a << T(1), T(1) / T(2), T(0), std::sqrt(T(3)) / T(2);
      break;
    case LatticeName::fcc: {
      a.resize(3, 3);
      a << 1, 1, 0, 1, 0, 1, 0, 1, 1;
      a /= std::sqrt(T(2));
      break;
    }
    case LatticeName::bcc: {
      const T r2 = std::sqrt(T(2));
      a.resize(3, 3);
      a << T(1), T(1), T(0), r2, T(0), r2, T(0), r2, r2;
      a /= std::sqrt(T(3));
      break;
    }
  }
  return Lattice<T>(Matrix<T>(a * scale));
}

/// Parsed lattice description: either a catalog name with a scale or an
/// explicit row-listed matrix.
struct LatticeSpec {
  bool named = true;
  LatticeName name = LatticeName::integer_1d;
  long double scale = 1.0L;
  int dim = 0;
  std::array<long double, kMaxDim * kMaxDim> rows{};

  template <typename T>
  Lattice<T> build() const {
    if (named) return named_lattice<T>(name, T(scale));
    Matrix<T> a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = T(rows[static_cast<size_t>(i * dim + j)]);
    return Lattice<T>(Matrix<T>(a * T(scale)));
  }

  /// Canonical text form; round-trips through parse_lattice_spec.
  std::string to_string() const;
};

/// Accepts a catalog name ("Z", "sq", "hex", "fcc", "bcc" and long forms) or
/// an explicit matrix "d=2;A=1,0.5;0,0.8660254037844386" (rows separated by ';').
LatticeSpec parse_lattice_spec(std::string_view text, long double scale = 1.0L);

}  // namespace latsum

#endif  // LATSUM_LATTICE_HPP
