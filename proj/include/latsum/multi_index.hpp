#ifndef LATSUM_MULTI_INDEX_HPP
#define LATSUM_MULTI_INDEX_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace latsum {

using MultiIndex = std::array<int, 4>;

/// All multi-indices alpha in N^d with |alpha| <= max_order, grouped by total
/// order (graded lexicographic).
class MultiIndexSet {
public:
  MultiIndexSet() = default;
  MultiIndexSet(int dim, int max_order) : dim_(dim), max_order_(max_order) {
    offsets_.assign(static_cast<size_t>(max_order + 2), 0);
    lookup_.assign(static_cast<size_t>(ipow(max_order + 1, dim)), -1);
    for (int k = 0; k <= max_order; ++k) {
      offsets_[static_cast<size_t>(k)] = indices_.size();
      MultiIndex a{};
      fill(a, 0, k);
    }
    offsets_[static_cast<size_t>(max_order + 1)] = indices_.size();
  }

  int dim() const { return dim_; }
  int max_order() const { return max_order_; }
  size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](size_t i) const { return indices_[i]; }

  /// Range [begin, end) of positions holding indices of total order k.
  size_t begin_of_order(int k) const { return offsets_[static_cast<size_t>(k)]; }
  size_t end_of_order(int k) const { return offsets_[static_cast<size_t>(k) + 1]; }

  /// Position of alpha, or -1 if |alpha| > max_order.
  long index_of(const MultiIndex& a) const {
    int tot = 0;
    for (int i = 0; i < dim_; ++i) tot += a[static_cast<size_t>(i)];
    if (tot > max_order_) return -1;
    return lookup_[static_cast<size_t>(key(a))];
  }

private:
  static long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  long key(const MultiIndex& a) const {
    long k = 0;
    for (int i = 0; i < dim_; ++i) k = k * (max_order_ + 1) + a[static_cast<size_t>(i)];
    return k;
  }

  void fill(MultiIndex& a, int pos, int remaining) {
    if (pos == dim_ - 1) {
      a[static_cast<size_t>(pos)] = remaining;
      lookup_[static_cast<size_t>(key(a))] = static_cast<long>(indices_.size());
      indices_.push_back(a);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      a[static_cast<size_t>(pos)] = v;
      fill(a, pos + 1, remaining - v);
    }
    a[static_cast<size_t>(pos)] = 0;
  }

  int dim_ = 0;
  int max_order_ = 0;
  std::vector<MultiIndex> indices_;
  std::vector<size_t> offsets_;
  std::vector<long> lookup_;
};

inline int total_order(const MultiIndex& a, int dim) {
  int s = 0;
  for (int i = 0; i < dim; ++i) s += a[static_cast<size_t>(i)];
  return s;
}

template <typename T>
T factorial(int n) {
  T r = 1;
  for (int i = 2; i <= n; ++i) r *= T(i);
  return r;
}

/// alpha! = prod alpha_i!
template <typename T>
T multi_factorial(const MultiIndex& a, int dim) {
  T r = 1;
  for (int i = 0; i < dim; ++i) r *= factorial<T>(a[static_cast<size_t>(i)]);
  return r;
}

/// Multinomial coefficient |alpha|! / alpha!
template <typename T>
T multinomial(const MultiIndex& a, int dim) {
  return factorial<T>(total_order(a, dim)) / multi_factorial<T>(a, dim);
}

template <typename T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  return factorial<T>(n) / (factorial<T>(k) * factorial<T>(n - k));
}

}  // namespace latsum

#endif  // LATSUM_MULTI_INDEX_HPP
