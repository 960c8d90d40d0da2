#ifndef LATSUM_SUMMATION_HPP
#define LATSUM_SUMMATION_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace latsum {

/// Neumaier's improved Kahan summation.
template <typename T>
class CompensatedSum {
public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

private:
  T sum_ = 0;
  T comp_ = 0;
};

/// Pairwise (cascade) sum in a fixed tree order over [first, last).
template <typename T>
T pairwise_sum(const T* first, std::size_t count) {
  if (count == 0) return T(0);
  if (count <= 8) {
    T s = first[0];
    for (std::size_t i = 1; i < count; ++i) s += first[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(first, half) + pairwise_sum(first + half, count - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace latsum

#endif  // LATSUM_SUMMATION_HPP
