#ifndef FRI2D_FREQ_GRID_HPP
#define FRI2D_FREQ_GRID_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fri2d {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Integer frequency pair (k_x, k_y).
struct Freq {
  int x = 0;
  int y = 0;

  friend constexpr Freq operator+(Freq a, Freq b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Freq operator-(Freq a, Freq b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Freq operator-(Freq a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(Freq a, Freq b) = default;
};

/// Centered odd frequency rectangle {(k,l) : |k| <= kmax_x, |l| <= kmax_y}.
///
/// Linear indexing is row-major with k_x as the slow index, which is also the
/// order used by the text formats and by the columns of the lifted matrices.
struct FreqRect {
  int kmax_x = 0;
  int kmax_y = 0;

  constexpr FreqRect() = default;
  constexpr FreqRect(int kx, int ky) : kmax_x(kx), kmax_y(ky) {
    if (kx < 0 || ky < 0) throw ValidationError("FreqRect: kmax must be non-negative");
  }

  /// Rectangle with the given odd dimensions (K, L).
  static FreqRect from_dims(int K, int L) {
    if (K < 1 || L < 1 || K % 2 == 0 || L % 2 == 0)
      throw ValidationError("FreqRect: dimensions must be odd and positive, got " +
                            std::to_string(K) + "x" + std::to_string(L));
    return {(K - 1) / 2, (L - 1) / 2};
  }

  constexpr int dim_x() const { return 2 * kmax_x + 1; }
  constexpr int dim_y() const { return 2 * kmax_y + 1; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(dim_x()) * static_cast<std::size_t>(dim_y());
  }

  constexpr bool contains(Freq k) const {
    return k.x >= -kmax_x && k.x <= kmax_x && k.y >= -kmax_y && k.y <= kmax_y;
  }
  constexpr bool contains(const FreqRect& other) const {
    return other.kmax_x <= kmax_x && other.kmax_y <= kmax_y;
  }

  constexpr std::size_t index(Freq k) const {
    return static_cast<std::size_t>(k.x + kmax_x) * static_cast<std::size_t>(dim_y()) +
           static_cast<std::size_t>(k.y + kmax_y);
  }
  constexpr Freq freq(std::size_t idx) const {
    const auto dy = static_cast<std::size_t>(dim_y());
    return {static_cast<int>(idx / dy) - kmax_x, static_cast<int>(idx % dy) - kmax_y};
  }

  constexpr FreqRect dilate(int m) const { return FreqRect(m * kmax_x, m * kmax_y); }

  /// Minkowski sum, the support of a product of trigonometric polynomials.
  friend constexpr FreqRect operator+(const FreqRect& a, const FreqRect& b) {
    return FreqRect(a.kmax_x + b.kmax_x, a.kmax_y + b.kmax_y);
  }
  friend constexpr bool operator==(const FreqRect&, const FreqRect&) = default;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int kx = -kmax_x; kx <= kmax_x; ++kx)
      for (int ky = -kmax_y; ky <= kmax_y; ++ky) fn(Freq{kx, ky});
  }
};

inline std::string to_string(const FreqRect& r) {
  return std::to_string(r.dim_x()) + "x" + std::to_string(r.dim_y());
}

/// Dense array of values indexed by the frequencies of a FreqRect.
template <class T>
class FreqArray {
 public:
  using value_type = T;

  FreqArray() : data_(1, T{}) {}
  explicit FreqArray(FreqRect rect, T fill = T{}) : rect_(rect), data_(rect.size(), fill) {}
  FreqArray(FreqRect rect, std::vector<T> values) : rect_(rect), data_(std::move(values)) {
    if (data_.size() != rect_.size())
      throw DimensionError("FreqArray: value count does not match rectangle " + to_string(rect_));
  }

  const FreqRect& rect() const { return rect_; }
  std::size_t size() const { return data_.size(); }

  T& operator[](Freq k) { return data_[rect_.index(k)]; }
  const T& operator[](Freq k) const { return data_[rect_.index(k)]; }
  T& at(std::size_t i) { return data_[i]; }
  const T& at(std::size_t i) const { return data_[i]; }

  /// Value at k, or zero outside the rectangle.
  T get(Freq k) const { return rect_.contains(k) ? data_[rect_.index(k)] : T{}; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  /// Copy onto another rectangle, zero-filling or truncating.
  FreqArray resized(const FreqRect& target) const {
    FreqArray out(target);
    target.for_each([&](Freq k) { out[k] = get(k); });
    return out;
  }

  friend bool operator==(const FreqArray&, const FreqArray&) = default;

 protected:
  FreqRect rect_;
  std::vector<T> data_;
};

template <class T>
double l2_norm(const FreqArray<T>& a) {
  double s = 0.0;
  for (const auto& v : a.values()) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace fri2d

#endif  // FRI2D_FREQ_GRID_HPP
