#ifndef FRI2D_IMAGE_HPP
#define FRI2D_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fri2d {

/// Dense nx-by-ny raster. Pixel (i, j) sits at r = (i / nx, j / ny), so i is
/// the x index; storage is row-major in i.
template <class T>
struct Image {
  int nx = 0;
  int ny = 0;
  std::vector<T> data;

  Image() = default;
  Image(int nx_, int ny_, T fill = T{})
      : nx(nx_), ny(ny_), data(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), fill) {}

  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * ny + j]; }
  const T& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * ny + j]; }

  /// Periodic access.
  const T& wrapped(int i, int j) const {
    i %= nx;
    j %= ny;
    if (i < 0) i += nx;
    if (j < 0) j += ny;
    return (*this)(i, j);
  }

  std::size_t size() const { return data.size(); }
  friend bool operator==(const Image&, const Image&) = default;
};

using Mask = Image<std::uint8_t>;

/// 3x3 periodic dilation of a binary mask.
inline Mask dilate(const Mask& m) {
  Mask out(m.nx, m.ny, 0);
  for (int i = 0; i < m.nx; ++i)
    for (int j = 0; j < m.ny; ++j) {
      if (!m(i, j)) continue;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          int a = (i + di + m.nx) % m.nx;
          int b = (j + dj + m.ny) % m.ny;
          out(a, b) = 1;
        }
    }
  return out;
}

/// True when every marked pixel of `a` lies in the 1-pixel dilation of `b`
/// and vice versa.
inline bool within_one_pixel(const Mask& a, const Mask& b) {
  if (a.nx != b.nx || a.ny != b.ny) return false;
  const Mask da = dilate(a);
  const Mask db = dilate(b);
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a.data[p] && !db.data[p]) return false;
    if (b.data[p] && !da.data[p]) return false;
  }
  return true;
}

inline std::size_t count_marked(const Mask& m) {
  std::size_t n = 0;
  for (auto v : m.data) n += v ? 1 : 0;
  return n;
}

}  // namespace fri2d

#endif  // FRI2D_IMAGE_HPP
