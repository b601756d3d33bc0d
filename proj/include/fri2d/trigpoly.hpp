#ifndef FRI2D_TRIGPOLY_HPP
#define FRI2D_TRIGPOLY_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "freq_grid.hpp"
#include "image.hpp"

namespace fri2d {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Band-limited periodic trigonometric polynomial
///   mu(r) = sum_{k in support} c[k] e^{j2pi<k,r>},  r in [0,1)^2.
class TrigPoly : public FreqArray<cplx> {
 public:
  TrigPoly() = default;
  explicit TrigPoly(FreqRect support) : FreqArray<cplx>(support) {}
  explicit TrigPoly(FreqArray<cplx> coeffs) : FreqArray<cplx>(std::move(coeffs)) {}
  TrigPoly(FreqRect support, std::vector<cplx> coeffs)
      : FreqArray<cplx>(support, std::move(coeffs)) {}

  const FreqRect& support() const { return rect_; }

  static TrigPoly constant(cplx c) {
    TrigPoly p(FreqRect(0, 0));
    p[{0, 0}] = c;
    return p;
  }

  double l1_norm() const {
    double s = 0.0;
    for (const auto& c : data_) s += std::abs(c);
    return s;
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& c : data_) m = std::max(m, std::abs(c));
    return m;
  }

  /// c[-k] == conj(c[k]) to `rel_tol` times the largest coefficient.
  bool is_hermitian(double rel_tol = 1e-12) const {
    const double tol = rel_tol * std::max(1.0, max_abs());
    for (std::size_t i = 0; i < data_.size(); ++i) {
      const Freq k = rect_.freq(i);
      if (std::abs((*this)[-k] - std::conj(data_[i])) > tol) return false;
    }
    return true;
  }

  bool is_constant() const {
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!(rect_.freq(i) == Freq{0, 0}) && data_[i] != cplx{}) return false;
    return true;
  }

  cplx operator()(Point r) const {
    const double x = r.x - std::floor(r.x);
    const double y = r.y - std::floor(r.y);
    std::vector<cplx> ey(rect_.dim_y());
    for (int ky = -rect_.kmax_y; ky <= rect_.kmax_y; ++ky)
      ey[ky + rect_.kmax_y] = std::polar(1.0, kTwoPi * ky * y);
    cplx sum{};
    for (int kx = -rect_.kmax_x; kx <= rect_.kmax_x; ++kx) {
      cplx row{};
      for (int ky = -rect_.kmax_y; ky <= rect_.kmax_y; ++ky) row += (*this)[{kx, ky}] * ey[ky + rect_.kmax_y];
      sum += row * std::polar(1.0, kTwoPi * kx * x);
    }
    return sum;
  }

  std::vector<cplx> eval(std::span<const Point> points) const {
    std::vector<cplx> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back((*this)(p));
    return out;
  }

  /// Values on an nx-by-ny raster at r = ((i + offset_x)/nx, (j + offset_y)/ny),
  /// evaluated separably in O(nx * ny * dim_x).
  Image<cplx> eval_grid(int nx, int ny, double offset_x = 0.0, double offset_y = 0.0) const {
    const int dx = rect_.dim_x();
    const int dy = rect_.dim_y();
    // partial[j][kx] = sum_ky c[kx,ky] e^{j2pi ky y_j}
    std::vector<cplx> partial(static_cast<std::size_t>(ny) * dx);
    std::vector<cplx> ey(dy);
    for (int j = 0; j < ny; ++j) {
      const double y = (j + offset_y) / ny;
      for (int ky = -rect_.kmax_y; ky <= rect_.kmax_y; ++ky)
        ey[ky + rect_.kmax_y] = std::polar(1.0, kTwoPi * ky * y);
      for (int ix = 0; ix < dx; ++ix) {
        cplx s{};
        const cplx* c = &data_[static_cast<std::size_t>(ix) * dy];
        for (int iy = 0; iy < dy; ++iy) s += c[iy] * ey[iy];
        partial[static_cast<std::size_t>(j) * dx + ix] = s;
      }
    }
    Image<cplx> out(nx, ny);
    std::vector<cplx> ex(dx);
    for (int i = 0; i < nx; ++i) {
      const double x = (i + offset_x) / nx;
      for (int kx = -rect_.kmax_x; kx <= rect_.kmax_x; ++kx)
        ex[kx + rect_.kmax_x] = std::polar(1.0, kTwoPi * kx * x);
      for (int j = 0; j < ny; ++j) {
        cplx s{};
        const cplx* pj = &partial[static_cast<std::size_t>(j) * dx];
        for (int ix = 0; ix < dx; ++ix) s += pj[ix] * ex[ix];
        out(i, j) = s;
      }
    }
    return out;
  }

  Image<cplx> eval_grid(int n) const { return eval_grid(n, n); }
};

/// Coefficient convolution; the support is the Minkowski sum.
inline TrigPoly multiply(const TrigPoly& p, const TrigPoly& q) {
  TrigPoly out(p.support() + q.support());
  p.support().for_each([&](Freq a) {
    const cplx ca = p[a];
    if (ca == cplx{}) return;
    q.support().for_each([&](Freq b) { out[a + b] += ca * q[b]; });
  });
  return out;
}

inline TrigPoly power(const TrigPoly& p, int n) {
  if (n < 1) throw ValidationError("power: exponent must be >= 1");
  TrigPoly out = p;
  for (int i = 1; i < n; ++i) out = multiply(out, p);
  return out;
}

/// (d/dx p, d/dy p) on the same support.
inline std::pair<TrigPoly, TrigPoly> gradient_coeffs(const TrigPoly& p) {
  TrigPoly gx(p.support()), gy(p.support());
  p.support().for_each([&](Freq k) {
    gx[k] = cplx(0.0, kTwoPi * k.x) * p[k];
    gy[k] = cplx(0.0, kTwoPi * k.y) * p[k];
  });
  return {std::move(gx), std::move(gy)};
}

/// Removes the arbitrary global phase of a null vector and symmetrizes it.
///
/// The phase e^{-j theta}, theta = arg(sum_k c[k] c[-k]) / 2, maximizes the
/// Hermitian part; the result is then (c[k] + conj(c[-k])) / 2, Hermitian
/// exactly. The output is determined up to a global sign.
inline TrigPoly hermitian_project(const FreqArray<cplx>& coeffs) {
  const FreqRect& rect = coeffs.rect();
  double energy = 0.0;
  cplx s{};
  rect.for_each([&](Freq k) {
    s += coeffs[k] * coeffs[-k];
    energy += std::norm(coeffs[k]);
  });
  if (energy == 0.0) throw DegenerateError("hermitian_project: all-zero coefficients");
  const cplx rot = std::abs(s) > 0.0 ? std::polar(1.0, -0.5 * std::arg(s)) : cplx(1.0, 0.0);
  TrigPoly out(rect);
  rect.for_each([&](Freq k) {
    if (k.x < 0 || (k.x == 0 && k.y < 0)) return;
    const cplx a = rot * coeffs[k];
    const cplx b = rot * coeffs[-k];
    const cplx h = 0.5 * (a + std::conj(b));
    out[k] = h;
    out[-k] = std::conj(h);
  });
  // DC: the loop above writes 0.5 (a + conj a) = Re(a).
  return out;
}

enum class ZeroSetMode { sign_change, threshold };

/// Binary N-by-N raster of {mu = 0}. Sign-change mode marks pixel (i, j) when
/// the sign of mu differs from its +x or +y neighbor (periodic); threshold
/// mode marks |mu| <= tol * max|mu|.
inline Mask zero_set_raster(const TrigPoly& p, int n, ZeroSetMode mode = ZeroSetMode::sign_change,
                            double tol = 1e-3) {
  if (!p.is_hermitian()) throw ValidationError("zero_set_raster: polynomial is not Hermitian");
  const FreqRect& s = p.support();
  if (n < 2 * (s.kmax_x + s.kmax_y) + 2)
    throw ValidationError("zero_set_raster: grid too coarse for polynomial of degree " + to_string(s));
  const Image<cplx> v = p.eval_grid(n);
  Mask out(n, n, 0);
  if (mode == ZeroSetMode::sign_change) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const bool here = v(i, j).real() > 0.0;
        const bool right = v.wrapped(i + 1, j).real() > 0.0;
        const bool down = v.wrapped(i, j + 1).real() > 0.0;
        out(i, j) = (here != right || here != down) ? 1 : 0;
      }
  } else {
    double vmax = 0.0;
    for (const auto& z : v.data) vmax = std::max(vmax, std::abs(z.real()));
    for (std::size_t q = 0; q < v.size(); ++q)
      out.data[q] = std::abs(v.data[q].real()) <= tol * vmax ? 1 : 0;
  }
  return out;
}

/// Random Hermitian polynomial with coefficient magnitudes decaying like
/// 1 / (1 + |k|)^decay. Used for synthetic curves.
inline TrigPoly random_hermitian(FreqRect support, std::uint64_t seed, double decay = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  TrigPoly p(support);
  support.for_each([&](Freq k) {
    if (k.x < 0 || (k.x == 0 && k.y < 0)) return;
    const double scale = std::pow(1.0 + std::hypot(k.x, k.y), -decay);
    if (k == Freq{0, 0}) {
      p[k] = cplx(scale * gauss(rng), 0.0);
      return;
    }
    const double re = gauss(rng);
    const double im = gauss(rng);
    p[k] = scale * cplx(re, im);
    p[-k] = std::conj(p[k]);
  });
  return p;
}

}  // namespace fri2d

#endif  // FRI2D_TRIGPOLY_HPP
