#ifndef FRI2D_PHANTOM_HPP
#define FRI2D_PHANTOM_HPP

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "freq_grid.hpp"
#include "image.hpp"
#include "trigpoly.hpp"

namespace fri2d {

/// Fourier samples f_hat[k] = int_{[0,1]^2} f(r) e^{-j2pi<k,r>} dr on a
/// centered frequency rectangle.
class FourierSamples : public FreqArray<cplx> {
 public:
  FourierSamples() = default;
  explicit FourierSamples(FreqRect grid) : FreqArray<cplx>(grid) {}
  explicit FourierSamples(FreqArray<cplx> values) : FreqArray<cplx>(std::move(values)) {}
  FourierSamples(FreqRect grid, std::vector<cplx> values)
      : FreqArray<cplx>(grid, std::move(values)) {}

  const FreqRect& grid() const { return rect_; }

  FourierSamples restricted(const FreqRect& sub) const {
    if (!rect_.contains(sub))
      throw DimensionError("FourierSamples: " + to_string(sub) + " is not inside " + to_string(rect_));
    return FourierSamples(resized(sub));
  }

  /// max_k |f[-k] - conj(f[k])| relative to max_k |f[k]|.
  double hermitian_defect() const {
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      const Freq k = rect_.freq(i);
      worst = std::max(worst, std::abs((*this)[-k] - std::conj(data_[i])));
      peak = std::max(peak, std::abs(data_[i]));
    }
    return peak > 0.0 ? worst / peak : 0.0;
  }
};

inline double relative_l2_error(const FreqArray<cplx>& estimate, const FreqArray<cplx>& truth) {
  double num = 0.0, den = 0.0;
  truth.rect().for_each([&](Freq k) {
    num += std::norm(estimate.get(k) - truth[k]);
    den += std::norm(truth[k]);
  });
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// ---------------------------------------------------------------------------
// Ellipse phantoms

struct Ellipse {
  cplx amplitude{1.0, 0.0};
  Point center{0.5, 0.5};
  double semi_a = 0.25;  // along the rotated x axis
  double semi_b = 0.25;
  double angle = 0.0;  // radians, counter-clockwise

  bool contains(Point r) const {
    const double dx = r.x - center.x;
    const double dy = r.y - center.y;
    const double c = std::cos(angle), s = std::sin(angle);
    const double u = (c * dx + s * dy) / semi_a;
    const double v = (-s * dx + c * dy) / semi_b;
    return u * u + v * v <= 1.0;
  }

  /// Axis-aligned bounding box half-widths.
  std::pair<double, double> half_extent() const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {std::hypot(semi_a * c, semi_b * s), std::hypot(semi_a * s, semi_b * c)};
  }
};

struct EllipsePhantom {
  std::vector<Ellipse> ellipses;

  void validate() const {
    for (const auto& e : ellipses) {
      if (!(e.semi_a > 0.0) || !(e.semi_b > 0.0))
        throw ValidationError("EllipsePhantom: semi-axes must be positive");
      const auto [hx, hy] = e.half_extent();
      if (e.center.x - hx < 0.0 || e.center.x + hx > 1.0 || e.center.y - hy < 0.0 ||
          e.center.y + hy > 1.0)
        throw ValidationError("EllipsePhantom: ellipse leaves the unit square");
    }
  }

  cplx operator()(Point r) const {
    cplx v{};
    for (const auto& e : ellipses)
      if (e.contains(r)) v += e.amplitude;
    return v;
  }
};

/// Modified (high-contrast) Shepp-Logan phantom. The standard table on
/// [-1,1]^2 is shrunk by 0.48 and centered at (0.5, 0.5).
inline EllipsePhantom shepp_logan() {
  struct Row {
    double amp, a, b, x0, y0, deg;
  };
  static constexpr Row table[] = {
      {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},          {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
      {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},      {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
      {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},         {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
      {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},       {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
      {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},     {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
  };
  constexpr double shrink = 0.48;
  EllipsePhantom ph;
  for (const auto& r : table)
    ph.ellipses.push_back({cplx(r.amp, 0.0),
                           {0.5 + shrink * r.x0, 0.5 + shrink * r.y0},
                           shrink * r.a,
                           shrink * r.b,
                           r.deg * kPi / 180.0});
  return ph;
}

/// Closed-form Fourier coefficients of a sum of ellipse indicators:
/// A a b e^{-j2pi<k,c>} J1(2 pi rho) / rho, rho = |(a u, b v)|, (u, v) = R(-angle) k.
inline FourierSamples ellipse_ft(const EllipsePhantom& ph, const FreqRect& grid) {
  ph.validate();
  FourierSamples out(grid);
  grid.for_each([&](Freq k) {
    cplx v{};
    for (const auto& e : ph.ellipses) {
      const double c = std::cos(e.angle), s = std::sin(e.angle);
      const double u = c * k.x + s * k.y;
      const double w = -s * k.x + c * k.y;
      const double rho = std::hypot(e.semi_a * u, e.semi_b * w);
      const double shape = rho == 0.0 ? kPi : std::cyl_bessel_j(1.0, kTwoPi * rho) / rho;
      const cplx shift = std::polar(1.0, -kTwoPi * (k.x * e.center.x + k.y * e.center.y));
      v += e.amplitude * (e.semi_a * e.semi_b * shape) * shift;
    }
    out[k] = v;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Regions bounded by a trigonometric curve

/// Affine amplitude <gradient, r> + offset on one region.
struct RegionAmplitude {
  cplx offset{};
  cplx grad_x{};
  cplx grad_y{};

  cplx operator()(Point r) const { return offset + grad_x * r.x + grad_y * r.y; }
  bool is_constant() const { return grad_x == cplx{} && grad_y == cplx{}; }
};

/// Two-region signal split by {mu = 0}: `plus` on {mu > 0}, `minus` on
/// {mu <= 0}. A non-constant amplitude only fits the periodic model when its
/// region stays away from the edges of the unit square; otherwise the
/// periodic extension jumps along x = 0 or y = 0 where mu need not vanish.
struct TrigRegionPhantom {
  TrigPoly mu;
  RegionAmplitude plus{cplx(1.0, 0.0)};
  RegionAmplitude minus{};

  void validate() const {
    if (!mu.is_hermitian()) throw ValidationError("TrigRegionPhantom: mu must be Hermitian");
  }

  cplx value(Point r, double mu_value) const { return mu_value > 0.0 ? plus(r) : minus(r); }
  cplx operator()(Point r) const { return value(r, mu(r).real()); }
};

struct DiracStream {
  std::vector<Point> points;
  std::vector<cplx> weights;

  void validate() const {
    if (points.size() != weights.size())
      throw ValidationError("DiracStream: points and weights differ in length");
    for (const auto& p : points)
      if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
        throw ValidationError("DiracStream: point outside [0,1)^2");
  }
};

inline FourierSamples dirac_stream_ft(const DiracStream& d, const FreqRect& grid) {
  d.validate();
  FourierSamples out(grid);
  grid.for_each([&](Freq k) {
    cplx v{};
    for (std::size_t m = 0; m < d.points.size(); ++m)
      v += d.weights[m] * std::polar(1.0, -kTwoPi * (k.x * d.points[m].x + k.y * d.points[m].y));
    out[k] = v;
  });
  return out;
}

namespace detail {

inline void check_oracle_grid(int n, const FreqRect& grid) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw ResolutionError("raster oracle: N must be a power of two, got " + std::to_string(n));
  const int kmax = std::max(grid.kmax_x, grid.kmax_y);
  if (n < 8 * kmax)
    throw ResolutionError("raster oracle: N = " + std::to_string(n) + " is below 8 x max frequency " +
                          std::to_string(kmax));
}

/// Pixel-center quadrature of the pixel averages: the DFT of the averages
/// times e^{-j pi (k_x + k_y) / N} for the half-pixel offset.
inline FourierSamples pixel_average_spectrum(const Image<cplx>& avg, const FreqRect& grid) {
  const int n = avg.nx;
  FreqArray<cplx> raw = image_spectrum(avg, grid);
  FourierSamples out(grid);
  grid.for_each([&](Freq k) { out[k] = raw[k] * std::polar(1.0, -kPi * (k.x + k.y) / n); });
  return out;
}

inline double wrap01(double x) { return x - std::floor(x); }

inline void check_render_size(int n) {
  if (n < 1) throw ValidationError("raster: grid size must be positive");
}

}  // namespace detail

/// Pixel averages of a TrigRegionPhantom on an N-by-N grid: pixel (i, j) is
/// the mean of the four sub-samples at ((i + origin -+ 1/4)/N, (j + origin -+ 1/4)/N).
/// origin = 1/2 averages over the cell [i/N, (i+1)/N); origin = 0 renders
/// around the pixel position i/N used by ifft_image.
inline Image<cplx> raster_pixel_averages(const TrigRegionPhantom& f, int n, double origin = 0.5) {
  detail::check_render_size(n);
  const TrigPoly& mu = f.mu;
  const FreqRect& s = mu.support();
  const int dx = s.dim_x(), dy = s.dim_y();
  const int sub = 2 * n;
  const double shift = 2.0 * origin - 0.5;
  // partial[j][ix] = sum_ky c[kx, ky] e^{j2pi ky y_j} on the sub-sample rows.
  std::vector<cplx> partial(static_cast<std::size_t>(sub) * dx);
  std::vector<cplx> ey(dy), ex(dx);
  for (int j = 0; j < sub; ++j) {
    const double y = (j + shift) / sub;
    for (int ky = -s.kmax_y; ky <= s.kmax_y; ++ky) ey[ky + s.kmax_y] = std::polar(1.0, kTwoPi * ky * y);
    for (int ix = 0; ix < dx; ++ix) {
      cplx acc{};
      for (int iy = 0; iy < dy; ++iy) acc += mu.at(static_cast<std::size_t>(ix) * dy + iy) * ey[iy];
      partial[static_cast<std::size_t>(j) * dx + ix] = acc;
    }
  }
  const bool affine = !f.plus.is_constant() || !f.minus.is_constant();
  Image<cplx> avg(n, n);
  for (int i = 0; i < sub; ++i) {
    const double x = (i + shift) / sub;
    for (int kx = -s.kmax_x; kx <= s.kmax_x; ++kx) ex[kx + s.kmax_x] = std::polar(1.0, kTwoPi * kx * x);
    for (int j = 0; j < sub; ++j) {
      const cplx* pj = &partial[static_cast<std::size_t>(j) * dx];
      double m = 0.0;
      for (int ix = 0; ix < dx; ++ix) m += (pj[ix] * ex[ix]).real();
      cplx v;
      if (affine)
        v = f.value({detail::wrap01(x), detail::wrap01((j + shift) / sub)}, m);
      else
        v = m > 0.0 ? f.plus.offset : f.minus.offset;
      avg(i / 2, j / 2) += 0.25 * v;
    }
  }
  return avg;
}

inline Image<cplx> raster_pixel_averages(const EllipsePhantom& f, int n, double origin = 0.5) {
  detail::check_render_size(n);
  f.validate();
  const int sub = 2 * n;
  const double shift = 2.0 * origin - 0.5;
  Image<cplx> avg(n, n);
  for (const auto& e : f.ellipses) {
    const auto [hx, hy] = e.half_extent();
    auto lo = [&](double c, double h) { return std::max(0, static_cast<int>(std::floor((c - h) * sub - shift)) - 2); };
    auto hi = [&](double c, double h) {
      return std::min(sub - 1, static_cast<int>(std::ceil((c + h) * sub - shift)) + 2);
    };
    const int i0 = lo(e.center.x, hx), i1 = hi(e.center.x, hx);
    const int j0 = lo(e.center.y, hy), j1 = hi(e.center.y, hy);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j)
        if (e.contains({detail::wrap01((i + shift) / sub), detail::wrap01((j + shift) / sub)}))
          avg(i / 2, j / 2) += 0.25 * e.amplitude;
  }
  return avg;
}

/// Ground-truth raster at the pixel positions r = (i/N, j/N), 2x2 averaged.
template <class Phantom>
Image<double> render_truth(const Phantom& f, int n) {
  const Image<cplx> avg = raster_pixel_averages(f, n, 0.0);
  Image<double> out(n, n);
  for (std::size_t p = 0; p < avg.size(); ++p) out.data[p] = avg.data[p].real();
  return out;
}

/// Quadrature oracle: 2x2-averaged N-by-N raster, FFT, extract `grid`.
/// Error is O(1/N) relative for piecewise-constant signals, dominated by
/// boundary pixels.
template <class Phantom>
FourierSamples raster_dft_oracle(const Phantom& f, int n, const FreqRect& grid) {
  detail::check_oracle_grid(n, grid);
  return detail::pixel_average_spectrum(raster_pixel_averages(f, n), grid);
}

/// Roots of mu along n_lines horizontal lines y = l / n_lines. Each line is
/// split into n_per_line intervals; sign changes are bisected.
inline std::vector<Point> curve_points(const TrigPoly& p, int n_per_line, int n_lines) {
  if (!p.is_hermitian()) throw ValidationError("curve_points: polynomial is not Hermitian");
  if (p.is_constant()) throw ValidationError("curve_points: polynomial is constant");
  if (n_per_line < 2 || n_lines < 1) throw ValidationError("curve_points: need n_per_line >= 2, n_lines >= 1");
  const FreqRect& s = p.support();
  std::vector<Point> roots;
  std::vector<cplx> line(s.dim_x());
  for (int l = 0; l < n_lines; ++l) {
    const double y = static_cast<double>(l) / n_lines;
    for (int kx = -s.kmax_x; kx <= s.kmax_x; ++kx) {
      cplx acc{};
      for (int ky = -s.kmax_y; ky <= s.kmax_y; ++ky) acc += p[{kx, ky}] * std::polar(1.0, kTwoPi * ky * y);
      line[kx + s.kmax_x] = acc;
    }
    auto f = [&](double x) {
      double v = 0.0;
      for (int kx = -s.kmax_x; kx <= s.kmax_x; ++kx)
        v += (line[kx + s.kmax_x] * std::polar(1.0, kTwoPi * kx * x)).real();
      return v;
    };
    double xa = 0.0, fa = f(0.0);
    for (int i = 1; i <= n_per_line; ++i) {
      const double xb = static_cast<double>(i) / n_per_line;
      const double fb = i == n_per_line ? f(0.0) : f(xb);
      if ((fa > 0.0) != (fb > 0.0)) {
        double lo = xa, hi = xb, flo = fa;
        double mid = 0.5 * (lo + hi), fm = f(mid);
        for (int it = 0; it < 200 && std::abs(fm) > 1e-13 && hi - lo > 1e-16; ++it) {
          if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
          mid = 0.5 * (lo + hi);
          fm = f(mid);
        }
        if (mid >= 1.0) mid -= 1.0;
        roots.push_back({mid, y});
      }
      xa = xb;
      fa = fb;
    }
  }
  return roots;
}

}  // namespace fri2d

#endif  // FRI2D_PHANTOM_HPP
