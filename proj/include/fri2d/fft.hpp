#ifndef FRI2D_FFT_HPP
#define FRI2D_FFT_HPP

#include <fftw3.h>

#include <complex>
#include <memory>
#include <type_traits>
#include <vector>

#include "freq_grid.hpp"
#include "image.hpp"

namespace fri2d {

/// Reusable forward/backward plans over an owned nx-by-ny buffer.
class Fft2d {
 public:
  Fft2d(int nx, int ny)
      : nx_(nx), ny_(ny), buf_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    auto* b = reinterpret_cast<fftw_complex*>(buf_.data());
    fwd_ = fftw_plan_dft_2d(nx, ny, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(nx, ny, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft2d() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  std::vector<cplx>& buffer() { return buf_; }
  cplx& at(int i, int j) { return buf_[static_cast<std::size_t>(i) * ny_ + j]; }
  /// Buffer slot holding frequency k.
  cplx& at(Freq k) { return at(((k.x % nx_) + nx_) % nx_, ((k.y % ny_) + ny_) % ny_); }
  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }

 private:
  int nx_, ny_;
  std::vector<cplx> buf_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

/// Unnormalized in-place 2-D DFT of a row-major nx-by-ny complex array.
/// Forward uses e^{-j2pi(..)}, backward e^{+j2pi(..)}. Plans are created with
/// FFTW_ESTIMATE so the transform is deterministic run to run.
inline void fft2d_inplace(std::vector<cplx>& data, int nx, int ny, bool forward) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, decltype(&fftw_destroy_plan)> plan(
      fftw_plan_dft_2d(nx, ny, buf, buf, forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE),
      &fftw_destroy_plan);
  fftw_execute(plan.get());
}

/// Fourier coefficients (1/N^2) sum_r img(r) e^{-j2pi<k,r>} on `rect`,
/// pixel (i, j) taken at r = (i/nx, j/ny).
inline FreqArray<cplx> image_spectrum(const Image<cplx>& img, const FreqRect& rect) {
  std::vector<cplx> buf = img.data;
  fft2d_inplace(buf, img.nx, img.ny, true);
  const double scale = 1.0 / (static_cast<double>(img.nx) * img.ny);
  FreqArray<cplx> out(rect);
  rect.for_each([&](Freq k) {
    const int i = ((k.x % img.nx) + img.nx) % img.nx;
    const int j = ((k.y % img.ny) + img.ny) % img.ny;
    out[k] = buf[static_cast<std::size_t>(i) * img.ny + j] * scale;
  });
  return out;
}

/// Inverse of image_spectrum for coefficients that fit in the grid:
/// img(i, j) = sum_k c[k] e^{j2pi(k_x i/nx + k_y j/ny)}.
inline Image<cplx> spectrum_image(const FreqArray<cplx>& coeffs, int nx, int ny) {
  const FreqRect& rect = coeffs.rect();
  if (rect.dim_x() > nx || rect.dim_y() > ny)
    throw DimensionError("spectrum_image: " + to_string(rect) + " coefficients do not fit a " +
                         std::to_string(nx) + "x" + std::to_string(ny) + " image");
  Image<cplx> img(nx, ny);
  rect.for_each([&](Freq k) {
    const int i = ((k.x % nx) + nx) % nx;
    const int j = ((k.y % ny) + ny) % ny;
    img(i, j) = coeffs[k];
  });
  fft2d_inplace(img.data, nx, ny, false);
  return img;
}

}  // namespace fri2d

#endif  // FRI2D_FFT_HPP
