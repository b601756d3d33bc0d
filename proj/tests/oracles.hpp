#ifndef FRI2D_TESTS_ORACLES_HPP
#define FRI2D_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls the
// code path it is used to check.

#include <cmath>
#include <complex>
#include <vector>

#include <fri2d/freq_grid.hpp>
#include <fri2d/image.hpp>
#include <fri2d/trigpoly.hpp>

namespace fri2d::oracle {

/// Term-by-term double sum in long double.
inline std::complex<long double> direct_eval(const FreqArray<cplx>& c, double x, double y) {
  const long double two_pi = 6.283185307179586476925286766559L;
  std::complex<long double> s{};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Freq k = c.rect().freq(i);
    const long double ph = two_pi * (static_cast<long double>(k.x) * x + static_cast<long double>(k.y) * y);
    s += std::complex<long double>(c.at(i).real(), c.at(i).imag()) *
         std::complex<long double>(std::cos(ph), std::sin(ph));
  }
  return s;
}

inline double direct_eval_real(const FreqArray<cplx>& c, double x, double y) {
  return static_cast<double>(direct_eval(c, x, y).real());
}

/// sum_m w_m e^{-j2pi<k, r_m>} in long double.
inline std::complex<long double> direct_dirac(const std::vector<Point>& pts, const std::vector<cplx>& w, Freq k) {
  const long double two_pi = 6.283185307179586476925286766559L;
  std::complex<long double> s{};
  for (std::size_t m = 0; m < pts.size(); ++m) {
    const long double ph = -two_pi * (static_cast<long double>(k.x) * pts[m].x + static_cast<long double>(k.y) * pts[m].y);
    s += std::complex<long double>(w[m].real(), w[m].imag()) * std::complex<long double>(std::cos(ph), std::sin(ph));
  }
  return s;
}

/// Sign-change raster on a (factor*N)^2 grid, collapsed to N^2 by "any fine
/// cell in the block is marked".
inline Mask oversampled_zero_set(const FreqArray<cplx>& c, int n, int factor) {
  const int fine = n * factor;
  std::vector<double> v(static_cast<std::size_t>(fine) * fine);
  for (int i = 0; i < fine; ++i)
    for (int j = 0; j < fine; ++j)
      v[static_cast<std::size_t>(i) * fine + j] = direct_eval_real(c, static_cast<double>(i) / fine,
                                                                   static_cast<double>(j) / fine);
  auto at = [&](int i, int j) { return v[static_cast<std::size_t>(i % fine) * fine + (j % fine)] > 0.0; };
  Mask out(n, n, 0);
  for (int i = 0; i < fine; ++i)
    for (int j = 0; j < fine; ++j)
      if (at(i, j) != at(i + 1, j) || at(i, j) != at(i, j + 1)) out(i / factor, j / factor) = 1;
  return out;
}

/// Count of sign changes of x -> mu(x, y) over `samples` uniform points.
inline int dense_sign_changes(const FreqArray<cplx>& c, double y, int samples) {
  int count = 0;
  bool prev = direct_eval_real(c, 0.0, y) > 0.0;
  const bool first = prev;
  for (int i = 1; i < samples; ++i) {
    const bool cur = direct_eval_real(c, static_cast<double>(i) / samples, y) > 0.0;
    count += cur != prev ? 1 : 0;
    prev = cur;
  }
  count += prev != first ? 1 : 0;
  return count;
}

/// Coefficients of the indicator of {cos(2 pi x) > 0}: the strips
/// [0, 1/4) and (3/4, 1). Non-zero only for k_y = 0.
inline cplx strip_coefficient(Freq k) {
  if (k.y != 0) return 0.0;
  if (k.x == 0) return 0.5;
  const double pi = 3.14159265358979323846;
  return std::sin(pi * k.x / 2.0) / (pi * k.x);
}

}  // namespace fri2d::oracle

#endif  // FRI2D_TESTS_ORACLES_HPP
