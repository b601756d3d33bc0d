#ifndef FRI2D_TV_HPP
#define FRI2D_TV_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "freq_grid.hpp"
#include "image.hpp"
#include "phantom.hpp"
#include "trigpoly.hpp"

namespace fri2d {

/// Non-negative pixel weights; zero on the curve so edges there are free.
using WeightMap = Image<double>;

/// |mu(i/N, j/N)| normalized to a maximum of one.
inline WeightMap weight_map(const TrigPoly& mu, int n) {
  if (!mu.is_hermitian()) throw ValidationError("weight_map: mu is not Hermitian");
  if (n < 1) throw ValidationError("weight_map: grid size must be positive");
  const Image<cplx> v = mu.eval_grid(n);
  WeightMap w(n, n);
  double peak = 0.0;
  for (std::size_t p = 0; p < v.size(); ++p) {
    w.data[p] = std::abs(v.data[p]);
    peak = std::max(peak, w.data[p]);
  }
  if (peak == 0.0) throw DegenerateError("weight_map: mu vanishes on the whole grid");
  for (auto& x : w.data) x /= peak;
  return w;
}

inline WeightMap uniform_weights(int n) { return WeightMap(n, n, 1.0); }

struct TvParams {
  int iters = 500;
  // Steps with tau sigma L^2 < 1, L = ||w||_inf sqrt(8). Zero selects
  // tau = 0.99 / (L b) and sigma = 0.99 b / L with b = 1.5 N: a small primal
  // step keeps the objective trace monotone at the price of speed.
  double tau = 0.0;
  double sigma = 0.0;
  bool track_consistency = false;
};

struct TvResult {
  Image<double> image;            // real part of the final iterate
  Image<cplx> iterate;            // final complex iterate
  std::vector<double> objective;  // sum_ij w ||grad g||, after each projection
  double max_consistency_error = 0.0;  // max over iterations of max_Gamma |g_hat - f_hat|, if tracked
};

namespace detail {

struct Grad {
  cplx x, y;
};

inline Grad forward_diff(const Image<cplx>& g, int i, int j) {
  const int n = g.nx;
  const int ip = i + 1 == n ? 0 : i + 1;
  const int jp = j + 1 == g.ny ? 0 : j + 1;
  return {g(ip, j) - g(i, j), g(i, jp) - g(i, j)};
}

}  // namespace detail

/// Weighted isotropic TV recovery under the hard constraint g_hat = f_hat on
/// Gamma, by primal-dual iteration with K = W grad (periodic forward
/// differences) and the data set handled by exact projection.
inline TvResult weighted_tv_recover(const FourierSamples& observed, const WeightMap& w, const TvParams& params) {
  const int n = w.nx;
  if (w.ny != n) throw DimensionError("weighted_tv_recover: weight map must be square");
  const FreqRect& gamma = observed.grid();
  if (gamma.dim_x() > n || gamma.dim_y() > n)
    throw DimensionError("weighted_tv_recover: " + to_string(gamma) + " samples do not fit a " +
                         std::to_string(n) + "-point grid");
  if (params.iters < 1) throw ValidationError("weighted_tv_recover: iters must be positive");
  for (double x : w.data)
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("weighted_tv_recover: weights must be non-negative");

  const double wmax = *std::max_element(w.data.begin(), w.data.end());
  const double lip = std::max(wmax, 1e-300) * std::sqrt(8.0);
  const double balance = 1.5 * n;
  const double tau = params.tau > 0.0 ? params.tau : 0.99 / (lip * balance);
  const double sigma = params.sigma > 0.0 ? params.sigma : 0.99 * balance / lip;

  Fft2d fft(n, n);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  TvResult res;

  auto consistency = [&](const Image<cplx>& g) {
    std::copy(g.data.begin(), g.data.end(), fft.buffer().begin());
    fft.forward();
    double worst = 0.0;
    gamma.for_each([&](Freq k) { worst = std::max(worst, std::abs(fft.at(k) * inv_n2 - observed[k])); });
    return worst;
  };
  // Replace the Gamma coefficients of g by the observed ones.
  auto project = [&](Image<cplx>& g) {
    std::copy(g.data.begin(), g.data.end(), fft.buffer().begin());
    fft.forward();
    gamma.for_each([&](Freq k) { fft.at(k) = observed[k] * (static_cast<double>(n) * n); });
    fft.backward();
    for (std::size_t p = 0; p < g.size(); ++p) g.data[p] = fft.buffer()[p] * inv_n2;
  };
  auto objective = [&](const Image<cplx>& g) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto d = detail::forward_diff(g, i, j);
        s += w(i, j) * std::sqrt(std::norm(d.x) + std::norm(d.y));
      }
    return s;
  };

  Image<cplx> g(n, n);
  project(g);
  Image<cplx> gbar = g;
  Image<cplx> px(n, n), py(n, n);
  Image<cplx> next(n, n);

  for (int t = 0; t < params.iters; ++t) {
    // Dual ascent on p, then projection onto the unit ball per pixel.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto d = detail::forward_diff(gbar, i, j);
        const cplx qx = px(i, j) + sigma * w(i, j) * d.x;
        const cplx qy = py(i, j) + sigma * w(i, j) * d.y;
        const double scale = std::max(1.0, std::sqrt(std::norm(qx) + std::norm(qy)));
        px(i, j) = qx / scale;
        py(i, j) = qy / scale;
      }
    // Primal descent along -K^T p = div(W p), then data projection.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int im = i == 0 ? n - 1 : i - 1;
        const int jm = j == 0 ? n - 1 : j - 1;
        const cplx div = w(i, j) * px(i, j) - w(im, j) * px(im, j) + w(i, j) * py(i, j) - w(i, jm) * py(i, jm);
        next(i, j) = g(i, j) + tau * div;
      }
    project(next);
    for (std::size_t p = 0; p < g.size(); ++p) gbar.data[p] = 2.0 * next.data[p] - g.data[p];
    std::swap(g, next);
    res.objective.push_back(objective(g));
    if (params.track_consistency) res.max_consistency_error = std::max(res.max_consistency_error, consistency(g));
  }
  res.image = Image<double>(n, n);
  for (std::size_t p = 0; p < g.size(); ++p) res.image.data[p] = g.data[p].real();
  res.iterate = std::move(g);
  return res;
}

}  // namespace fri2d

#endif  // FRI2D_TV_HPP
