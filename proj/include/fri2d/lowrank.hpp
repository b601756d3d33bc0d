#ifndef FRI2D_LOWRANK_HPP
#define FRI2D_LOWRANK_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "annihilation.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "freq_grid.hpp"
#include "phantom.hpp"

namespace fri2d {

/// Geometry of the lifted matrix T[g]: patches of size filter_support taken
/// from g on recon_grid, for each operator. `observed` marks Gamma.
struct LiftingConfig {
  FreqRect filter_support;
  FreqRect recon_grid;
  std::vector<DiffOp> ops = {DiffOp::dx(), DiffOp::dy()};
  FreqArray<std::uint8_t> observed;

  /// Gamma = every frequency of `sampled` inside recon_grid.
  static LiftingConfig centered(FreqRect filter, FreqRect recon, FreqRect sampled,
                                std::vector<DiffOp> ops = {DiffOp::dx(), DiffOp::dy()}) {
    LiftingConfig cfg{filter, recon, std::move(ops), FreqArray<std::uint8_t>(recon, 0)};
    recon.for_each([&](Freq k) { cfg.observed[k] = sampled.contains(k) ? 1 : 0; });
    return cfg;
  }

  FreqRect shift_grid() const { return valid_shifts(recon_grid, filter_support); }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(ops.size() * shift_grid().size()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(filter_support.size()); }

  void validate() const {
    if (ops.empty()) throw ValidationError("LiftingConfig: no operators");
    if (filter_support.kmax_x >= recon_grid.kmax_x || filter_support.kmax_y >= recon_grid.kmax_y)
      throw DimensionError("LiftingConfig: filter " + to_string(filter_support) +
                           " needs a positive margin inside " + to_string(recon_grid));
    if (!(observed.rect() == recon_grid))
      throw DimensionError("LiftingConfig: sampling mask is not on the reconstruction grid");
    bool any = false;
    for (auto v : observed.values()) any = any || v;
    if (!any) throw ValidationError("LiftingConfig: empty sampling set");
  }
};

inline Eigen::MatrixXcd lift(const FourierSamples& g, const LiftingConfig& cfg) {
  if (!(g.grid() == cfg.recon_grid))
    throw DimensionError("lift: samples on " + to_string(g.grid()) + ", expected " +
                         to_string(cfg.recon_grid));
  return build_system(g, cfg.filter_support, cfg.ops).matrix;
}

/// out[m] = sum over entries (row, col) reading frequency m of conj(w(m)) M(row, col).
inline FreqArray<cplx> lift_adjoint(const Eigen::MatrixXcd& m, const LiftingConfig& cfg) {
  const FreqRect shifts = cfg.shift_grid();
  const auto n_shift = static_cast<Eigen::Index>(shifts.size());
  const Eigen::Index n_col = cfg.cols();
  if (m.rows() != cfg.rows() || m.cols() != n_col)
    throw DimensionError("lift_adjoint: matrix shape does not match the lifting");
  const FreqRect& grid = cfg.recon_grid;
  FreqArray<cplx> out(grid);
  FreqArray<cplx> acc(grid);
  std::vector<Freq> col_freq(static_cast<std::size_t>(n_col));
  for (Eigen::Index c = 0; c < n_col; ++c) col_freq[c] = cfg.filter_support.freq(static_cast<std::size_t>(c));
  for (std::size_t o = 0; o < cfg.ops.size(); ++o) {
    std::fill(acc.values().begin(), acc.values().end(), cplx{});
    for (Eigen::Index s = 0; s < n_shift; ++s) {
      const Freq l = shifts.freq(static_cast<std::size_t>(s));
      const Eigen::Index row = static_cast<Eigen::Index>(o) * n_shift + s;
      for (Eigen::Index c = 0; c < n_col; ++c) acc[l - col_freq[c]] += m(row, c);
    }
    grid.for_each([&](Freq k) { out[k] += std::conj(derivative_weight(k, cfg.ops[o])) * acc[k]; });
  }
  return out;
}

/// Diagonal of T*T: count(m) * sum_ops |w_op(m)|^2, count(m) the number of
/// (shift, filter index) pairs reading m.
inline FreqArray<double> gram_diagonal(const LiftingConfig& cfg) {
  const FreqRect shifts = cfg.shift_grid();
  FreqArray<double> count(cfg.recon_grid, 0.0);
  shifts.for_each([&](Freq l) { cfg.filter_support.for_each([&](Freq k) { count[l - k] += 1.0; }); });
  FreqArray<double> out(cfg.recon_grid, 0.0);
  cfg.recon_grid.for_each([&](Freq m) {
    double w2 = 0.0;
    for (const auto& op : cfg.ops) w2 += std::norm(derivative_weight(m, op));
    out[m] = count[m] * w2;
  });
  return out;
}

struct AdmmConfig {
  double lambda = 1e6;  // data-fidelity weight
  double beta = 1.0;    // augmented-Lagrangian penalty
  int rank = 0;         // factor width; 0 selects the column count
  int max_iters = 500;
  double rel_tol = 1e-9;  // on ||g_{t+1} - g_t|| / ||g_t||
  std::uint64_t seed = 0;

  void validate(Eigen::Index cols) const {
    if (!(lambda > 0.0)) throw ValidationError("AdmmConfig: lambda must be positive");
    if (!(beta > 0.0)) throw ValidationError("AdmmConfig: beta must be positive");
    if (rank < 0 || rank > cols)
      throw ValidationError("AdmmConfig: rank must lie in [1, " + std::to_string(cols) + "]");
    if (max_iters < 1) throw ValidationError("AdmmConfig: max_iters must be positive");
    if (!(rel_tol >= 0.0)) throw ValidationError("AdmmConfig: rel_tol must be non-negative");
  }
};

struct AdmmIteration {
  int iter = 0;
  double objective = 0.0;       // (||U||^2 + ||V||^2) / 2 + lambda ||P(g - f)||^2
  double constraint_gap = 0.0;  // ||T[g] - U V^H||_F
  double data_residual = 0.0;   // ||P(g - f)||_2
};

struct AdmmResult {
  FourierSamples estimate;
  std::vector<AdmmIteration> trace;
  bool converged = false;
  std::vector<std::string> warnings;
};

class DivergenceError : public DegenerateError {
 public:
  DivergenceError(const std::string& what, std::vector<AdmmIteration> trace)
      : DegenerateError(what), trace_(std::move(trace)) {}
  const std::vector<AdmmIteration>& trace() const { return trace_; }

 private:
  std::vector<AdmmIteration> trace_;
};

namespace detail {

inline Eigen::MatrixXcd gaussian_factor(Eigen::Index rows, Eigen::Index r, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r));
  Eigen::MatrixXcd m(rows, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = scale * cplx(re, im);
    }
  return m;
}

}  // namespace detail

/// Nuclear-norm completion min ||T[g]||_* + lambda ||P(g - f)||^2 through the
/// factorization ||X||_* = min_{X = U V^H} (||U||^2 + ||V||^2) / 2 and ADMM on
/// T[g] = U V^H with a scaled dual D. The g-update is closed form since
/// T*T is diagonal.
///
/// `observed` must cover every masked frequency of cfg. `on_iteration`, when
/// set, sees each diagnostics row as it is produced.
inline AdmmResult admm_complete(const FourierSamples& observed, const LiftingConfig& cfg,
                                const AdmmConfig& acfg,
                                const std::function<void(const AdmmIteration&)>& on_iteration = {}) {
  cfg.validate();
  acfg.validate(cfg.cols());
  const FreqRect& grid = cfg.recon_grid;
  FourierSamples f(grid);
  grid.for_each([&](Freq k) {
    if (!cfg.observed[k]) return;
    if (!observed.grid().contains(k))
      throw DimensionError("admm_complete: observed samples do not cover the sampling mask");
    f[k] = observed[k];
  });

  AdmmResult res;
  const FreqArray<double> gram = gram_diagonal(cfg);
  const double two_lambda = 2.0 * acfg.lambda;
  const double beta = acfg.beta;
  std::vector<std::uint8_t> held(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!cfg.observed.at(i) && gram.at(i) == 0.0) {
      held[i] = 1;
      const Freq k = grid.freq(i);
      res.warnings.push_back("frequency (" + std::to_string(k.x) + "," + std::to_string(k.y) +
                             ") is unobserved and invisible to the lifting; held at 0");
    }
  }

  const Eigen::Index n_col = cfg.cols();
  const Eigen::Index r = acfg.rank == 0 ? n_col : acfg.rank;
  std::mt19937_64 rng(acfg.seed);
  Eigen::MatrixXcd u = detail::gaussian_factor(cfg.rows(), r, rng);
  Eigen::MatrixXcd v = detail::gaussian_factor(n_col, r, rng);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(r, r);

  FourierSamples g = f;
  Eigen::MatrixXcd z = lift(g, cfg);
  Eigen::MatrixXcd dual = Eigen::MatrixXcd::Zero(z.rows(), z.cols());
  Eigen::MatrixXcd work(z.rows(), z.cols());

  for (int t = 1; t <= acfg.max_iters; ++t) {
    work = z + dual;
    {
      const Eigen::MatrixXcd rhs = beta * (work * v);
      const Eigen::MatrixXcd gm = eye + beta * (v.adjoint() * v);
      u = gm.llt().solve(rhs.adjoint()).adjoint();
    }
    {
      const Eigen::MatrixXcd rhs = beta * (work.adjoint() * u);
      const Eigen::MatrixXcd gm = eye + beta * (u.adjoint() * u);
      v = gm.llt().solve(rhs.adjoint()).adjoint();
    }
    work.noalias() = u * v.adjoint();

    const FreqArray<cplx> adj_x = lift_adjoint(work, cfg);
    const FreqArray<cplx> adj_d = lift_adjoint(dual, cfg);
    FourierSamples g_next(grid);
    double diff2 = 0.0, norm2 = 0.0, data2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (held[i]) continue;
      const double mask = cfg.observed.at(i) ? 1.0 : 0.0;
      const cplx num = two_lambda * mask * f.at(i) + beta * (adj_x.at(i) - adj_d.at(i));
      g_next.at(i) = num / (two_lambda * mask + beta * gram.at(i));
      diff2 += std::norm(g_next.at(i) - g.at(i));
      norm2 += std::norm(g.at(i));
      if (mask > 0.0) data2 += std::norm(g_next.at(i) - f.at(i));
    }
    g = std::move(g_next);
    z = lift(g, cfg);

    work = z - work;  // T[g] - U V^H
    AdmmIteration it;
    it.iter = t;
    it.constraint_gap = work.norm();
    it.data_residual = std::sqrt(data2);
    it.objective = 0.5 * (u.squaredNorm() + v.squaredNorm()) + acfg.lambda * data2;
    dual += work;
    res.trace.push_back(it);
    if (on_iteration) on_iteration(it);

    if (!std::isfinite(it.constraint_gap) || !std::isfinite(it.objective))
      throw DivergenceError("admm_complete: non-finite iterate at iteration " + std::to_string(t), res.trace);
    // Growth at the roundoff floor is not divergence.
    const double floor = 1e-10 * z.norm();
    if (t > 50 && it.constraint_gap > floor &&
        it.constraint_gap > 10.0 * res.trace[static_cast<std::size_t>(t - 51)].constraint_gap)
      throw DivergenceError("admm_complete: constraint gap grew tenfold over 50 iterations at iteration " +
                                std::to_string(t),
                            res.trace);
    if (norm2 > 0.0 && std::sqrt(diff2 / norm2) < acfg.rel_tol) {
      res.converged = true;
      break;
    }
  }
  res.estimate = std::move(g);
  return res;
}

/// Zero-pads g into an N-by-N spectrum and inverts:
/// image(i, j) = sum_k g[k] e^{j2pi<k, (i/N, j/N)>}.
inline Image<cplx> ifft_image(const FreqArray<cplx>& g, int n) {
  if (g.rect().dim_x() > n || g.rect().dim_y() > n)
    throw DimensionError("ifft_image: a " + to_string(g.rect()) + " grid does not fit " + std::to_string(n) +
                         "x" + std::to_string(n));
  return spectrum_image(g, n, n);
}

}  // namespace fri2d

#endif  // FRI2D_LOWRANK_HPP
