#ifndef FRI2D_COMMANDS_HPP
#define FRI2D_COMMANDS_HPP

// Subcommand bodies of the fri2d tool. Each takes a fully populated options
// struct, validates it before computing, writes its artifacts and returns a
// small report. Errors surface as ValidationError (exit 2) or
// DegenerateError (exit 3).

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "annihilation.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "lowrank.hpp"
#include "phantom.hpp"
#include "trigpoly.hpp"
#include "tv.hpp"

namespace fri2d::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kDegenerate = 3 };

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline FreqRect rect_arg(int kx, int ky, const std::string& name) {
  require(kx >= 0 && ky >= 0, name + ": kmax values must be non-negative");
  return {kx, ky};
}

/// Adds complex Gaussian noise with E|n|^2 = sigma^2.
inline void add_noise(FourierSamples& s, double sigma, std::uint64_t seed) {
  if (sigma <= 0.0) return;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, sigma / std::sqrt(2.0));
  for (auto& v : s.values()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v += cplx(re, im);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
  std::string kind = "shepplogan";  // shepplogan | trigregion | diracs
  int kmax_x = 32;
  int kmax_y = 24;
  std::string out;
  std::string mu_in;  // TRIGPOLY file; a random Hermitian mu is drawn when empty
  std::string mu_out;
  int mu_kmax_x = 4;
  int mu_kmax_y = 4;
  double mu_decay = 1.0;
  std::uint64_t seed = 1;
  cplx a_plus{1.0, 0.0};
  cplx a_minus{0.0, 0.0};
  cplx grad_plus_x{};
  cplx grad_plus_y{};
  int oracle_n = 2048;
  int lines = 200;     // Dirac stream: scan lines over the curve
  int per_line = 256;  // Dirac stream: bracketing intervals per line
  double noise_sigma = 0.0;
};

struct SynthReport {
  std::size_t n_samples = 0;
  std::size_t n_diracs = 0;
  TrigPoly mu;  // the curve polynomial for trigregion / diracs
};

inline SynthReport cmd_synth(const SynthOptions& o) {
  using detail::require;
  require(o.kind == "shepplogan" || o.kind == "trigregion" || o.kind == "diracs",
          "synth: unknown kind '" + o.kind + "'");
  require(!o.out.empty(), "synth: --out is required");
  require(o.noise_sigma >= 0.0, "synth: noise sigma must be non-negative");
  const FreqRect grid = detail::rect_arg(o.kmax_x, o.kmax_y, "synth --kmax");
  SynthReport rep;
  FourierSamples s;
  if (o.kind == "shepplogan") {
    s = ellipse_ft(shepp_logan(), grid);
  } else {
    TrigPoly mu = o.mu_in.empty()
                      ? random_hermitian(detail::rect_arg(o.mu_kmax_x, o.mu_kmax_y, "synth --mu-kmax"), o.seed,
                                         o.mu_decay)
                      : load_trigpoly(o.mu_in);
    require(mu.is_hermitian(), "synth: mu must be Hermitian");
    if (o.kind == "trigregion") {
      require(o.oracle_n >= 2 && (o.oracle_n & (o.oracle_n - 1)) == 0, "synth: --oracle-n must be a power of two");
      require(o.oracle_n >= 8 * std::max(o.kmax_x, o.kmax_y), "synth: --oracle-n below 8 x max frequency");
      TrigRegionPhantom ph{mu, {o.a_plus, o.grad_plus_x, o.grad_plus_y}, {o.a_minus}};
      s = raster_dft_oracle(ph, o.oracle_n, grid);
    } else {
      require(o.lines >= 1 && o.per_line >= 2, "synth: --lines >= 1 and --per-line >= 2 required");
      require(!mu.is_constant(), "synth: mu must not be constant for a Dirac stream");
      DiracStream d;
      d.points = curve_points(mu, o.per_line, o.lines);
      std::mt19937_64 rng(o.seed + 1);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (std::size_t m = 0; m < d.points.size(); ++m) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        d.weights.emplace_back(re, im);
      }
      rep.n_diracs = d.points.size();
      s = dirac_stream_ft(d, grid);
    }
    if (!o.mu_out.empty()) save(o.mu_out, mu);
    rep.mu = std::move(mu);
  }
  detail::add_noise(s, o.noise_sigma, o.seed);
  save(o.out, s);
  rep.n_samples = s.size();
  return rep;
}

// ---------------------------------------------------------------------------
// edge / spectrum

struct EdgeOptions {
  std::string in;
  int filter_kmax_x = 4;
  int filter_kmax_y = 4;
  std::string ops = "dx,dy";
  double tol = 1e-8;
  int raster_n = 512;
  std::string filter_out;
  std::string edge_out;
  std::string sv_out;
};

struct EdgeReport {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  int nullity = 0;
  std::vector<double> singular_values;
  TrigPoly filter;
  Mask edges;
};

inline EdgeReport cmd_edge(const EdgeOptions& o) {
  using detail::require;
  const FreqRect filt = detail::rect_arg(o.filter_kmax_x, o.filter_kmax_y, "edge --filter-kmax");
  const auto ops = parse_ops(o.ops);
  require(o.tol > 0.0 && o.tol < 1.0, "edge: --tol must lie in (0, 1)");
  require(o.raster_n >= 2 * (filt.kmax_x + filt.kmax_y) + 2, "edge: --raster-n too small for the filter degree");
  const FourierSamples s = load_samples(o.in);
  const AnnihilationSystem sys = build_system(s, filt, ops);
  const NullspaceResult ns = nullspace_filter(sys, o.tol);
  EdgeReport rep;
  rep.rows = sys.matrix.rows();
  rep.cols = sys.matrix.cols();
  rep.nullity = ns.nullity;
  rep.singular_values = ns.singular_values;
  rep.filter = hermitian_project(ns.filter);
  rep.edges = zero_set_raster(rep.filter, o.raster_n);
  if (!o.filter_out.empty()) save(o.filter_out, rep.filter);
  if (!o.edge_out.empty()) save_pgm(o.edge_out, mask_image(rep.edges));
  if (!o.sv_out.empty()) write_file(o.sv_out, values_csv(rep.singular_values));
  return rep;
}

struct SpectrumOptions {
  std::string in;
  int filter_kmax_x = 4;
  int filter_kmax_y = 4;
  std::string ops = "dx,dy";
  std::string out;
};

inline std::vector<double> cmd_spectrum(const SpectrumOptions& o) {
  const FreqRect filt = detail::rect_arg(o.filter_kmax_x, o.filter_kmax_y, "spectrum --filter-kmax");
  const auto ops = parse_ops(o.ops);
  const FourierSamples s = load_samples(o.in);
  const std::vector<double> sv = singular_spectrum(build_system(s, filt, ops));
  if (!o.out.empty()) write_file(o.out, values_csv(sv));
  return sv;
}

// ---------------------------------------------------------------------------
// lowrank

struct LowrankOptions {
  std::string in;
  int recon_kmax_x = 63;
  int recon_kmax_y = 63;
  int filter_kmax_x = 7;
  int filter_kmax_y = 7;
  std::string ops = "dx,dy";
  AdmmConfig admm;
  int n_out = 128;
  std::string out_samples;
  std::string out_image;
  std::string out_baseline;
  std::string diag_out;
};

struct LowrankReport {
  AdmmResult result;
  Image<cplx> image;
  Image<cplx> baseline;
};

inline std::string diagnostics_csv(const std::vector<AdmmIteration>& trace) {
  std::string out = "iter,objective,constraint_gap,data_residual\n";
  for (const auto& it : trace)
    out += std::to_string(it.iter) + "," + format_g17(it.objective) + "," + format_g17(it.constraint_gap) + "," +
           format_g17(it.data_residual) + "\n";
  return out;
}

inline LowrankReport cmd_lowrank(const LowrankOptions& o,
                                 const std::function<void(const AdmmIteration&)>& on_iteration = {}) {
  using detail::require;
  const FreqRect recon = detail::rect_arg(o.recon_kmax_x, o.recon_kmax_y, "lowrank --recon-kmax");
  const FreqRect filt = detail::rect_arg(o.filter_kmax_x, o.filter_kmax_y, "lowrank --filter-kmax");
  require(o.n_out >= recon.dim_x() && o.n_out >= recon.dim_y(), "lowrank: --n-out smaller than the recon grid");
  const auto ops = parse_ops(o.ops);
  const FourierSamples s = load_samples(o.in);
  require(recon.contains(s.grid()), "lowrank: observed grid " + to_string(s.grid()) +
                                        " exceeds the recon grid " + to_string(recon));
  const LiftingConfig cfg = LiftingConfig::centered(filt, recon, s.grid(), ops);
  cfg.validate();
  o.admm.validate(cfg.cols());

  LowrankReport rep;
  rep.baseline = ifft_image(s, o.n_out);
  if (!o.out_baseline.empty()) save_pgm(o.out_baseline, real_part(rep.baseline));
  try {
    rep.result = admm_complete(s, cfg, o.admm, on_iteration);
  } catch (const DivergenceError& e) {
    if (!o.diag_out.empty()) write_file(o.diag_out, diagnostics_csv(e.trace()));
    throw;
  }
  rep.image = ifft_image(rep.result.estimate, o.n_out);
  if (!o.out_samples.empty()) save(o.out_samples, rep.result.estimate);
  if (!o.out_image.empty()) save_pgm(o.out_image, real_part(rep.image));
  if (!o.diag_out.empty()) write_file(o.diag_out, diagnostics_csv(rep.result.trace));
  return rep;
}

// ---------------------------------------------------------------------------
// tv

struct TvOptions {
  std::string in;
  std::string mu_in;  // empty -> uniform weights (plain TV)
  int n = 64;
  TvParams params;
  std::string out_image;
  std::string objective_out;
};

inline TvResult cmd_tv(const TvOptions& o) {
  using detail::require;
  require(o.n >= 2, "tv: --n must be at least 2");
  require(o.params.iters >= 1, "tv: --iters must be positive");
  const FourierSamples s = load_samples(o.in);
  require(s.grid().dim_x() <= o.n && s.grid().dim_y() <= o.n, "tv: samples do not fit the N-by-N grid");
  const WeightMap w = o.mu_in.empty() ? uniform_weights(o.n) : weight_map(load_trigpoly(o.mu_in), o.n);
  TvResult res = weighted_tv_recover(s, w, o.params);
  if (!o.out_image.empty()) save_pgm(o.out_image, res.image);
  if (!o.objective_out.empty()) {
    std::string csv = "iter,objective\n";
    for (std::size_t i = 0; i < res.objective.size(); ++i)
      csv += std::to_string(i + 1) + "," + format_g17(res.objective[i]) + "\n";
    write_file(o.objective_out, csv);
  }
  return res;
}

}  // namespace fri2d::cli

#endif  // FRI2D_COMMANDS_HPP
