#include <CLI11.hpp>

#include <fri2d/commands.hpp>

#include <cstdio>
#include <iostream>
#include <vector>

namespace {

using namespace fri2d;
using namespace fri2d::cli;

/// "--flag re [im]" into a complex value.
void add_complex(CLI::App* app, const std::string& name, cplx& target, const std::string& help) {
  app->add_option_function<std::vector<double>>(
         name, [&target](const std::vector<double>& v) { target = cplx(v[0], v.size() > 1 ? v[1] : 0.0); }, help)
      ->expected(1, 2);
}

void add_kmax(CLI::App* app, const std::string& name, int& kx, int& ky, const std::string& help) {
  app->add_option_function<std::vector<int>>(
         name,
         [&kx, &ky](const std::vector<int>& v) {
           kx = v[0];
           ky = v.size() > 1 ? v[1] : v[0];
         },
         help + " (kmax_x [kmax_y])")
      ->expected(1, 2);
}

void print_admm_progress(const AdmmIteration& it, int every) {
  if (every > 0 && it.iter % every == 0)
    std::fprintf(stderr, "iter %d  objective %.6g  gap %.6g  data %.6g\n", it.iter, it.objective,
                 it.constraint_gap, it.data_residual);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-set recovery and Fourier extrapolation of piecewise-constant images"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Synthesize Fourier samples of a test phantom");
  s->add_option("--kind", synth.kind, "Phantom kind")
      ->check(CLI::IsMember({"shepplogan", "trigregion", "diracs"}))
      ->capture_default_str();
  add_kmax(s, "--kmax", synth.kmax_x, synth.kmax_y, "Sample grid half-widths");
  s->add_option("--out", synth.out, "Output FSAMPLES file")->required();
  s->add_option("--mu", synth.mu_in, "TRIGPOLY curve polynomial (default: random Hermitian)");
  s->add_option("--mu-out", synth.mu_out, "Write the curve polynomial here");
  add_kmax(s, "--mu-kmax", synth.mu_kmax_x, synth.mu_kmax_y, "Support of the random curve polynomial");
  s->add_option("--mu-decay", synth.mu_decay, "Coefficient decay exponent of the random polynomial")
      ->capture_default_str();
  s->add_option("--seed", synth.seed, "Seed for the random polynomial, weights and noise")->capture_default_str();
  add_complex(s, "--a-plus", synth.a_plus, "Amplitude on {mu > 0}");
  add_complex(s, "--a-minus", synth.a_minus, "Amplitude on {mu <= 0}");
  add_complex(s, "--grad-plus-x", synth.grad_plus_x, "Linear x term on {mu > 0}");
  add_complex(s, "--grad-plus-y", synth.grad_plus_y, "Linear y term on {mu > 0}");
  s->add_option("--oracle-n", synth.oracle_n, "Raster oracle resolution (power of two)")->capture_default_str();
  s->add_option("--lines", synth.lines, "Dirac stream: scan lines")->capture_default_str();
  s->add_option("--per-line", synth.per_line, "Dirac stream: bracketing intervals per line")->capture_default_str();
  s->add_option("--noise", synth.noise_sigma, "Complex Gaussian noise standard deviation")->capture_default_str();

  EdgeOptions edge;
  auto* e = app.add_subcommand("edge", "Recover the edge set from Fourier samples");
  e->add_option("--in", edge.in, "Input FSAMPLES file")->required();
  add_kmax(e, "--filter-kmax", edge.filter_kmax_x, edge.filter_kmax_y, "Filter support");
  e->add_option("--ops", edge.ops, "Comma-separated operators: id, dx, dy, dxx, dxy, ...")->capture_default_str();
  e->add_option("--tol", edge.tol, "Relative nullity tolerance")->capture_default_str();
  e->add_option("--raster-n", edge.raster_n, "Edge raster resolution")->capture_default_str();
  e->add_option("--filter-out", edge.filter_out, "Recovered TRIGPOLY file");
  e->add_option("--edge-out", edge.edge_out, "Edge raster PGM");
  e->add_option("--sv-out", edge.sv_out, "Singular values CSV");

  SpectrumOptions spec;
  auto* sp = app.add_subcommand("spectrum", "Singular values of the annihilation system");
  sp->add_option("--in", spec.in, "Input FSAMPLES file")->required();
  add_kmax(sp, "--filter-kmax", spec.filter_kmax_x, spec.filter_kmax_y, "Filter support");
  sp->add_option("--ops", spec.ops, "Comma-separated operators")->capture_default_str();
  sp->add_option("--out", spec.out, "Singular values CSV (default: stdout)");

  LowrankOptions low;
  int progress = 0;
  auto* l = app.add_subcommand("lowrank", "Extrapolate Fourier samples by structured low-rank completion");
  l->add_option("--in", low.in, "Input FSAMPLES file")->required();
  add_kmax(l, "--recon-kmax", low.recon_kmax_x, low.recon_kmax_y, "Reconstruction grid");
  add_kmax(l, "--filter-kmax", low.filter_kmax_x, low.filter_kmax_y, "Filter support");
  l->add_option("--ops", low.ops, "Comma-separated operators")->capture_default_str();
  l->add_option("--lambda", low.admm.lambda, "Data fidelity weight")->capture_default_str();
  l->add_option("--beta", low.admm.beta, "ADMM penalty")->capture_default_str();
  l->add_option("--rank", low.admm.rank, "Factor width (0: column count)")->capture_default_str();
  l->add_option("--iters", low.admm.max_iters, "Maximum iterations")->capture_default_str();
  l->add_option("--rel-tol", low.admm.rel_tol, "Stop when the relative update falls below this")
      ->capture_default_str();
  l->add_option("--seed", low.admm.seed, "Factor initialization seed")->capture_default_str();
  l->add_option("--n-out", low.n_out, "Output image resolution")->capture_default_str();
  l->add_option("--out-samples", low.out_samples, "Extrapolated FSAMPLES file");
  l->add_option("--out-image", low.out_image, "Reconstruction PGM");
  l->add_option("--out-baseline", low.out_baseline, "Zero-padded baseline PGM");
  l->add_option("--diag-out", low.diag_out, "Per-iteration diagnostics CSV");
  l->add_option("--progress", progress, "Print diagnostics every n iterations (0: off)");

  TvOptions tv;
  auto* t = app.add_subcommand("tv", "Weighted total-variation recovery");
  t->add_option("--in", tv.in, "Input FSAMPLES file")->required();
  t->add_option("--mu", tv.mu_in, "TRIGPOLY for the weights (default: plain TV)");
  t->add_option("--n", tv.n, "Image resolution")->capture_default_str();
  t->add_option("--iters", tv.params.iters, "Iterations")->capture_default_str();
  t->add_option("--tau", tv.params.tau, "Primal step (0: automatic)")->capture_default_str();
  t->add_option("--sigma", tv.params.sigma, "Dual step (0: automatic)")->capture_default_str();
  t->add_option("--out-image", tv.out_image, "Reconstruction PGM");
  t->add_option("--objective-out", tv.objective_out, "Objective trace CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kValidation;
  }

  try {
    if (*s) {
      const SynthReport rep = cmd_synth(synth);
      std::printf("wrote %zu samples to %s\n", rep.n_samples, synth.out.c_str());
      if (rep.n_diracs > 0) std::printf("dirac stream: %zu points\n", rep.n_diracs);
    } else if (*e) {
      const EdgeReport rep = cmd_edge(edge);
      std::printf("system %lld x %lld\n", static_cast<long long>(rep.rows), static_cast<long long>(rep.cols));
      std::printf("nullity %d\n", rep.nullity);
      const auto& sv = rep.singular_values;
      if (sv.size() >= 2 && sv[sv.size() - 2] > 0.0)
        std::printf("sigma_last / sigma_second_last %.6g\n", sv.back() / sv[sv.size() - 2]);
      if (rep.nullity > 1)
        std::fprintf(stderr, "warning: nullity %d > 1, the filter is not unique\n", rep.nullity);
      else if (rep.nullity == 0)
        std::fprintf(stderr, "warning: no singular value below the tolerance\n");
      std::printf("edge pixels %zu\n", count_marked(rep.edges));
    } else if (*sp) {
      const auto sv = cmd_spectrum(spec);
      if (spec.out.empty()) std::fputs(values_csv(sv).c_str(), stdout);
    } else if (*l) {
      const LowrankReport rep = cmd_lowrank(low, [&](const AdmmIteration& it) { print_admm_progress(it, progress); });
      for (const auto& w : rep.result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      const auto& last = rep.result.trace.back();
      std::printf("iterations %d%s\n", last.iter, rep.result.converged ? " (converged)" : "");
      std::printf("objective %.6g  constraint gap %.6g  data residual %.6g\n", last.objective, last.constraint_gap,
                  last.data_residual);
    } else if (*t) {
      const TvResult res = cmd_tv(tv);
      std::printf("iterations %zu  final objective %.6g\n", res.objective.size(), res.objective.back());
    }
  } catch (const ValidationError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kValidation;
  } catch (const DegenerateError& err) {
    std::fprintf(stderr, "degenerate: %s\n", err.what());
    return kDegenerate;
  }
  return kOk;
}
