#include <fri2d/lowrank.hpp>

#include <gtest/gtest.h>

#include <random>

namespace fri2d {
namespace {

FourierSamples random_samples(FreqRect grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FourierSamples s(grid);
  for (auto& v : s.values()) {
    const double re = g(rng);
    v = cplx(re, g(rng));
  }
  return s;
}

Eigen::MatrixXcd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) {
      const double re = g(rng);
      m(i, j) = cplx(re, g(rng));
    }
  return m;
}

FourierSamples curve_stream(const TrigPoly& mu, FreqRect grid) {
  DiracStream d;
  d.points = curve_points(mu, 256, 64);
  for (std::size_t i = 0; i < d.points.size(); ++i) d.weights.push_back(cplx(1.0 + 0.01 * (i % 7), 0.0));
  return dirac_stream_ft(d, grid);
}

TEST(Lift, ZeroInputGivesZeroMatrix) {
  const auto cfg = LiftingConfig::centered(FreqRect(2, 2), FreqRect(5, 4), FreqRect(2, 2));
  const Eigen::MatrixXcd m = lift(FourierSamples(FreqRect(5, 4)), cfg);
  EXPECT_EQ(m.rows(), cfg.rows());
  EXPECT_EQ(m.cols(), 25);
  EXPECT_EQ(m.norm(), 0.0);
}

TEST(Lift, MatchesBuildSystem) {
  const auto cfg = LiftingConfig::centered(FreqRect(2, 1), FreqRect(5, 4), FreqRect(2, 2), ops_of_order(2));
  const FourierSamples g = random_samples(FreqRect(5, 4), 1);
  EXPECT_EQ(lift(g, cfg), build_system(g, FreqRect(2, 1), ops_of_order(2)).matrix);
  EXPECT_THROW(lift(random_samples(FreqRect(4, 4), 1), cfg), DimensionError);
}

TEST(Lift, DilatedFilterSupportCreatesNullspace) {
  const TrigPoly mu = random_hermitian(FreqRect(2, 2), 3);
  const FreqRect filter = mu.support().dilate(2);
  const auto cfg = LiftingConfig::centered(filter, FreqRect(12, 12), FreqRect(12, 12), {DiffOp::identity()});
  const Eigen::MatrixXcd t = lift(curve_stream(mu, cfg.recon_grid), cfg);
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(t).singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-8 * sv(0) ? 1 : 0;
  const int shifts = static_cast<int>(valid_shifts(filter, mu.support()).size());
  EXPECT_EQ(shifts, 25);
  EXPECT_LE(rank, cfg.cols() - shifts);
  // the gap between the signal and null parts is wide
  EXPECT_LE(sv(cfg.cols() - shifts) / sv(0), 1e-6);
}

TEST(LiftAdjoint, ZeroAndSingleEntry) {
  const auto cfg = LiftingConfig::centered(FreqRect(1, 1), FreqRect(3, 3), FreqRect(1, 1));
  const FreqArray<cplx> z = lift_adjoint(Eigen::MatrixXcd::Zero(cfg.rows(), cfg.cols()), cfg);
  for (const auto& v : z.values()) EXPECT_EQ(v, cplx{});

  AnnihilationSystem layout;
  layout.filter_support = cfg.filter_support;
  layout.shift_grid = cfg.shift_grid();
  const std::size_t row = 30, col = 4;
  const Freq m = layout.freq_of(row, col);
  const auto [op, l] = layout.row_index(row);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(cfg.rows(), cfg.cols());
  e(row, col) = cplx(2.0, -3.0);
  const FreqArray<cplx> a = lift_adjoint(e, cfg);
  cfg.recon_grid.for_each([&](Freq k) {
    if (k == m)
      EXPECT_EQ(a[k], std::conj(derivative_weight(m, cfg.ops[op])) * cplx(2.0, -3.0));
    else
      EXPECT_EQ(a[k], cplx{});
  });
  EXPECT_THROW(lift_adjoint(Eigen::MatrixXcd::Zero(3, 3), cfg), DimensionError);
}

TEST(LiftAdjoint, InnerProductIdentity) {
  const auto cfg = LiftingConfig::centered(FreqRect(3, 2), FreqRect(8, 6), FreqRect(3, 3), ops_of_order(2));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const FourierSamples x = random_samples(cfg.recon_grid, 100 + s);
    const Eigen::MatrixXcd m = random_matrix(cfg.rows(), cfg.cols(), 200 + s);
    const cplx lhs = (lift(x, cfg).array().conjugate() * m.array()).sum();
    const Eigen::VectorXcd adj = to_vector(lift_adjoint(m, cfg));
    const cplx rhs = to_vector(x).dot(adj);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs)) << s;
  }
}

TEST(GramDiagonal, DcCornerAndImpulseProbing) {
  const auto cfg = LiftingConfig::centered(FreqRect(2, 2), FreqRect(5, 4), FreqRect(2, 2));
  const FreqArray<double> gram = gram_diagonal(cfg);
  EXPECT_EQ(gram[Freq(0, 0)], 0.0);
  const Freq corner{5, 4};
  EXPECT_NEAR(gram[corner], std::norm(derivative_weight(corner, DiffOp::dx())) +
                                std::norm(derivative_weight(corner, DiffOp::dy())), 1e-9);
  cfg.recon_grid.for_each([&](Freq m) {
    FourierSamples e(cfg.recon_grid);
    e[m] = 1.0;
    const double probe = lift(e, cfg).squaredNorm();
    EXPECT_LE(std::abs(gram[m] - probe), 1e-12 * std::max(1.0, probe));
  });
}

TEST(LiftingConfig, Validation) {
  EXPECT_THROW(LiftingConfig::centered(FreqRect(3, 2), FreqRect(3, 5), FreqRect(1, 1)).validate(), DimensionError);
  auto cfg = LiftingConfig::centered(FreqRect(1, 1), FreqRect(3, 3), FreqRect(1, 1));
  std::fill(cfg.observed.values().begin(), cfg.observed.values().end(), 0);
  EXPECT_THROW(cfg.validate(), ValidationError);
  AdmmConfig a;
  a.rank = 10;
  EXPECT_THROW(a.validate(9), ValidationError);
  a.rank = 0;
  a.lambda = 0.0;
  EXPECT_THROW(a.validate(9), ValidationError);
}

TEST(Admm, FullSamplingReproducesData) {
  const FreqRect grid(6, 6);
  const FourierSamples f = random_samples(grid, 5);
  const auto cfg = LiftingConfig::centered(FreqRect(2, 2), grid, grid);
  AdmmConfig a;
  a.lambda = 1e8;
  a.max_iters = 50;
  const AdmmResult res = admm_complete(f, cfg, a);
  EXPECT_LE(relative_l2_error(res.estimate, f), 1e-6);
  EXPECT_TRUE(res.warnings.empty());
}

TEST(Admm, UnobservedDcIsHeldWithWarning) {
  const FreqRect grid(6, 6);
  auto cfg = LiftingConfig::centered(FreqRect(2, 2), grid, FreqRect(3, 3));
  cfg.observed[{0, 0}] = 0;
  AdmmConfig a;
  a.max_iters = 5;
  const AdmmResult res = admm_complete(random_samples(grid, 6), cfg, a);
  ASSERT_EQ(res.warnings.size(), 1u);
  EXPECT_EQ(res.estimate[Freq(0, 0)], cplx{});
}

TEST(Admm, NonFiniteDataAbortsWithTrace) {
  const FreqRect grid(4, 4);
  FourierSamples f = random_samples(grid, 7);
  f[{1, 1}] = cplx(std::nan(""), 0.0);
  AdmmConfig a;
  a.max_iters = 10;
  try {
    admm_complete(f, LiftingConfig::centered(FreqRect(1, 1), grid, grid), a);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.trace().size(), 1u);
  }
}

struct CurveCase {
  TrigPoly mu = random_hermitian(FreqRect(2, 2), 1);
  FreqRect recon{15, 15};
  FourierSamples truth = raster_dft_oracle(TrigRegionPhantom{mu}, 1024, recon);
  LiftingConfig cfg = LiftingConfig::centered(FreqRect(3, 3), recon, FreqRect(6, 6));
};

TEST(Admm, DeterministicGivenSeed) {
  const CurveCase c;
  AdmmConfig a;
  a.max_iters = 30;
  const AdmmResult r1 = admm_complete(c.truth, c.cfg, a), r2 = admm_complete(c.truth, c.cfg, a);
  EXPECT_EQ(r1.estimate, r2.estimate);
  ASSERT_EQ(r1.trace.size(), r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) EXPECT_EQ(r1.trace[i].objective, r2.trace[i].objective);
}

TEST(Admm, ConstraintGapShrinksAndDataIsKept) {
  const CurveCase c;
  AdmmConfig a;
  a.max_iters = 400;
  a.rel_tol = 0.0;
  const AdmmResult res = admm_complete(c.truth, c.cfg, a);
  ASSERT_GE(res.trace.size(), 200u);
  EXPECT_LE(res.trace[199].constraint_gap, 1e-3 * res.trace[0].constraint_gap);
  double peak = 0.0, worst = 0.0;
  c.recon.for_each([&](Freq k) {
    if (!c.cfg.observed[k]) return;
    peak = std::max(peak, std::abs(c.truth[k]));
    worst = std::max(worst, std::abs(res.estimate[k] - c.truth[k]));
  });
  EXPECT_LE(worst / peak, 1e-3);
}

// Zero filling has relative error exactly 1 outside Gamma. The nuclear-norm
// minimizer does better, yet its lifted nuclear norm sits below that of the
// true samples, so it is not the truth.
TEST(Admm, ImprovesOnZeroFillingAndUndercutsTrueNuclearNorm) {
  const CurveCase c;
  AdmmConfig a;
  a.max_iters = 300;
  const AdmmResult res = admm_complete(c.truth, c.cfg, a);
  double err = 0.0, energy = 0.0;
  c.recon.for_each([&](Freq k) {
    if (c.cfg.observed[k]) return;
    err += std::norm(res.estimate[k] - c.truth[k]);
    energy += std::norm(c.truth[k]);
  });
  EXPECT_LT(std::sqrt(err / energy), 1.0);
  auto nuclear = [&](const FourierSamples& g) {
    return Eigen::BDCSVD<Eigen::MatrixXcd>(lift(g, c.cfg)).singularValues().sum();
  };
  EXPECT_LT(nuclear(res.estimate), nuclear(c.truth));
}

TEST(IfftImage, ConstantCosineAndParseval) {
  FreqArray<cplx> dc(FreqRect(0, 0));
  dc[{0, 0}] = cplx(0.5, 2.0);
  for (const auto& v : ifft_image(dc, 8).data) EXPECT_LE(std::abs(v - cplx(0.5, 2.0)), 1e-15);

  FreqArray<cplx> c(FreqRect(1, 0));
  c[{1, 0}] = c[{-1, 0}] = 0.5;
  const Image<cplx> img = ifft_image(c, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) EXPECT_NEAR(img(i, j).real(), std::cos(kTwoPi * i / 32.0), 1e-12);

  const FourierSamples g = random_samples(FreqRect(5, 3), 9);
  const Image<cplx> r = ifft_image(g, 16);
  double e = 0.0;
  for (const auto& v : r.data) e += std::norm(v);
  double s = 0.0;
  for (const auto& v : g.values()) s += std::norm(v);
  EXPECT_NEAR(e / 256.0, s, 1e-12 * s);
  EXPECT_THROW(ifft_image(g, 10), DimensionError);
}

}  // namespace
}  // namespace fri2d
