#include <fri2d/phantom.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace fri2d {
namespace {

EllipsePhantom disk() { return EllipsePhantom{{Ellipse{1.0, {0.5, 0.5}, 0.3, 0.3, 0.0}}}; }

TEST(EllipseFt, DcIsArea) {
  const EllipsePhantom ph{{Ellipse{cplx(2.0, -1.0), {0.4, 0.6}, 0.2, 0.1, 0.7}}};
  const FourierSamples f = ellipse_ft(ph, FreqRect(0, 0));
  EXPECT_EQ(f[Freq(0, 0)], cplx(2.0, -1.0) * (kPi * 0.2 * 0.1));
}

TEST(EllipseFt, ShiftTheorem) {
  const Ellipse e{1.0, {0.4, 0.45}, 0.15, 0.08, 0.3};
  Ellipse moved = e;
  const double dx = 0.13, dy = -0.07;
  moved.center = {e.center.x + dx, e.center.y + dy};
  const FreqRect grid(20, 20);
  const FourierSamples a = ellipse_ft({{e}}, grid), b = ellipse_ft({{moved}}, grid);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> k(-20, 20);
  for (int t = 0; t < 20; ++t) {
    const Freq f{k(rng), k(rng)};
    const cplx expect = a[f] * std::polar(1.0, -kTwoPi * (f.x * dx + f.y * dy));
    EXPECT_LE(std::abs(b[f] - expect), 1e-13);
  }
}

TEST(EllipseFt, LinearInAmplitudes) {
  EllipsePhantom p1 = shepp_logan(), p2 = shepp_logan(), sum = shepp_logan();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < sum.ellipses.size(); ++i) {
    p1.ellipses[i].amplitude = cplx(g(rng), g(rng));
    p2.ellipses[i].amplitude = cplx(g(rng), g(rng));
    sum.ellipses[i].amplitude = p1.ellipses[i].amplitude + p2.ellipses[i].amplitude;
  }
  const FreqRect grid(10, 10);
  const FourierSamples a = ellipse_ft(p1, grid), b = ellipse_ft(p2, grid), c = ellipse_ft(sum, grid);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_LE(std::abs(c.at(i) - a.at(i) - b.at(i)), 1e-14);
}

TEST(EllipseFt, RealPhantomIsHermitian) {
  EXPECT_LE(ellipse_ft(shepp_logan(), FreqRect(32, 24)).hermitian_defect(), 1e-10);
}

TEST(EllipseFt, RejectsInvalidEllipses) {
  EXPECT_THROW(ellipse_ft({{Ellipse{1.0, {0.5, 0.5}, 0.0, 0.1, 0.0}}}, FreqRect(1, 1)), ValidationError);
  EXPECT_THROW(ellipse_ft({{Ellipse{1.0, {0.9, 0.5}, 0.2, 0.1, 0.0}}}, FreqRect(1, 1)), ValidationError);
}

TEST(EllipseFt, SheppLoganMatchesRasterOracle) {
  const EllipsePhantom ph = shepp_logan();
  const FreqRect grid(32, 24);
  EXPECT_LE(relative_l2_error(raster_dft_oracle(ph, 2048, grid), ellipse_ft(ph, grid)), 5e-3);
}

TEST(RasterOracle, ConstantOne) {
  TrigRegionPhantom one{TrigPoly::constant(1.0)};
  const FourierSamples f = raster_dft_oracle(one, 64, FreqRect(4, 4));
  FreqRect(4, 4).for_each([&](Freq k) {
    if (k == Freq{0, 0})
      EXPECT_NEAR(std::abs(f[k] - 1.0), 0.0, 1e-12);
    else
      EXPECT_LE(std::abs(f[k]), 1e-12);
  });
}

TEST(RasterOracle, ConvergesOnDisk) {
  const FreqRect grid(8, 8);
  const FourierSamples exact = ellipse_ft(disk(), grid);
  const double e1 = relative_l2_error(raster_dft_oracle(disk(), 1024, grid), exact);
  const double e2 = relative_l2_error(raster_dft_oracle(disk(), 2048, grid), exact);
  EXPECT_GE(e1 / e2, 1.5) << e1 << " " << e2;
}

TEST(RasterOracle, StripsMatchHandIntegral) {
  TrigPoly mu(FreqRect(1, 0));
  mu[{1, 0}] = 0.5;
  mu[{-1, 0}] = 0.5;
  const FreqRect grid(6, 6);
  const FourierSamples f = raster_dft_oracle(TrigRegionPhantom{mu}, 256, grid);
  grid.for_each([&](Freq k) { EXPECT_LE(std::abs(f[k] - oracle::strip_coefficient(k)), 1e-3) << k.x << "," << k.y; });
}

TEST(RasterOracle, RealPhantomIsHermitianAndDcIsArea) {
  const TrigRegionPhantom ph{random_hermitian(FreqRect(2, 2), 1)};
  const FourierSamples f = raster_dft_oracle(ph, 512, FreqRect(6, 6));
  EXPECT_LE(f.hermitian_defect(), 1e-10);
  const Image<cplx> avg = raster_pixel_averages(ph, 512);
  cplx mean{};
  for (const auto& v : avg.data) mean += v;
  mean /= static_cast<double>(avg.size());
  EXPECT_LE(std::abs(f[Freq(0, 0)] - mean), 1e-12);
}

TEST(RasterOracle, ResolutionErrors) {
  EXPECT_THROW(raster_dft_oracle(disk(), 100, FreqRect(4, 4)), ResolutionError);
  EXPECT_THROW(raster_dft_oracle(disk(), 64, FreqRect(9, 4)), ResolutionError);
  EXPECT_NO_THROW(raster_dft_oracle(disk(), 64, FreqRect(8, 4)));
}

TEST(DiracStreamFt, SingleDiracAtOrigin) {
  const FourierSamples f = dirac_stream_ft({{{0.0, 0.0}}, {1.0}}, FreqRect(3, 3));
  for (const auto& v : f.values()) EXPECT_EQ(v, cplx(1.0, 0.0));
}

TEST(DiracStreamFt, TwoPointCancellation) {
  const FourierSamples f = dirac_stream_ft({{{0.25, 0.0}, {0.75, 0.0}}, {1.0, 1.0}}, FreqRect(3, 3));
  EXPECT_LE(std::abs(f[Freq(1, 0)]), 1e-15);
  EXPECT_LE(std::abs(f[Freq(2, 0)] + 2.0), 1e-15);
}

TEST(DiracStreamFt, MatchesExtendedPrecisionSum) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  DiracStream d;
  for (int m = 0; m < 200; ++m) {
    const double x = u(rng);
    d.points.push_back({x, u(rng)});
    const double re = g(rng);
    d.weights.push_back(cplx(re, g(rng)));
  }
  const FreqRect grid(10, 10);
  const FourierSamples f = dirac_stream_ft(d, grid);
  double worst = 0.0, peak = 0.0;
  grid.for_each([&](Freq k) {
    const auto ref = oracle::direct_dirac(d.points, d.weights, k);
    worst = std::max(worst, std::abs(f[k] - cplx(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))));
    peak = std::max(peak, static_cast<double>(std::abs(ref)));
  });
  EXPECT_LE(worst / peak, 1e-13);
  cplx total{};
  for (const auto& w : d.weights) total += w;
  EXPECT_LE(std::abs(f[Freq(0, 0)] - total), 1e-12);
}

TEST(DiracStreamFt, Validation) {
  EXPECT_THROW(dirac_stream_ft({{{0.1, 0.2}}, {}}, FreqRect(1, 1)), ValidationError);
  EXPECT_THROW(dirac_stream_ft({{{1.0, 0.2}}, {1.0}}, FreqRect(1, 1)), ValidationError);
}

TEST(CurvePoints, CosineRoots) {
  TrigPoly mu(FreqRect(1, 0));
  mu[{1, 0}] = 0.5;
  mu[{-1, 0}] = 0.5;
  const auto pts = curve_points(mu, 64, 10);
  ASSERT_EQ(pts.size(), 20u);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(pts[i].x, i % 2 == 0 ? 0.25 : 0.75, 1e-13);
}

TrigPoly blob() {
  TrigPoly mu(FreqRect(1, 1));
  mu[{1, 0}] = mu[{-1, 0}] = mu[{0, 1}] = mu[{0, -1}] = 0.5;
  mu[{0, 0}] = -0.5;
  return mu;
}

TEST(CurvePoints, RootsSatisfyPostcondition) {
  const TrigPoly mu = random_hermitian(FreqRect(3, 3), 9);
  const auto pts = curve_points(mu, 200, 50);
  EXPECT_FALSE(pts.empty());
  for (const auto& p : pts) EXPECT_LE(std::abs(mu(p)), 1e-12);
}

TEST(CurvePoints, CountMatchesDenseScan) {
  const TrigPoly mu = blob();
  const int lines = 16;
  const auto pts = curve_points(mu, 256, lines);
  for (int l = 0; l < lines; ++l) {
    const double y = static_cast<double>(l) / lines;
    const auto n = std::count_if(pts.begin(), pts.end(), [&](const Point& p) { return p.y == y; });
    EXPECT_EQ(n, oracle::dense_sign_changes(mu, y, 100000)) << "line " << l;
  }
}

TEST(CurvePoints, EmptyCurveAndErrors) {
  TrigPoly mu = blob();
  mu[{0, 0}] = 5.0;
  EXPECT_TRUE(curve_points(mu, 64, 8).empty());
  EXPECT_THROW(curve_points(TrigPoly::constant(1.0), 64, 8), ValidationError);
  EXPECT_THROW(curve_points(blob(), 1, 8), ValidationError);
}

}  // namespace
}  // namespace fri2d
