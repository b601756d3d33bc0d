#ifndef FRI2D_ANNIHILATION_HPP
#define FRI2D_ANNIHILATION_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "freq_grid.hpp"
#include "phantom.hpp"
#include "trigpoly.hpp"

namespace fri2d {

/// Partial derivative d^{alpha_x}_x d^{alpha_y}_y.
///
/// Order 0 is the identity; it is meant for data that is already a
/// derivative (e.g. a Dirac stream on the curve), where the plain samples
/// are annihilated directly.
struct DiffOp {
  int alpha_x = 0;
  int alpha_y = 0;

  constexpr int order() const { return alpha_x + alpha_y; }
  friend constexpr bool operator==(DiffOp, DiffOp) = default;

  static constexpr DiffOp identity() { return {0, 0}; }
  static constexpr DiffOp dx() { return {1, 0}; }
  static constexpr DiffOp dy() { return {0, 1}; }

  /// "id", or 'd' followed by x's and y's: "dx", "dyy", "dxxy".
  static DiffOp parse(const std::string& s) {
    if (s == "id") return identity();
    if (s.size() < 2 || s[0] != 'd') throw ValidationError("DiffOp: cannot parse '" + s + "'");
    DiffOp op;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] == 'x')
        ++op.alpha_x;
      else if (s[i] == 'y')
        ++op.alpha_y;
      else
        throw ValidationError("DiffOp: cannot parse '" + s + "'");
    }
    return op;
  }

  std::string name() const {
    if (order() == 0) return "id";
    return "d" + std::string(alpha_x, 'x') + std::string(alpha_y, 'y');
  }
};

/// All partial derivatives of order n; n = 1 gives the gradient
/// (piecewise-constant model), n = 2 the piecewise-linear model.
inline std::vector<DiffOp> ops_of_order(int n) {
  std::vector<DiffOp> ops;
  for (int ax = n; ax >= 0; --ax) ops.push_back({ax, n - ax});
  return ops;
}

inline std::vector<DiffOp> parse_ops(const std::string& csv) {
  std::vector<DiffOp> ops;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) ops.push_back(DiffOp::parse(tok));
  if (ops.empty()) throw ValidationError("empty operator list");
  return ops;
}

/// (j 2pi k_x)^{alpha_x} (j 2pi k_y)^{alpha_y}. `sign` = -1 gives the
/// (-j omega) convention; it flips each equation by (-1)^order only.
inline cplx derivative_weight(Freq k, DiffOp op, int sign = 1) {
  const cplx jx(0.0, sign * kTwoPi * k.x);
  const cplx jy(0.0, sign * kTwoPi * k.y);
  cplx w(1.0, 0.0);
  for (int i = 0; i < op.alpha_x; ++i) w *= jx;
  for (int i = 0; i < op.alpha_y; ++i) w *= jy;
  return w;
}

/// Stacked block-Toeplitz system T[f_hat]: row (op, l), column k holds
/// w_op(l - k) f_hat[l - k]. Columns follow the filter support's linear
/// order; rows run over ops, then shifts l in row-major order.
struct AnnihilationSystem {
  Eigen::MatrixXcd matrix;
  FreqRect filter_support;
  FreqRect sample_grid;
  FreqRect shift_grid;  // valid shifts l
  std::vector<DiffOp> ops;

  std::size_t shifts_per_op() const { return shift_grid.size(); }

  std::pair<std::size_t, Freq> row_index(std::size_t row) const {
    return {row / shifts_per_op(), shift_grid.freq(row % shifts_per_op())};
  }
  Freq freq_of(std::size_t row, std::size_t col) const {
    return row_index(row).second - filter_support.freq(col);
  }
};

/// Shifts l for which l - k stays in `grid` for every k in `filter`.
inline FreqRect valid_shifts(const FreqRect& grid, const FreqRect& filter) {
  if (filter.kmax_x > grid.kmax_x || filter.kmax_y > grid.kmax_y)
    throw DimensionError("filter support " + to_string(filter) + " does not fit sample grid " +
                         to_string(grid));
  return {grid.kmax_x - filter.kmax_x, grid.kmax_y - filter.kmax_y};
}

inline AnnihilationSystem build_system(const FourierSamples& samples, const FreqRect& filter_support,
                                       const std::vector<DiffOp>& ops, int sign = 1) {
  if (ops.empty()) throw ValidationError("build_system: no differential operators");
  const FreqRect& grid = samples.grid();
  AnnihilationSystem sys;
  sys.filter_support = filter_support;
  sys.sample_grid = grid;
  sys.shift_grid = valid_shifts(grid, filter_support);
  sys.ops = ops;
  const auto n_shift = static_cast<Eigen::Index>(sys.shift_grid.size());
  const auto n_col = static_cast<Eigen::Index>(filter_support.size());
  sys.matrix.resize(n_shift * static_cast<Eigen::Index>(ops.size()), n_col);

  FreqArray<cplx> weighted(grid);
  for (std::size_t o = 0; o < ops.size(); ++o) {
    grid.for_each([&](Freq m) { weighted[m] = derivative_weight(m, ops[o], sign) * samples[m]; });
    for (Eigen::Index s = 0; s < n_shift; ++s) {
      const Freq l = sys.shift_grid.freq(static_cast<std::size_t>(s));
      const Eigen::Index row = static_cast<Eigen::Index>(o) * n_shift + s;
      for (Eigen::Index c = 0; c < n_col; ++c)
        sys.matrix(row, c) = weighted[l - filter_support.freq(static_cast<std::size_t>(c))];
    }
  }
  return sys;
}

inline Eigen::VectorXcd to_vector(const FreqArray<cplx>& a) {
  return Eigen::Map<const Eigen::VectorXcd>(a.values().data(), static_cast<Eigen::Index>(a.size()));
}

struct NullspaceResult {
  TrigPoly filter;                      // unit-norm right singular vector, raw phase
  std::vector<double> singular_values;  // descending, padded with zeros to the column count
  int nullity = 0;                      // count of sigma_i <= rel_tol * sigma_max
};

/// Right singular vector of the smallest singular value. When several
/// singular values fall under the tolerance the last vector is still
/// returned and `nullity` reports how many there are.
inline NullspaceResult nullspace_filter(const AnnihilationSystem& sys, double rel_tol = 1e-8) {
  const auto& a = sys.matrix;
  if (a.cols() < 1) throw DimensionError("nullspace_filter: matrix has no columns");
  if (a.norm() == 0.0)
    throw DegenerateError("nullspace_filter: all-zero system, every filter annihilates (nullity " +
                          std::to_string(a.cols()) + ")");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  NullspaceResult res;
  const auto& sv = svd.singularValues();
  res.singular_values.assign(sv.data(), sv.data() + sv.size());
  res.singular_values.resize(static_cast<std::size_t>(a.cols()), 0.0);
  const double smax = res.singular_values.front();
  for (double s : res.singular_values) res.nullity += s <= rel_tol * smax ? 1 : 0;
  const Eigen::VectorXcd v = svd.matrixV().col(a.cols() - 1);
  res.filter = TrigPoly(sys.filter_support, std::vector<cplx>(v.data(), v.data() + v.size()));
  return res;
}

/// Full singular spectrum, descending, padded with zeros to the column count.
/// An all-zero system yields an all-zero spectrum.
inline std::vector<double> singular_spectrum(const AnnihilationSystem& sys) {
  std::vector<double> out;
  if (sys.matrix.size() > 0 && sys.matrix.norm() > 0.0) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys.matrix);
    const auto& sv = svd.singularValues();
    out.assign(sv.data(), sv.data() + sv.size());
  }
  out.resize(static_cast<std::size_t>(sys.matrix.cols()), 0.0);
  return out;
}

struct SampleGrid {
  int dim_x = 1;
  int dim_y = 1;
  int margin = 0;
};

/// Smallest odd grid (K + d, L + d), d even, with 2 (d + 1)^2 >= K L
/// equations for the K L unknowns of a first-order system.
inline SampleGrid min_sample_grid(int K, int L) {
  if (K < 1 || L < 1 || K % 2 == 0 || L % 2 == 0)
    throw ValidationError("min_sample_grid: degrees must be odd and positive");
  const long long unknowns = static_cast<long long>(K) * L;
  int d = 0;
  while (2LL * (d + 1) * (d + 1) < unknowns) d += 2;
  return {K + d, L + d, d};
}

inline long long equation_count(const FreqRect& grid, const FreqRect& filter, std::size_t n_ops) {
  const FreqRect s = valid_shifts(grid, filter);
  return static_cast<long long>(n_ops) * static_cast<long long>(s.size());
}

struct SufficientGrids {
  FreqRect shift_grid;   // 2 Lambda
  FreqRect sample_grid;  // 3 Lambda
};

inline SufficientGrids sufficient_grids(const FreqRect& filter_support) {
  return {filter_support.dilate(2), filter_support.dilate(3)};
}

struct Residual {
  double value = 0.0;
  bool degenerate = false;
};

/// ||T c|| / (||T||_F ||c||): scale-invariant in both the samples and the
/// filter. Zero with `degenerate` set when either norm vanishes.
inline Residual annihilation_residual(const FourierSamples& samples, const TrigPoly& filter,
                                      const std::vector<DiffOp>& ops) {
  const AnnihilationSystem sys = build_system(samples, filter.support(), ops);
  const double tn = sys.matrix.norm();
  const Eigen::VectorXcd c = to_vector(filter);
  const double cn = c.norm();
  if (tn == 0.0 || cn == 0.0) return {0.0, true};
  return {(sys.matrix * c).norm() / (tn * cn), false};
}

}  // namespace fri2d

#endif  // FRI2D_ANNIHILATION_HPP
