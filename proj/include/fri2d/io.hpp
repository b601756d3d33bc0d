#ifndef FRI2D_IO_HPP
#define FRI2D_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "freq_grid.hpp"
#include "image.hpp"
#include "phantom.hpp"
#include "trigpoly.hpp"

namespace fri2d {

/// Unreadable or unwritable file.
class IoError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

inline std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

/// Shared body of the TRIGPOLY and FSAMPLES formats:
///   <TAG> kmax_x kmax_y
///   kx ky re im       (one line per frequency, k_x outer, k_y inner)
inline std::string write_coeff_text(std::string_view tag, const FreqArray<cplx>& a) {
  std::string out;
  out += tag;
  out += ' ' + std::to_string(a.rect().kmax_x) + ' ' + std::to_string(a.rect().kmax_y) + '\n';
  a.rect().for_each([&](Freq k) {
    const cplx v = a[k];
    out += std::to_string(k.x) + ' ' + std::to_string(k.y) + ' ' + format_g17(v.real()) + ' ' +
           format_g17(v.imag()) + '\n';
  });
  return out;
}

inline FreqArray<cplx> read_coeff_text(std::string_view tag, const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!(in >> header) || header != tag)
    throw ParseError("expected header '" + std::string(tag) + "'");
  long long kx_max = -1, ky_max = -1;
  if (!(in >> kx_max >> ky_max) || kx_max < 0 || ky_max < 0 || kx_max > 100000 || ky_max > 100000)
    throw ParseError(std::string(tag) + ": bad kmax fields");
  const FreqRect rect(static_cast<int>(kx_max), static_cast<int>(ky_max));
  FreqArray<cplx> a(rect);
  std::size_t n = 0;
  rect.for_each([&](Freq k) {
    long long kx = 0, ky = 0;
    double re = 0.0, im = 0.0;
    if (!(in >> kx >> ky >> re >> im))
      throw ParseError(std::string(tag) + ": missing entry for (" + std::to_string(k.x) + "," +
                       std::to_string(k.y) + ")");
    if (kx != k.x || ky != k.y)
      throw ParseError(std::string(tag) + ": expected (" + std::to_string(k.x) + "," + std::to_string(k.y) +
                       ") but found (" + std::to_string(kx) + "," + std::to_string(ky) + ")");
    if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(std::string(tag) + ": non-finite value");
    a[k] = cplx(re, im);
    ++n;
  });
  std::string extra;
  if (in >> extra) throw ParseError(std::string(tag) + ": trailing data after " + std::to_string(n) + " entries");
  return a;
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write to '" + path + "' failed");
}

inline std::string to_text(const TrigPoly& p) { return detail::write_coeff_text("TRIGPOLY", p); }
inline std::string to_text(const FourierSamples& s) { return detail::write_coeff_text("FSAMPLES", s); }
inline TrigPoly trigpoly_from_text(const std::string& t) { return TrigPoly(detail::read_coeff_text("TRIGPOLY", t)); }
inline FourierSamples samples_from_text(const std::string& t) {
  return FourierSamples(detail::read_coeff_text("FSAMPLES", t));
}

inline void save(const std::string& path, const TrigPoly& p) { write_file(path, to_text(p)); }
inline void save(const std::string& path, const FourierSamples& s) { write_file(path, to_text(s)); }
inline TrigPoly load_trigpoly(const std::string& path) { return trigpoly_from_text(read_file(path)); }
inline FourierSamples load_samples(const std::string& path) { return samples_from_text(read_file(path)); }

/// One value per line, %.17g.
inline std::string values_csv(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += format_g17(x) + '\n';
  return out;
}

struct PgmWindow {
  double min = 0.0;
  double max = 0.0;
};

/// 8-bit binary PGM of the affine map [min, max] -> [0, 255]. Image rows are
/// y (j), columns x (i).
inline std::string to_pgm(const Image<double>& img, PgmWindow* window = nullptr) {
  double lo = 0.0, hi = 0.0;
  if (!img.data.empty()) {
    const auto [mn, mx] = std::minmax_element(img.data.begin(), img.data.end());
    lo = *mn;
    hi = *mx;
  }
  if (window) *window = {lo, hi};
  std::string out = "P5\n" + std::to_string(img.nx) + " " + std::to_string(img.ny) + "\n255\n";
  const double span = hi - lo;
  for (int j = 0; j < img.ny; ++j)
    for (int i = 0; i < img.nx; ++i) {
      const double t = span > 0.0 ? (img(i, j) - lo) / span : 0.0;
      out.push_back(static_cast<char>(static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0))));
    }
  return out;
}

inline Image<double> real_part(const Image<cplx>& img) {
  Image<double> out(img.nx, img.ny);
  for (std::size_t p = 0; p < img.size(); ++p) out.data[p] = img.data[p].real();
  return out;
}

inline Image<double> mask_image(const Mask& m) {
  Image<double> out(m.nx, m.ny);
  for (std::size_t p = 0; p < m.size(); ++p) out.data[p] = m.data[p] ? 1.0 : 0.0;
  return out;
}

/// Writes `path` and the window sidecar `path.window` ("min max").
inline void save_pgm(const std::string& path, const Image<double>& img) {
  PgmWindow w;
  const std::string bytes = to_pgm(img, &w);
  write_file(path, bytes);
  write_file(path + ".window", format_g17(w.min) + " " + format_g17(w.max) + "\n");
}

}  // namespace fri2d

#endif  // FRI2D_IO_HPP
