#include "mtomo/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "mtomo/error.hpp"

namespace mtomo::io {

namespace {

constexpr std::array<char, 8> kSinoMagic{'M', 'T', 'S', 'I', 'N', 'O', '1', '\0'};
constexpr std::array<char, 7> kImageMagic{'M', 'T', 'I', 'M', 'G', '1', '\0'};

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(b, 8);
}

void read_exact(std::istream& in, char* dst, std::size_t n, const char* what) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw IoError(std::string("truncated input while reading ") + what);
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  read_exact(in, reinterpret_cast<char*>(b), 4, what);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& in, const char* what) {
  unsigned char b[8];
  read_exact(in, reinterpret_cast<char*>(b), 8, what);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return std::bit_cast<double>(v);
}

template <std::size_t N>
void expect_magic(std::istream& in, const std::array<char, N>& magic, const char* what) {
  std::array<char, N> got{};
  read_exact(in, got.data(), N, what);
  if (got != magic) throw IoError(std::string("bad magic: not a ") + what + " file");
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

void check_written(const std::ostream& out, const std::string& path) {
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void write_sinogram(std::ostream& out, const Sinogram& sino) {
  out.write(kSinoMagic.data(), kSinoMagic.size());
  put_u32(out, static_cast<std::uint32_t>(sino.n_views()));
  put_u32(out, static_cast<std::uint32_t>(sino.n_rays()));
  for (double a : sino.geometry().angles_deg()) put_f64(out, a);
  for (auto k : sino.known_mask()) out.put(static_cast<char>(k));
  for (double v : sino.data()) put_f64(out, v);
}

Sinogram read_sinogram(std::istream& in) {
  expect_magic(in, kSinoMagic, "sinogram");
  const auto n_views = get_u32(in, "sinogram header");
  const auto n_rays = get_u32(in, "sinogram header");
  constexpr std::uint32_t kLimit = 1u << 20;
  if (n_views == 0 || n_views > kLimit || n_rays > kLimit)
    throw IoError("implausible sinogram dimensions");
  std::vector<double> angles(n_views);
  for (auto& a : angles) a = get_f64(in, "sinogram angles");
  std::vector<std::uint8_t> known(n_views);
  read_exact(in, reinterpret_cast<char*>(known.data()), n_views, "sinogram mask");
  std::vector<double> data(static_cast<std::size_t>(n_views) * n_rays);
  for (auto& v : data) v = get_f64(in, "sinogram data");
  try {
    return Sinogram(SinogramGeometry(std::move(angles), static_cast<int>(n_rays)), std::move(data),
                    std::move(known));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid sinogram: ") + e.what());
  }
}

void save_sinogram(const std::string& path, const Sinogram& sino) {
  auto out = open_out(path, true);
  write_sinogram(out, sino);
  check_written(out, path);
}

Sinogram load_sinogram(const std::string& path) {
  auto in = open_in(path, true);
  return read_sinogram(in);
}

void write_image(std::ostream& out, const Image& img) {
  out.write(kImageMagic.data(), kImageMagic.size());
  put_u32(out, static_cast<std::uint32_t>(img.size()));
  for (double v : img.data()) put_f64(out, v);
}

Image read_image(std::istream& in) {
  expect_magic(in, kImageMagic, "image");
  const auto n = get_u32(in, "image header");
  if (n == 0 || n > (1u << 15)) throw IoError("implausible image size");
  Image img(static_cast<int>(n));
  for (auto& v : img.data()) v = get_f64(in, "image data");
  return img;
}

void save_image(const std::string& path, const Image& img) {
  auto out = open_out(path, true);
  write_image(out, img);
  check_written(out, path);
}

Image load_image(const std::string& path) {
  auto in = open_in(path, true);
  return read_image(in);
}

void save_pgm(const std::string& path, const Image& img) {
  const auto data = img.data();
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *lo_it, hi = *hi_it;
  const double span = hi > lo ? hi - lo : 1.0;
  auto out = open_out(path, true);
  const int n = img.size();
  out << "P5\n" << n << ' ' << n << "\n65535\n";
  // top row of the file is the largest y
  for (int iy = n - 1; iy >= 0; --iy)
    for (int ix = 0; ix < n; ++ix) {
      const double t = (img.at(ix, iy) - lo) / span;
      const auto level = static_cast<std::uint16_t>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
      out.put(static_cast<char>(level >> 8));
      out.put(static_cast<char>(level & 0xff));
    }
  check_written(out, path);
  auto side = open_out(path + ".range", false);
  side << std::setprecision(17) << "min " << lo << "\nmax " << hi << '\n';
  check_written(side, path + ".range");
}

Image load_pgm(const std::string& path) {
  auto in = open_in(path, true);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (!in || magic != "P5" || w != h || w < 1 || maxval != 65535)
    throw IoError("'" + path + "' is not a square 16-bit P5 PGM");
  in.get();  // single whitespace after maxval
  double lo = 0.0, hi = 1.0;
  if (std::ifstream side(path + ".range"); side) {
    std::string key_lo, key_hi;
    side >> key_lo >> lo >> key_hi >> hi;
    if (!side || key_lo != "min" || key_hi != "max") throw IoError("malformed PGM range sidecar");
  }
  Image img(w);
  for (int iy = w - 1; iy >= 0; --iy)
    for (int ix = 0; ix < w; ++ix) {
      unsigned char b[2];
      read_exact(in, reinterpret_cast<char*>(b), 2, "PGM data");
      const double t = ((b[0] << 8) | b[1]) / 65535.0;
      img.at(ix, iy) = lo + t * (hi > lo ? hi - lo : 1.0);
    }
  return img;
}

void write_moments_csv(std::ostream& out, const MomentSet& moments) {
  out << "basis,M\n" << to_string(moments.basis()) << ',' << moments.order() << '\n';
  out << "n,m,value\n" << std::setprecision(17);
  for (int k = 0; k <= moments.order(); ++k)
    for (int m = 0; m <= k; ++m) out << (k - m) << ',' << m << ',' << moments.at(k - m, m) << '\n';
}

MomentSet read_moments_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "basis,M") throw IoError("moment CSV: missing `basis,M` header");
  if (!std::getline(in, line)) throw IoError("moment CSV: missing basis line");
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw IoError("moment CSV: malformed basis line");
  Basis basis;
  int order = 0;
  try {
    basis = parse_basis(line.substr(0, comma));
    order = std::stoi(line.substr(comma + 1));
  } catch (const std::exception& e) {
    throw IoError(std::string("moment CSV: ") + e.what());
  }
  if (order < 0 || order > kMaxCoeffOrder) throw IoError("moment CSV: order out of range");
  if (!std::getline(in, line) || line != "n,m,value") throw IoError("moment CSV: missing `n,m,value` header");
  MomentSet moments(order, basis);
  std::vector<bool> seen(MomentSet::count(order), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int n = 0, m = 0;
    double value = 0.0;
    char c1 = 0, c2 = 0;
    if (!(row >> n >> c1 >> m >> c2 >> value) || c1 != ',' || c2 != ',' || n < 0 || m < 0 ||
        n + m > order)
      throw IoError("moment CSV: bad row '" + line + "'");
    moments.at(n, m) = value;
    seen[MomentSet::index(n, m)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw IoError("moment CSV: missing entries");
  return moments;
}

void save_moments_csv(const std::string& path, const MomentSet& moments) {
  auto out = open_out(path, false);
  write_moments_csv(out, moments);
  check_written(out, path);
}

MomentSet load_moments_csv(const std::string& path) {
  auto in = open_in(path, false);
  return read_moments_csv(in);
}

void write_diagnostics_csv(std::ostream& out, const RecoveryReport& report) {
  out << "order,condition,residual\n" << std::setprecision(17);
  for (std::size_t k = 0; k < report.condition.size(); ++k)
    out << k << ',' << report.condition[k] << ',' << report.residual[k] << '\n';
}

void save_diagnostics_csv(const std::string& path, const RecoveryReport& report) {
  auto out = open_out(path, false);
  write_diagnostics_csv(out, report);
  check_written(out, path);
}

void write_completion_sidecar(std::ostream& out, const CompletionConfig& cfg,
                              const Sinogram& input, const RecoveryReport& report) {
  out << std::setprecision(17);
  out << "order " << cfg.order << '\n';
  out << "basis " << to_string(cfg.basis) << '\n';
  out << "blend " << to_string(cfg.blend) << '\n';
  out << "ridge " << cfg.recovery.ridge << '\n';
  out << "stacked " << (cfg.recovery.stacked ? 1 : 0) << '\n';
  out << "known_views " << input.known_count() << '\n';
  out << "view_mask ";
  for (auto k : input.known_mask()) out << (k ? '1' : '0');
  out << '\n';
  for (std::size_t k = 0; k < report.condition.size(); ++k)
    out << "order_" << k << " condition " << report.condition[k] << " residual "
        << report.residual[k] << '\n';
}

void save_completion_sidecar(const std::string& path, const CompletionConfig& cfg,
                             const Sinogram& input, const RecoveryReport& report) {
  auto out = open_out(path, false);
  write_completion_sidecar(out, cfg, input, report);
  check_written(out, path);
}

}  // namespace mtomo::io
