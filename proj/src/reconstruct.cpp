#include "mtomo/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mtomo/parallel.hpp"

namespace mtomo {

const char* to_string(Filter filter) {
  return filter == Filter::hamming_windowed ? "hamming" : "ram-lak";
}

Filter parse_filter(const std::string& name) {
  if (name == "ram-lak" || name == "ram_lak" || name == "ramlak") return Filter::ram_lak;
  if (name == "hamming" || name == "hamming_windowed") return Filter::hamming_windowed;
  throw std::invalid_argument("unknown filter '" + name + "' (expected ram-lak or hamming)");
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("FFT length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(k));
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<double> ramp_response(int padded_length, double tau, Filter filter) {
  // Spatial Ram-Lak kernel: 1/(4 tau^2) at 0, 0 at even lags,
  // -1/(pi k tau)^2 at odd lags; transformed and scaled by tau.
  std::vector<std::complex<double>> kernel(padded_length);
  const int half = padded_length / 2;
  for (int i = 0; i < padded_length; ++i) {
    const int k = i < half ? i : i - padded_length;
    double h = 0.0;
    if (k == 0)
      h = 1.0 / (4.0 * tau * tau);
    else if (k % 2 != 0)
      h = -1.0 / (std::numbers::pi * std::numbers::pi * k * k * tau * tau);
    kernel[i] = h * tau;
  }
  fft_radix2(kernel, false);
  std::vector<double> response(padded_length);
  for (int i = 0; i < padded_length; ++i) {
    double r = kernel[i].real();
    if (filter == Filter::hamming_windowed) {
      const int k = i <= half ? i : padded_length - i;
      r *= 0.54 + 0.46 * std::cos(std::numbers::pi * k / half);
    }
    response[i] = r;
  }
  return response;
}

Image fbp_reconstruct(const Sinogram& sino, const ReconConfig& cfg) {
  if (cfg.size < 16) throw std::invalid_argument("reconstruction size must be >= 16");
  if (sino.known_count() != sino.n_views())
    throw std::invalid_argument(
        "sinogram has unknown views; complete it or zero-fill it before reconstruction");
  const int n_views = sino.n_views();
  const int n_rays = sino.n_rays();
  int padded = 1;
  while (padded < 2 * n_rays) padded <<= 1;
  const double tau = 2.0 / n_rays;
  const auto response = ramp_response(padded, tau, cfg.filter);

  std::vector<std::vector<double>> filtered(n_views, std::vector<double>(n_rays));
  parallel_for(0, n_views, [&](int v) {
    std::vector<std::complex<double>> buf(padded);
    const auto row = sino.row(v);
    for (int j = 0; j < n_rays; ++j) buf[j] = row[j];
    fft_radix2(buf, false);
    for (int i = 0; i < padded; ++i) buf[i] *= response[i];
    fft_radix2(buf, true);
    for (int j = 0; j < n_rays; ++j) filtered[v][j] = buf[j].real();
  });

  std::vector<double> cosines(n_views), sines(n_views);
  for (int v = 0; v < n_views; ++v) {
    cosines[v] = std::cos(sino.geometry().angle_rad(v));
    sines[v] = std::sin(sino.geometry().angle_rad(v));
  }
  const int n = cfg.size;
  Image img(n);
  const double scale = std::numbers::pi / n_views;
  parallel_for(0, n, [&](int iy) {
    const double y = cell_center(iy, n);
    for (int ix = 0; ix < n; ++ix) {
      const double x = cell_center(ix, n);
      if (x * x + y * y > 1.0) continue;
      double acc = 0.0;
      for (int v = 0; v < n_views; ++v) {
        const double s = x * cosines[v] + y * sines[v];
        // continuous ray index of s on the cell-center grid
        const double u = (s + 1.0) * n_rays / 2.0 - 0.5;
        if (u < 0.0 || u > n_rays - 1) continue;
        const int j = std::min(static_cast<int>(u), n_rays - 2);
        const double f = u - j;
        acc += (1.0 - f) * filtered[v][j] + f * filtered[v][j + 1];
      }
      img.at(ix, iy) = acc * scale;
    }
  });
  return img;
}

Sinogram zero_filled(const Sinogram& sino) {
  Sinogram out = sino;
  for (int v : sino.unknown_views()) {
    auto row = out.row(v);
    std::fill(row.begin(), row.end(), 0.0);
    out.set_known(v, true);
  }
  return out;
}

double mse_percent(const Image& reference, const Image& test) {
  if (reference.size() != test.size()) throw std::invalid_argument("image sizes differ");
  const int n = reference.size();
  double num = 0.0, den = 0.0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      if (!inside_unit_disk(ix, iy, n)) continue;
      const double r = reference.at(ix, iy);
      const double d = test.at(ix, iy) - r;
      num += d * d;
      den += r * r;
    }
  if (den == 0.0) throw std::invalid_argument("reference image is identically zero");
  return 100.0 * num / den;
}

}  // namespace mtomo
