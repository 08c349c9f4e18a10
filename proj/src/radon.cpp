#include "mtomo/radon.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mtomo/parallel.hpp"

namespace mtomo {

namespace {

// Bilinear interpolation over pixel centers; samples beyond the outermost
// centers blend towards zero.
double bilinear(const Image& img, double x, double y) {
  const int n = img.size();
  const double u = (x + 1.0) * n / 2.0 - 0.5;
  const double v = (y + 1.0) * n / 2.0 - 0.5;
  const double uf = std::floor(u), vf = std::floor(v);
  const int i0 = static_cast<int>(uf), j0 = static_cast<int>(vf);
  if (i0 < -1 || j0 < -1 || i0 >= n || j0 >= n) return 0.0;
  const double fx = u - uf, fy = v - vf;
  auto px = [&](int i, int j) {
    return (i < 0 || j < 0 || i >= n || j >= n) ? 0.0 : img.at(i, j);
  };
  return (1 - fx) * (1 - fy) * px(i0, j0) + fx * (1 - fy) * px(i0 + 1, j0) +
         (1 - fx) * fy * px(i0, j0 + 1) + fx * fy * px(i0 + 1, j0 + 1);
}

}  // namespace

SinogramGeometry::SinogramGeometry(std::vector<double> angles_deg, int n_rays)
    : angles_deg_(std::move(angles_deg)), n_rays_(n_rays) {
  if (n_rays_ < 2) throw std::invalid_argument("n_rays must be >= 2");
  if (angles_deg_.empty()) throw std::invalid_argument("geometry needs at least one view");
  for (std::size_t i = 0; i < angles_deg_.size(); ++i) {
    const double a = angles_deg_[i];
    if (!(a >= 0.0 && a < 180.0))
      throw std::invalid_argument("view angle " + std::to_string(a) + " outside [0, 180)");
    if (i > 0 && !(a > angles_deg_[i - 1]))
      throw std::invalid_argument("view angles must be strictly increasing");
  }
}

SinogramGeometry SinogramGeometry::uniform(int n_views, int n_rays, double step_deg) {
  if (n_views < 1) throw std::invalid_argument("n_views must be positive");
  std::vector<double> angles(n_views);
  for (int i = 0; i < n_views; ++i) angles[i] = i * step_deg;
  return SinogramGeometry(std::move(angles), n_rays);
}

double SinogramGeometry::angle_rad(int view) const {
  return angles_deg_.at(view) * std::numbers::pi / 180.0;
}

std::vector<double> SinogramGeometry::ray_positions() const {
  std::vector<double> s(n_rays_);
  for (int j = 0; j < n_rays_; ++j) s[j] = ray_position(j);
  return s;
}

Sinogram::Sinogram(SinogramGeometry geometry)
    : geometry_(std::move(geometry)),
      data_(static_cast<std::size_t>(geometry_.n_views()) * geometry_.n_rays(), 0.0),
      known_(geometry_.n_views(), 1) {}

Sinogram::Sinogram(SinogramGeometry geometry, std::vector<double> data,
                   std::vector<std::uint8_t> known)
    : geometry_(std::move(geometry)), data_(std::move(data)), known_(std::move(known)) {
  if (data_.size() != static_cast<std::size_t>(geometry_.n_views()) * geometry_.n_rays())
    throw std::invalid_argument("sinogram data size does not match geometry");
  if (known_.size() != static_cast<std::size_t>(geometry_.n_views()))
    throw std::invalid_argument("known mask length does not match view count");
  for (double v : data_)
    if (!std::isfinite(v)) throw std::invalid_argument("sinogram data must be finite");
  for (auto& k : known_) k = k ? 1 : 0;
}

std::span<double> Sinogram::row(int view) {
  return std::span<double>(data_).subspan(index(view, 0), geometry_.n_rays());
}

std::span<const double> Sinogram::row(int view) const {
  return std::span<const double>(data_).subspan(index(view, 0), geometry_.n_rays());
}

int Sinogram::known_count() const {
  int c = 0;
  for (auto k : known_) c += k;
  return c;
}

std::vector<int> Sinogram::known_views() const {
  std::vector<int> v;
  for (int i = 0; i < n_views(); ++i)
    if (known_[i]) v.push_back(i);
  return v;
}

std::vector<int> Sinogram::unknown_views() const {
  std::vector<int> v;
  for (int i = 0; i < n_views(); ++i)
    if (!known_[i]) v.push_back(i);
  return v;
}

void Sinogram::mask_known_range(double lo_deg, double hi_deg) {
  for (int i = 0; i < n_views(); ++i) {
    const double a = geometry_.angles_deg()[i];
    known_[i] = (a >= lo_deg && a <= hi_deg) ? 1 : 0;
  }
}

Sinogram project_image(const Image& image, const SinogramGeometry& geometry) {
  if (image.size() < 16) throw std::invalid_argument("project_image needs a square image of side >= 16");
  Sinogram sino(geometry);
  const double h = image.pixel_size() / 2.0;
  const int half = static_cast<int>(std::ceil(std::numbers::sqrt2 / h));
  parallel_for(0, geometry.n_views(), [&](int view) {
    const double th = geometry.angle_rad(view);
    const double c = std::cos(th), s = std::sin(th);
    auto row = sino.row(view);
    for (int j = 0; j < geometry.n_rays(); ++j) {
      const double r = geometry.ray_position(j);
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        const double t = k * h;
        const double w = (k == -half || k == half) ? 0.5 : 1.0;
        acc += w * bilinear(image, r * c - t * s, r * s + t * c);
      }
      row[j] = acc * h;
    }
  });
  return sino;
}

Sinogram project_phantom(const PhantomSpec& spec, const SinogramGeometry& geometry) {
  Sinogram sino(geometry);
  parallel_for(0, geometry.n_views(), [&](int view) {
    const double th = geometry.angle_rad(view);
    auto row = sino.row(view);
    for (int j = 0; j < geometry.n_rays(); ++j)
      row[j] = analytic_projection(spec, th, geometry.ray_position(j));
  });
  return sino;
}

}  // namespace mtomo
