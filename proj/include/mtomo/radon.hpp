#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtomo/image.hpp"
#include "mtomo/phantom.hpp"

namespace mtomo {

/// View angles (degrees, strictly increasing in [0, 180)) and the ray grid
/// s_j = -1 + (2j+1)/n_rays.
class SinogramGeometry {
public:
  SinogramGeometry(std::vector<double> angles_deg, int n_rays);

  /// n_views angles at `step_deg` spacing starting from 0.
  static SinogramGeometry uniform(int n_views = 180, int n_rays = 128, double step_deg = 1.0);

  int n_views() const noexcept { return static_cast<int>(angles_deg_.size()); }
  int n_rays() const noexcept { return n_rays_; }
  const std::vector<double>& angles_deg() const noexcept { return angles_deg_; }
  double angle_rad(int view) const;
  double ray_position(int j) const { return cell_center(j, n_rays_); }
  std::vector<double> ray_positions() const;

  bool operator==(const SinogramGeometry&) const = default;

private:
  std::vector<double> angles_deg_;
  int n_rays_;
};

/// View-major grid of line integrals plus a per-view known flag.
class Sinogram {
public:
  explicit Sinogram(SinogramGeometry geometry);
  Sinogram(SinogramGeometry geometry, std::vector<double> data, std::vector<std::uint8_t> known);

  const SinogramGeometry& geometry() const noexcept { return geometry_; }
  int n_views() const noexcept { return geometry_.n_views(); }
  int n_rays() const noexcept { return geometry_.n_rays(); }

  std::span<double> row(int view);
  std::span<const double> row(int view) const;
  double& at(int view, int ray) { return data_[index(view, ray)]; }
  double at(int view, int ray) const { return data_[index(view, ray)]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool known(int view) const { return known_.at(view) != 0; }
  void set_known(int view, bool value) { known_.at(view) = value ? 1 : 0; }
  const std::vector<std::uint8_t>& known_mask() const noexcept { return known_; }
  int known_count() const;
  std::vector<int> known_views() const;
  std::vector<int> unknown_views() const;

  /// Marks views with lo_deg <= angle <= hi_deg known, everything else unknown.
  void mask_known_range(double lo_deg, double hi_deg);

  bool operator==(const Sinogram&) const = default;

private:
  std::size_t index(int view, int ray) const {
    return static_cast<std::size_t>(view) * geometry_.n_rays() + ray;
  }

  SinogramGeometry geometry_;
  std::vector<double> data_;
  std::vector<std::uint8_t> known_;
};

/// Line-sampling projector: each ray is sampled at half-pixel steps with
/// bilinear interpolation and trapezoid weights. All views marked known.
Sinogram project_image(const Image& image, const SinogramGeometry& geometry);

/// Exact sinogram from the analytic ellipse projections.
Sinogram project_phantom(const PhantomSpec& spec, const SinogramGeometry& geometry);

}  // namespace mtomo
