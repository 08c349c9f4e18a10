#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mtomo {

/// Center of cell i when [-1, 1] is split into n equal cells. Shared by
/// pixels and detector rays.
inline double cell_center(int i, int n) { return -1.0 + (2.0 * i + 1.0) / n; }

/// Square n x n grid over [-1, 1]^2. Pixel (ix, iy) sits at
/// (cell_center(ix, n), cell_center(iy, n)); storage is row-major with one row
/// per iy.
class Image {
public:
  Image() = default;
  explicit Image(int n, double fill = 0.0);

  int size() const noexcept { return n_; }
  double pixel_size() const noexcept { return 2.0 / n_; }

  double& at(int ix, int iy) { return data_[static_cast<std::size_t>(iy) * n_ + ix]; }
  double at(int ix, int iy) const { return data_[static_cast<std::size_t>(iy) * n_ + ix]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Zeroes every pixel whose center lies outside the closed unit disk.
  void mask_to_unit_disk();

  bool operator==(const Image&) const = default;

private:
  int n_ = 0;
  std::vector<double> data_;
};

/// True when the pixel center of (ix, iy) lies in the closed unit disk.
bool inside_unit_disk(int ix, int iy, int n);

}  // namespace mtomo
