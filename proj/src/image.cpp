#include "mtomo/image.hpp"

#include <stdexcept>

namespace mtomo {

Image::Image(int n, double fill) : n_(n) {
  if (n < 1) throw std::invalid_argument("image size must be positive");
  data_.assign(static_cast<std::size_t>(n) * n, fill);
}

bool inside_unit_disk(int ix, int iy, int n) {
  const double x = cell_center(ix, n);
  const double y = cell_center(iy, n);
  return x * x + y * y <= 1.0;
}

void Image::mask_to_unit_disk() {
  for (int iy = 0; iy < n_; ++iy)
    for (int ix = 0; ix < n_; ++ix)
      if (!inside_unit_disk(ix, iy, n_)) at(ix, iy) = 0.0;
}

}  // namespace mtomo
