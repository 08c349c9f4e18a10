#include "mtomo/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mtomo/error.hpp"

namespace mtomo {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void validate(const Ellipse& e, std::size_t index) {
  const auto where = "ellipse " + std::to_string(index) + ": ";
  if (!(e.a > 0.0) || !(e.b > 0.0)) throw std::invalid_argument(where + "semi-axes must be positive");
  if (!std::isfinite(e.cx) || !std::isfinite(e.cy) || !std::isfinite(e.tilt) ||
      !std::isfinite(e.density))
    throw std::invalid_argument(where + "non-finite parameter");
  if (std::hypot(e.cx, e.cy) + std::max(e.a, e.b) > 1.0 + 1e-12)
    throw std::invalid_argument(where + "not contained in the unit disk");
}

}  // namespace

bool Ellipse::contains(double x, double y) const {
  const double dx = x - cx, dy = y - cy;
  const double ct = std::cos(tilt), st = std::sin(tilt);
  const double u = (dx * ct + dy * st) / a;
  const double v = (-dx * st + dy * ct) / b;
  return u * u + v * v <= 1.0;
}

double Ellipse::chord_integral(double theta, double s) const {
  const double offset = s - (cx * std::cos(theta) + cy * std::sin(theta));
  const double phi = theta - tilt;
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double w2 = a * a * cp * cp + b * b * sp * sp;
  const double h = w2 - offset * offset;
  return h > 0.0 ? 2.0 * a * b * std::sqrt(h) / w2 : 0.0;
}

PhantomSpec::PhantomSpec(std::vector<Ellipse> ellipses) : ellipses_(std::move(ellipses)) {
  if (ellipses_.empty()) throw std::invalid_argument("phantom needs at least one ellipse");
  for (std::size_t i = 0; i < ellipses_.size(); ++i) validate(ellipses_[i], i);
}

double PhantomSpec::mass() const {
  double m = 0.0;
  for (const auto& e : ellipses_) m += e.density * std::numbers::pi * e.a * e.b;
  return m;
}

PhantomSpec PhantomSpec::reference() {
  // Shepp-Logan layout without the thin skull ring; the ring's edges dominate
  // any 128-pixel reconstruction error.
  return PhantomSpec({
      {0.00, 0.00, 0.69, 0.92, 0.0, 1.0},
      {0.22, 0.00, 0.11, 0.31, -18.0 * kDeg, -0.3},
      {-0.22, 0.00, 0.16, 0.41, 18.0 * kDeg, -0.3},
      {0.00, 0.35, 0.21, 0.25, 0.0, 0.2},
      {0.00, -0.50, 0.10, 0.10, 0.0, 0.3},
  });
}

Image rasterize(const PhantomSpec& spec, int n) {
  if (n < 16) throw std::invalid_argument("rasterize needs n >= 16");
  Image img(n);
  for (int iy = 0; iy < n; ++iy) {
    const double y = cell_center(iy, n);
    for (int ix = 0; ix < n; ++ix) {
      const double x = cell_center(ix, n);
      if (x * x + y * y > 1.0) continue;
      double v = 0.0;
      for (const auto& e : spec.ellipses())
        if (e.contains(x, y)) v += e.density;
      img.at(ix, iy) = v;
    }
  }
  return img;
}

double analytic_projection(const PhantomSpec& spec, double theta, double s) {
  double g = 0.0;
  for (const auto& e : spec.ellipses()) g += e.density * e.chord_integral(theta, s);
  return g;
}

PhantomSpec parse_phantom_spec(std::istream& in) {
  std::vector<Ellipse> ellipses;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Ellipse e;
    double tilt_deg = 0.0;
    if (!(fields >> e.cx >> e.cy >> e.a >> e.b >> tilt_deg >> e.density))
      throw IoError("phantom spec line " + std::to_string(line_no) +
                    ": expected `cx cy a b tilt_deg density`");
    std::string extra;
    if (fields >> extra)
      throw IoError("phantom spec line " + std::to_string(line_no) + ": trailing field '" +
                    extra + "'");
    e.tilt = tilt_deg * kDeg;
    ellipses.push_back(e);
  }
  return PhantomSpec(std::move(ellipses));
}

void write_phantom_spec(std::ostream& out, const PhantomSpec& spec) {
  out << "# cx cy a b tilt_deg density\n" << std::setprecision(17);
  for (const auto& e : spec.ellipses())
    out << e.cx << ' ' << e.cy << ' ' << e.a << ' ' << e.b << ' ' << e.tilt / kDeg << ' '
        << e.density << '\n';
}

PhantomSpec load_phantom_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open phantom spec '" + path + "'");
  return parse_phantom_spec(in);
}

void save_phantom_spec(const std::string& path, const PhantomSpec& spec) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write phantom spec '" + path + "'");
  write_phantom_spec(out, spec);
}

}  // namespace mtomo
