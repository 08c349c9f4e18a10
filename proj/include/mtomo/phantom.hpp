#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mtomo/image.hpp"

namespace mtomo {

/// One additive ellipse. `a` is the semi-axis along the tilted x direction,
/// `tilt` is in radians, counter-clockwise from the x axis.
struct Ellipse {
  double cx = 0.0;
  double cy = 0.0;
  double a = 0.0;
  double b = 0.0;
  double tilt = 0.0;
  double density = 0.0;

  bool contains(double x, double y) const;
  /// Exact line integral of the unit-density ellipse along
  /// x cos(theta) + y sin(theta) = s.
  double chord_integral(double theta, double s) const;
};

/// Non-empty list of ellipses, each contained in the closed unit disk.
class PhantomSpec {
public:
  explicit PhantomSpec(std::vector<Ellipse> ellipses);

  const std::vector<Ellipse>& ellipses() const noexcept { return ellipses_; }

  /// Total integral sum(density * pi * a * b).
  double mass() const;

  /// Default 5-ellipse Shepp-Logan-like phantom used throughout the tests.
  static PhantomSpec reference();

private:
  std::vector<Ellipse> ellipses_;
};

/// Pixel-center sampling of the density sum; zero outside the unit disk.
Image rasterize(const PhantomSpec& spec, int n);

/// Exact parallel projection g_theta(s).
double analytic_projection(const PhantomSpec& spec, double theta, double s);

/// Text format: one ellipse per line, `cx cy a b tilt_deg density`;
/// blank lines and lines starting with '#' are ignored.
PhantomSpec parse_phantom_spec(std::istream& in);
void write_phantom_spec(std::ostream& out, const PhantomSpec& spec);
PhantomSpec load_phantom_spec(const std::string& path);
void save_phantom_spec(const std::string& path, const PhantomSpec& spec);

}  // namespace mtomo
