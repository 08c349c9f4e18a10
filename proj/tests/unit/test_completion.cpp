#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "mtomo/completion.hpp"
#include "mtomo/error.hpp"
#include "mtomo/phantom.hpp"
#include "oracles.hpp"

using namespace mtomo;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double l2_error(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double l2_norm(std::span<const double> a) {
  double s = 0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

const PhantomSpec kSmooth({Ellipse{0.1, -0.15, 0.55, 0.35, 0.5, 1.0},
                           Ellipse{-0.2, 0.2, 0.2, 0.25, -0.3, 0.5}});

}  // namespace

TEST_SUITE("completion") {

TEST_CASE("synthesis of a single basis function") {
  const std::vector<double> coeffs{0, 0, 1};
  const std::vector<double> pos{-1, -0.3, 0, 0.8};
  const auto g = synthesize_projection(coeffs, pos);
  for (std::size_t i = 0; i < pos.size(); ++i)
    CHECK(g[i] == doctest::Approx(oracle::normalized_legendre(2, pos[i])).epsilon(1e-14));
}

TEST_CASE("geometric to Legendre conversion is the exact change of basis") {
  const Image img = rasterize(PhantomSpec::reference(), 64);
  const auto geo = image_moments(img, 12, Basis::geometric);
  const auto leg = image_moments(img, 12, Basis::legendre);
  const auto conv = to_legendre(geo);
  CHECK(conv.basis() == Basis::legendre);
  for (std::size_t i = 0; i < leg.values().size(); ++i)
    CHECK(std::fabs(conv.values()[i] - leg.values()[i]) < 1e-12);
  CHECK_THROWS_AS(to_legendre(leg), std::invalid_argument);
}

TEST_CASE("estimate rejects geometric moments") {
  const auto g = SinogramGeometry::uniform(4, 16, 45);
  CHECK_THROWS_AS(estimate_projection(MomentSet(3, Basis::geometric), 0.0, g), std::invalid_argument);
}

TEST_CASE("rotationally symmetric moments give identical estimates") {
  const PhantomSpec disk({Ellipse{0, 0, 0.5, 0.5, 0, 1}});
  const MomentSet mom(12, Basis::legendre, oracle::exact_image_moments(disk, 12));
  const auto g = SinogramGeometry::uniform(180, 128);
  const auto a = estimate_projection(mom, 10 * kDeg, g);
  const auto b = estimate_projection(mom, 110 * kDeg, g);
  for (int j = 0; j < 128; ++j) CHECK(std::fabs(a[j] - b[j]) < 1e-10);
}

TEST_CASE("estimate at a known view equals the measured-moment expansion") {
  const auto ref = PhantomSpec::reference();
  const auto geometry = SinogramGeometry::uniform(180, 128);
  const auto sino = project_phantom(ref, geometry);
  const auto report = recover_moments(sino, 15, Basis::legendre);
  for (int v : {0, 37, 90, 151}) {
    const double th = geometry.angle_rad(v);
    const auto measured = projection_moments(sino.row(v), th, 15, Basis::legendre);
    const auto direct = synthesize_projection(measured.values, geometry.ray_positions());
    const auto est = estimate_projection(report.moments, th, geometry);
    // full-view least squares averages quadrature error; the two expansions
    // agree to the consistency level of the measured moments
    CHECK(l2_error(est, direct) / l2_norm(direct) < 5e-3);
  }

  // With data generated by the moment model itself the agreement is exact.
  const MomentSet exact(15, Basis::legendre, oracle::exact_image_moments(ref, 15));
  std::vector<ProjectionMomentVector> views;
  const CouplingTable table(15, Basis::legendre);
  for (int v = 0; v < 180; ++v) views.push_back(predict_projection_moments(exact, geometry.angle_rad(v), table));
  const auto again = recover_moments(views, 15, Basis::legendre);
  for (int v : {3, 88}) {
    const double th = geometry.angle_rad(v);
    const auto lp = predict_projection_moments(exact, th, table);
    const auto direct = synthesize_projection(lp.values, geometry.ray_positions());
    const auto est = estimate_projection(again.moments, th, geometry);
    CHECK(l2_error(est, direct) < 1e-6);
  }
}

TEST_CASE("truncation error falls with order on exact moments") {
  const auto geometry = SinogramGeometry::uniform(180, 256);
  for (double deg : {0.0, 50.0, 120.0}) {
    std::vector<double> truth(256);
    for (int j = 0; j < 256; ++j) truth[j] = analytic_projection(kSmooth, deg * kDeg, geometry.ray_position(j));
    double prev = 1e300;
    for (int order : {5, 10, 15}) {
      const MomentSet mom(order, Basis::legendre, oracle::exact_image_moments(kSmooth, order));
      const double err = l2_error(estimate_projection(mom, deg * kDeg, geometry), truth);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("estimated rows reproduce their projection moments") {
  const auto geometry = SinogramGeometry::uniform(4, 8192, 45);
  const MomentSet mom(10, Basis::legendre, oracle::exact_image_moments(kSmooth, 10));
  for (double deg : {0.0, 45.0, 135.0}) {
    const auto row = estimate_projection(mom, deg * kDeg, geometry);
    const auto back = projection_moments(row, deg * kDeg, 10, Basis::legendre);
    const auto pred = predict_projection_moments(mom, deg * kDeg);
    for (int p = 0; p <= 10; ++p) CHECK(std::fabs(back.values[p] - pred.values[p]) < 1e-6);
  }
}

TEST_CASE("complete sinogram") {
  const auto ref = PhantomSpec::reference();
  const auto geometry = SinogramGeometry::uniform(180, 128);
  const auto full = project_phantom(ref, geometry);

  SUBCASE("nothing unknown leaves data untouched") {
    const auto out = complete_sinogram(full, CompletionConfig{});
    CHECK(out.sinogram == full);
    const auto twice = complete_sinogram(out.sinogram, CompletionConfig{});
    CHECK(twice.sinogram == full);
  }

  SUBCASE("unknown views are filled and known rows kept") {
    Sinogram limited = full;
    limited.mask_known_range(30, 150);
    const auto out = complete_sinogram(limited, CompletionConfig{});
    CHECK(out.sinogram.known_count() == 180);
    for (int v = 30; v <= 150; ++v)
      for (int j = 0; j < 128; ++j) CHECK(out.sinogram.at(v, j) == full.at(v, j));
    double err = 0, norm = 0;
    for (int v : limited.unknown_views()) {
      err += std::pow(l2_error(out.sinogram.row(v), full.row(v)), 2);
      norm += std::pow(l2_norm(full.row(v)), 2);
    }
    CHECK(std::sqrt(err / norm) < 0.2);
    CHECK(out.report.moments.order() == 15);
  }

  SUBCASE("replace_all on the full range stays close to the analytic sinogram") {
    CompletionConfig cfg;
    cfg.blend = Blend::replace_all;
    const auto out = complete_sinogram(full, cfg);
    CHECK(l2_error(out.sinogram.data(), full.data()) / l2_norm(full.data()) < 0.05);
  }

  SUBCASE("geometric mode completes through the basis change") {
    Sinogram limited = full;
    limited.mask_known_range(20, 160);
    CompletionConfig cfg;
    cfg.order = 8;
    cfg.basis = Basis::geometric;
    const auto out = complete_sinogram(limited, cfg);
    CHECK(out.report.moments.basis() == Basis::geometric);
    CHECK(out.sinogram.known_count() == 180);
  }

  SUBCASE("too few known views") {
    Sinogram limited = full;
    limited.mask_known_range(0, 9);
    CHECK_THROWS_AS(complete_sinogram(limited, CompletionConfig{}), RecoveryError);
  }
}

TEST_CASE("Legendre estimates beat geometric ones outside a 20-160 degree range") {
  const auto ref = PhantomSpec::reference();
  const auto geometry = SinogramGeometry::uniform(180, 128);
  const auto full = project_phantom(ref, geometry);
  Sinogram limited = full;
  limited.mask_known_range(20, 160);
  CompletionConfig leg, geo;
  geo.basis = Basis::geometric;
  const auto a = complete_sinogram(limited, leg);
  const auto b = complete_sinogram(limited, geo);
  for (int v : {0, 15, 165}) {
    INFO("view " << v);
    CHECK(l2_error(a.sinogram.row(v), full.row(v)) < l2_error(b.sinogram.row(v), full.row(v)));
  }
}

TEST_CASE("blend names") {
  CHECK(parse_blend("replace_all") == Blend::replace_all);
  CHECK(std::string(to_string(Blend::replace_unknown_only)) == "replace_unknown_only");
  CHECK_THROWS_AS(parse_blend("mix"), std::invalid_argument);
}

}
