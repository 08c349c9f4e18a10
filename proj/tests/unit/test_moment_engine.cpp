#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "mtomo/moment_engine.hpp"
#include "mtomo/phantom.hpp"
#include "mtomo/radon.hpp"
#include "oracles.hpp"

using namespace mtomo;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

const PhantomSpec kDisk({Ellipse{0, 0, 0.5, 0.5, 0, 1}});

std::vector<double> analytic_row(const PhantomSpec& spec, double theta, int n_rays) {
  std::vector<double> row(n_rays);
  for (int j = 0; j < n_rays; ++j) row[j] = analytic_projection(spec, theta, cell_center(j, n_rays));
  return row;
}

}  // namespace

TEST_SUITE("moment_engine") {

TEST_CASE("MomentSet layout") {
  CHECK(MomentSet::count(0) == 1);
  CHECK(MomentSet::count(15) == 136);
  CHECK(MomentSet::index(0, 0) == 0);
  CHECK(MomentSet::index(1, 0) == 1);
  CHECK(MomentSet::index(0, 1) == 2);
  CHECK(MomentSet::index(2, 0) == 3);
  CHECK(MomentSet::index(0, 3) == 9);
  MomentSet m(3, Basis::legendre);
  CHECK(m.values().size() == 10);
  m.at(1, 2) = 5;
  CHECK(m.values()[MomentSet::index(1, 2)] == 5);
  CHECK_THROWS_AS(MomentSet(2, Basis::legendre, std::vector<double>(5)), std::invalid_argument);
  CHECK_THROWS_AS(MomentSet(0, Basis::legendre, std::vector<double>{NAN}), std::invalid_argument);
}

TEST_CASE("image moments of a separable basis function") {
  const int n = 256;
  Image img(n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      img.at(ix, iy) = oracle::normalized_legendre(2, cell_center(ix, n)) *
                       oracle::normalized_legendre(3, cell_center(iy, n));
  const auto mom = image_moments(img, 6, Basis::legendre);
  for (int k = 0; k <= 6; ++k)
    for (int m = 0; m <= k; ++m) {
      const int nn = k - m;
      if (nn == 2 && m == 3)
        CHECK(mom.at(2, 3) == doctest::Approx(1.0).epsilon(5e-3));
      else
        CHECK(std::fabs(mom.at(nn, m)) < 5e-3);
    }
}

TEST_CASE("image moment basics") {
  const auto zero = image_moments(Image(32), 5, Basis::legendre);
  for (double v : zero.values()) CHECK(v == 0.0);

  const auto disk = image_moments(rasterize(kDisk, 128), 4, Basis::legendre);
  CHECK(disk.at(0, 0) == doctest::Approx(0.5 * std::numbers::pi * 0.25).epsilon(0.01));
  // an even, isotropic image has no odd moments
  CHECK(std::fabs(disk.at(1, 0)) < 1e-12);
  CHECK(std::fabs(disk.at(1, 2)) < 1e-12);
  CHECK(disk.at(2, 0) == doctest::Approx(disk.at(0, 2)).epsilon(1e-12));

  const auto geo = image_moments(rasterize(kDisk, 128), 2, Basis::geometric);
  CHECK(geo.at(0, 0) == doctest::Approx(std::numbers::pi * 0.25).epsilon(0.01));

  CHECK_THROWS_AS(image_moments(Image(16), 26, Basis::legendre), std::invalid_argument);
  CHECK_THROWS_AS(image_moments(Image(16), 21, Basis::geometric), std::invalid_argument);
  CHECK_NOTHROW(image_moments(Image(16), 25, Basis::legendre));
}

TEST_CASE("image moments converge to the exact analytic moments") {
  const auto ref = PhantomSpec::reference();
  const auto exact = oracle::exact_image_moments(ref, 8);
  const auto coarse = image_moments(rasterize(ref, 128), 8, Basis::legendre);
  const auto fine = image_moments(rasterize(ref, 512), 8, Basis::legendre);
  double err_coarse = 0, err_fine = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    err_coarse = std::max(err_coarse, std::fabs(coarse.values()[i] - exact[i]));
    err_fine = std::max(err_fine, std::fabs(fine.values()[i] - exact[i]));
  }
  CHECK(err_coarse < 1e-2);
  CHECK(err_fine < err_coarse);
}

TEST_CASE("projection moments") {
  std::vector<double> row(128);
  for (int j = 0; j < 128; ++j) row[j] = oracle::normalized_legendre(3, cell_center(j, 128));
  const auto l = projection_moments(row, 0.3, 5, Basis::legendre);
  CHECK(l.theta == 0.3);
  REQUIRE(l.values.size() == 6);
  for (int p = 0; p <= 4; ++p) CHECK(std::fabs(l.values[p] - (p == 3 ? 1.0 : 0.0)) < 1e-3);
  // L_5 carries the midpoint rule's leading error -h^2/24 [f'(1) - f'(-1)]
  // for f = P_3 P_5, using P_n'(1) = n(n+1)/2 P_n(1).
  const double h = 2.0 / 128;
  const double slope = 0.5 * (12 + 30) * std::sqrt(3.5 * 5.5);
  CHECK(l.values[5] == doctest::Approx(-h * h / 24 * 2 * slope).epsilon(0.02));

  const auto z = projection_moments(std::vector<double>(64, 0.0), 0.0, 4, Basis::legendre);
  for (double v : z.values) CHECK(v == 0.0);

  const auto disk = projection_moments(analytic_row(kDisk, 0.0, 128), 0.0, 2, Basis::legendre);
  CHECK(disk.values[0] == doctest::Approx(std::sqrt(0.5) * std::numbers::pi * 0.25).epsilon(0.01));

  const auto geo = projection_moments(std::vector<double>(128, 1.0), 0.0, 2, Basis::geometric);
  CHECK(geo.values[0] == doctest::Approx(2.0));
  CHECK(std::fabs(geo.values[1]) < 1e-14);
  CHECK(geo.values[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("v coefficient examples and errors") {
  CHECK(v_coefficient(0, 0, 0, 0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(v_coefficient(5, 1, 0, 4, 1) == 0.0);
  CHECK(v_coefficient(5, 1, 0, 3, 2) == 0.0);
  CHECK_THROWS_AS(v_coefficient(4, 3, 2, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(v_coefficient(6, 1, 1, 5, 0), std::out_of_range);
  CHECK_THROWS_AS(v_coefficient(6, 1, 1, 2, 4), std::out_of_range);
  CHECK_THROWS_AS(v_coefficient(6, -1, 1, 0, 0), std::out_of_range);
}

TEST_CASE("v coefficient matches the definitional product up to order 15") {
  double worst = 0;
  for (int p = 0; p <= 15; ++p)
    for (int n = 0; n <= p; ++n)
      for (int m = 0; n + m <= p; ++m)
        for (int q = 0; q <= p - n - m; q += 2)
          for (int r = 0; r <= q; r += 2) {
            const double expect = static_cast<double>(oracle::coupling_product(p, n, m, q, r));
            const double got = v_coefficient(p, n, m, q, r);
            if (expect == 0.0) {
              CHECK(got == 0.0);
              continue;
            }
            worst = std::max(worst, std::fabs(got - expect) / std::fabs(expect));
          }
  CHECK(worst < 1e-10);
}

TEST_CASE("coupling table agrees with the standalone v coefficient") {
  const CouplingTable table(12, Basis::legendre);
  for (int p = 0; p <= 12; p += 3)
    for (int n = 0; n <= p; ++n)
      for (int m = 0; n + m <= p; ++m)
        for (int q = 0; q <= p - n - m; q += 2)
          for (int r = 0; r <= q; r += 2)
            CHECK(table.v(p, n, m, q, r) == doctest::Approx(v_coefficient(p, n, m, q, r)).epsilon(1e-14));
  CHECK_THROWS_AS(CouplingTable(8, Basis::geometric).v(2, 0, 0, 0, 0), std::logic_error);
}

TEST_CASE("mu coefficient") {
  CHECK(mu_coefficient(2, 1, 1, 45 * kDeg, Basis::geometric) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu_coefficient(2, 1, 0, 45 * kDeg, Basis::geometric) == 0.0);
  for (double th : {0.0, 0.4, 1.9, 3.0})
    CHECK(mu_coefficient(0, 0, 0, th, Basis::legendre) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  for (int p = 1; p <= 9; ++p)
    for (int n = 0; n <= p; ++n)
      for (int m = 0; n + m <= p; ++m)
        if ((p - n - m) % 2) CHECK(mu_coefficient(p, n, m, 0.77, Basis::legendre) == 0.0);
}

TEST_CASE("fast Legendre path equals the general definition") {
  const auto coeffs = CoeffMatrices::legendre(12);
  for (double th : {0.0, 0.35, 1.2, 2.8})
    for (int p = 0; p <= 12; ++p)
      for (int n = 0; n <= p; ++n)
        for (int m = 0; n + m <= p; ++m) {
          const double a = mu_coefficient(p, n, m, th, Basis::legendre);
          const double b = mu_general(p, n, m, th, coeffs);
          CHECK(std::fabs(a - b) <= 1e-10 * std::max(1.0, std::fabs(b)));
        }
}

TEST_CASE("general definition with identity tables is the binomial closed form") {
  const auto id = CoeffMatrices::identity(10);
  for (double th : {0.1, 0.9, 2.3})
    for (int p = 0; p <= 10; ++p)
      for (int n = 0; n <= p; ++n)
        for (int m = 0; n + m <= p; ++m)
          CHECK(std::fabs(mu_general(p, n, m, th, id) - oracle::geometric_mu(p, n, m, th)) < 1e-12);
}

TEST_CASE("view matrix") {
  const auto t0 = build_T(1.0, 0, Basis::legendre);
  REQUIRE(t0.rows() == 1);
  REQUIRE(t0.cols() == 1);
  CHECK(t0(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto t = build_T(0.6, 6, Basis::legendre);
  CHECK(t.rows() == 7);
  CHECK(t.cols() == 28);
  const auto g = build_T(0.6, 6, Basis::geometric);
  for (int p = 0; p <= 6; ++p)
    for (int k = 0; k <= 6; ++k)
      for (int m = 0; m <= k; ++m) {
        const auto col = static_cast<Eigen::Index>(MomentSet::index(k - m, m));
        if (k != p) CHECK(g(p, col) == 0.0);
        if (k > p) CHECK(t(p, col) == 0.0);
      }

  MomentSet psi(6, Basis::legendre);
  for (std::size_t i = 0; i < psi.values().size(); ++i) psi.values()[i] = std::sin(1.0 + i);
  const Eigen::VectorXd phi = t * Eigen::Map<const Eigen::VectorXd>(psi.values().data(), 28);
  const auto pred = predict_projection_moments(psi, 0.6);
  for (int p = 0; p <= 6; ++p) CHECK(pred.values[p] == doctest::Approx(phi(p)).epsilon(1e-14));
}

TEST_CASE("prediction basics") {
  MomentSet m0(0, Basis::legendre, {0.3927});
  CHECK(predict_projection_moments(m0, 0.2).values[0] == doctest::Approx(0.5554).epsilon(1e-4));
  const auto z = predict_projection_moments(MomentSet(5, Basis::legendre), 1.0);
  for (double v : z.values) CHECK(v == 0.0);
  CHECK_THROWS_AS(predict_projection_moments(m0, 0.0, CouplingTable(0, Basis::geometric)),
                  std::invalid_argument);
}

TEST_CASE("predicted projection moments match measured ones") {
  SUBCASE("disk, order 10") {
    const auto mom = image_moments(rasterize(kDisk, 256), 10, Basis::legendre);
    for (double deg : {0.0, 30.0, 60.0, 90.0}) {
      const auto meas = projection_moments(analytic_row(kDisk, deg * kDeg, 256), deg * kDeg, 10,
                                           Basis::legendre);
      const auto pred = predict_projection_moments(mom, deg * kDeg);
      double scale = 0, err = 0;
      for (int p = 0; p <= 10; ++p) {
        scale = std::max(scale, std::fabs(meas.values[p]));
        err = std::max(err, std::fabs(meas.values[p] - pred.values[p]));
      }
      CHECK(err / scale < 1e-2);
    }
  }
  SUBCASE("reference phantom, order 12, default resolution") {
    const auto ref = PhantomSpec::reference();
    const auto mom = image_moments(rasterize(ref, 128), 12, Basis::legendre);
    const CouplingTable table(12, Basis::legendre);
    double worst = 0;
    for (double deg = 0; deg < 180; deg += 15) {
      const auto meas =
          projection_moments(analytic_row(ref, deg * kDeg, 128), deg * kDeg, 12, Basis::legendre);
      const auto pred = predict_projection_moments(mom, deg * kDeg, table);
      double scale = 0, err = 0;
      for (int p = 0; p <= 12; ++p) {
        scale = std::max(scale, std::fabs(meas.values[p]));
        err = std::max(err, std::fabs(meas.values[p] - pred.values[p]));
      }
      worst = std::max(worst, err / scale);
    }
    CHECK(worst < 1e-2);
  }
  SUBCASE("exact moments on both sides agree to rounding") {
    const auto ref = PhantomSpec::reference();
    const MomentSet exact(10, Basis::legendre, oracle::exact_image_moments(ref, 10));
    for (double deg : {0.0, 47.0, 133.0}) {
      const auto pred = predict_projection_moments(exact, deg * kDeg);
      const auto truth = oracle::exact_projection_moments(ref, deg * kDeg, 10);
      for (int p = 0; p <= 10; ++p) CHECK(std::fabs(pred.values[p] - truth[p]) < 1e-10);
    }
  }
}

TEST_CASE("order zero is rotation invariant") {
  const auto ref = PhantomSpec::reference();
  MomentSet mom(4, Basis::legendre, oracle::exact_image_moments(ref, 4));
  const double l0 = predict_projection_moments(mom, 0.0).values[0];
  for (double deg = 5; deg < 180; deg += 5)
    CHECK(std::fabs(predict_projection_moments(mom, deg * kDeg).values[0] - l0) < 1e-12);

  double lo = 1e9, hi = -1e9;
  for (double deg = 0; deg < 180; deg += 10) {
    const auto l = projection_moments(analytic_row(ref, deg * kDeg, 65536), deg * kDeg, 0,
                                      Basis::legendre);
    lo = std::min(lo, l.values[0]);
    hi = std::max(hi, l.values[0]);
  }
  CHECK(hi - lo < 1e-6);
}

TEST_CASE("projection moments flip parity over a half turn") {
  const auto ref = PhantomSpec::reference();
  for (double deg : {10.0, 70.0, 140.0}) {
    const double th = deg * kDeg;
    const auto a = projection_moments(analytic_row(ref, th, 256), th, 12, Basis::legendre);
    const auto b = projection_moments(analytic_row(ref, th + std::numbers::pi, 256),
                                      th + std::numbers::pi, 12, Basis::legendre);
    for (int p = 0; p <= 12; ++p)
      CHECK(std::fabs(b.values[p] - (p % 2 ? -a.values[p] : a.values[p])) < 1e-12);
  }
}

}
