#include "mtomo/poly_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mtomo {

namespace {

void check_order(int p_max) {
  if (p_max < 0 || p_max > kMaxCoeffOrder) {
    throw std::invalid_argument("coefficient order " + std::to_string(p_max) +
                                " outside [0, " + std::to_string(kMaxCoeffOrder) + "]");
  }
}

}  // namespace

const char* to_string(Basis basis) {
  return basis == Basis::legendre ? "legendre" : "geometric";
}

Basis parse_basis(const std::string& name) {
  if (name == "legendre") return Basis::legendre;
  if (name == "geometric") return Basis::geometric;
  throw std::invalid_argument("unknown basis '" + name + "' (expected legendre or geometric)");
}

CoeffMatrix build_legendre_coeffs(int p_max) {
  check_order(p_max);
  CoeffMatrix c = CoeffMatrix::Zero(p_max + 1, p_max + 1);
  for (int p = 0; p <= p_max; ++p) {
    // diagonal: sqrt((2p+1)/2) (2p)! / (2^p p!^2)
    coeff_scalar diag = std::sqrt(static_cast<coeff_scalar>(2 * p + 1) / 2);
    for (int i = 1; i <= p; ++i) diag *= static_cast<coeff_scalar>(p + i) / (2 * i);
    c(p, p) = diag;
    // walk the row towards r = 0 in steps of two
    for (int r = p; r >= 2; r -= 2) {
      const coeff_scalar half_sum = (p + r) / 2;
      const coeff_scalar half_diff = (p - r) / 2;
      c(p, r - 2) = -c(p, r) * half_sum * r * (r - 1) /
                    (static_cast<coeff_scalar>(p + r) * (p + r - 1) * (half_diff + 1));
    }
  }
  return c;
}

CoeffMatrix build_inverse_coeffs(int p_max) {
  check_order(p_max);
  CoeffMatrix d = CoeffMatrix::Zero(p_max + 1, p_max + 1);
  for (int k = 0; k <= p_max; ++k) {
    // diagonal: sqrt(2/(2k+1)) 2^k k!^2 / (2k)!
    coeff_scalar diag = std::sqrt(static_cast<coeff_scalar>(2) / (2 * k + 1));
    for (int i = 1; i <= k; ++i) diag *= static_cast<coeff_scalar>(2 * i) / (k + i);
    d(k, k) = diag;
    for (int r = k; r >= 2; r -= 2) {
      const int j = (k - r) / 2;
      d(k, r - 2) = d(k, r) * static_cast<coeff_scalar>(k + r + 1) / (2 * (j + 1)) *
                    std::sqrt(static_cast<coeff_scalar>(2 * r - 3) / (2 * r + 1));
    }
  }
  return d;
}

CoeffMatrices CoeffMatrices::legendre(int p_max) {
  return CoeffMatrices{Basis::legendre, p_max, build_legendre_coeffs(p_max),
                       build_inverse_coeffs(p_max)};
}

CoeffMatrices CoeffMatrices::identity(int p_max) {
  check_order(p_max);
  return CoeffMatrices{Basis::geometric, p_max, CoeffMatrix::Identity(p_max + 1, p_max + 1),
                       CoeffMatrix::Identity(p_max + 1, p_max + 1)};
}

void eval_legendre(double t, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::sqrt(0.5);
  if (out.size() == 1) return;
  out[1] = std::sqrt(1.5) * t;
  for (std::size_t p = 1; p + 1 < out.size(); ++p) {
    const double pd = static_cast<double>(p);
    const double a = std::sqrt((2 * pd + 3) * (2 * pd + 1)) / (pd + 1);
    const double b = pd / (pd + 1) * std::sqrt((2 * pd + 3) / (2 * pd - 1));
    out[p + 1] = a * t * out[p] - b * out[p - 1];
  }
}

std::vector<double> eval_basis(const CoeffMatrices& coeffs, double t) {
  std::vector<double> out(static_cast<std::size_t>(coeffs.p_max) + 1);
  if (coeffs.basis == Basis::legendre) {
    eval_legendre(t, out);
  } else {
    double power = 1.0;
    for (auto& v : out) {
      v = power;
      power *= t;
    }
  }
  return out;
}

std::vector<double> eval_monomial_form(const CoeffMatrices& coeffs, double t) {
  std::vector<double> out(static_cast<std::size_t>(coeffs.p_max) + 1, 0.0);
  for (int p = 0; p <= coeffs.p_max; ++p) {
    coeff_scalar acc = 0;
    for (int r = p; r >= 0; --r) acc = acc * t + coeffs.c(p, r);
    out[p] = static_cast<double>(acc);
  }
  return out;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(int panels, int points, double a, double b) {
  if (panels < 1) throw std::invalid_argument("composite rule needs at least one panel");
  const QuadratureRule base = gauss_legendre(points);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * points);
  rule.weights.reserve(static_cast<std::size_t>(panels) * points);
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    for (int i = 0; i < points; ++i) {
      rule.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace mtomo
