#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mtomo/image.hpp"
#include "mtomo/poly_core.hpp"

namespace mtomo {

inline constexpr int kMaxLegendreMomentOrder = 25;
inline constexpr int kMaxGeometricMomentOrder = 20;

/// Image moments lambda_nm for n + m <= order, stacked block by block:
/// block k holds (lambda_k0, lambda_{k-1,1}, ..., lambda_0k).
class MomentSet {
public:
  MomentSet(int order, Basis basis);
  MomentSet(int order, Basis basis, std::vector<double> values);

  static std::size_t count(int order) {
    return static_cast<std::size_t>(order + 1) * (order + 2) / 2;
  }
  static std::size_t index(int n, int m) {
    const auto k = static_cast<std::size_t>(n + m);
    return k * (k + 1) / 2 + static_cast<std::size_t>(m);
  }

  int order() const noexcept { return order_; }
  Basis basis() const noexcept { return basis_; }
  double at(int n, int m) const { return values_.at(index(n, m)); }
  double& at(int n, int m) { return values_.at(index(n, m)); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const MomentSet&) const = default;

private:
  int order_;
  Basis basis_;
  std::vector<double> values_;
};

struct ProjectionMomentVector {
  double theta = 0.0;  // radians
  int order = 0;
  std::vector<double> values;  // L_0 .. L_order
};

/// Midpoint-rule moments of an image spanning [-1, 1]^2.
MomentSet image_moments(const Image& image, int order, Basis basis);

/// Midpoint-rule moments of one projection row sampled on the ray grid
/// s_j = -1 + (2j+1)/row.size().
ProjectionMomentVector projection_moments(std::span<const double> row, double theta, int order,
                                          Basis basis);

/// Legendre coupling coefficient v_qr(p, n, m), built from the closed-form
/// seed v_00 and the q- and r-direction recurrences. Zero for odd q or r.
/// Throws std::out_of_range unless n + m <= p, q <= p - (n + m), r <= q.
double v_coefficient(int p, int n, int m, int q, int r);

/// mu_nm(p, theta) of the projection/image moment relation. Legendre uses the
/// v-coefficient sum; geometric uses the binomial closed form.
double mu_coefficient(int p, int n, int m, double theta, Basis basis);

/// mu_nm(p, theta) from the general quadruple-index definition with arbitrary
/// basis coefficient matrices. Slow; used to cross-check the fast paths.
double mu_general(int p, int n, int m, double theta, const CoeffMatrices& coeffs);

/// Precomputed v lattices for every (p, n, m) up to `order`, so T_M(theta)
/// costs only trigonometric powers per view.
class CouplingTable {
public:
  CouplingTable(int order, Basis basis);

  int order() const noexcept { return order_; }
  Basis basis() const noexcept { return basis_; }

  /// Tabulated v_qr(p, n, m); Legendre tables only.
  double v(int p, int n, int m, int q, int r) const;
  double mu(int p, int n, int m, double theta) const;

  /// (order+1) x count(order) matrix; row p holds mu_nm(p, theta) in the
  /// MomentSet stacking order, zero where n + m > p.
  Eigen::MatrixXd matrix(double theta) const;

private:
  std::size_t slot(int p, int n, int m) const {
    return (static_cast<std::size_t>(p) * (order_ + 1) + n) * (order_ + 1) + m;
  }
  double mu_with_powers(int p, int n, int m, std::span<const double> cos_pow,
                        std::span<const double> sin_pow) const;

  int order_;
  Basis basis_;
  std::vector<std::size_t> offset_;  // start of each (p, n, m) lattice, npos if empty
  std::vector<double> lattice_;
};

/// T_M(theta) built from a fresh CouplingTable.
Eigen::MatrixXd build_T(double theta, int order, Basis basis);

/// L_p(theta) = sum over n + m <= p of mu_nm(p, theta) lambda_nm, p <= order.
ProjectionMomentVector predict_projection_moments(const MomentSet& moments, double theta);
ProjectionMomentVector predict_projection_moments(const MomentSet& moments, double theta,
                                                  const CouplingTable& table);

}  // namespace mtomo
