#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mtomo {

/// Polynomial family used for moments: orthonormal Legendre or plain monomials.
enum class Basis { legendre, geometric };

const char* to_string(Basis basis);
Basis parse_basis(const std::string& name);

/// Coefficient tables are held in extended precision; the inverse identity
/// C*D = I loses ~8 digits to cancellation at order 25 in plain double.
using coeff_scalar = long double;
using CoeffMatrix = Eigen::Matrix<coeff_scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest order for which row entries stay representable.
inline constexpr int kMaxCoeffOrder = 60;

/// Lower-triangular C with P_p(t) = sum_r c[p][r] t^r for the normalized
/// Legendre polynomials. Entries with p - r odd are zero.
CoeffMatrix build_legendre_coeffs(int p_max);

/// Closed-form inverse D of build_legendre_coeffs: t^k = sum_r d[k][r] P_r(t).
CoeffMatrix build_inverse_coeffs(int p_max);

/// Basis coefficient pair. For the geometric basis c = d = I.
struct CoeffMatrices {
  Basis basis = Basis::legendre;
  int p_max = 0;
  CoeffMatrix c;
  CoeffMatrix d;

  static CoeffMatrices legendre(int p_max);
  static CoeffMatrices identity(int p_max);

  double c_at(int k, int r) const { return static_cast<double>(c(k, r)); }
  double d_at(int k, int r) const { return static_cast<double>(d(k, r)); }
};

/// Fills out[p] = P_p(t), p = 0..out.size()-1, by the normalized three-term
/// recurrence.
void eval_legendre(double t, std::span<double> out);

/// Basis vector (P_0(t), ..., P_pmax(t)). Legendre uses the recurrence;
/// geometric returns the monomials 1, t, t^2, ...
std::vector<double> eval_basis(const CoeffMatrices& coeffs, double t);

/// Same vector computed from the monomial expansion sum_r c[p][r] t^r.
/// Only reliable at low order; kept for cross-checking the recurrence.
std::vector<double> eval_monomial_form(const CoeffMatrices& coeffs, double t);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule replicated over `panels` equal subintervals of [a, b].
QuadratureRule composite_gauss_legendre(int panels, int points, double a, double b);

}  // namespace mtomo
