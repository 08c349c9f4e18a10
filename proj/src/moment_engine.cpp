#include "mtomo/moment_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mtomo {

namespace {

constexpr std::size_t kNoLattice = std::numeric_limits<std::size_t>::max();

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_moment_order(int order, Basis basis) {
  const int cap = basis == Basis::legendre ? kMaxLegendreMomentOrder : kMaxGeometricMomentOrder;
  if (order < 0 || order > cap)
    throw std::invalid_argument(std::string(to_string(basis)) + " moment order " +
                                std::to_string(order) + " outside [0, " + std::to_string(cap) +
                                "]");
}

// Closed-form v_00(p, n, m) evaluated in the log domain; p - n - m even.
double v00_seed(int p, int n, int m) {
  const int e = (p - n - m) / 2;
  const long double log_mag =
      0.5L * std::log(2.0L * (2 * p + 1) / ((2.0L * n + 1) * (2.0L * m + 1))) -
      (p - n - m) * std::log(2.0L) + std::lgamma(n + 1.0L) + std::lgamma(m + 1.0L) -
      std::lgamma(2.0L * n + 1) - std::lgamma(2.0L * m + 1) + std::lgamma(p + n + m + 1.0L) -
      std::lgamma(e + 1.0L) - std::lgamma((p + n + m) / 2 + 1.0L);
  const double mag = static_cast<double>(std::exp(log_mag));
  return (e % 2 == 0) ? mag : -mag;
}

std::size_t lattice_size(int half_span) {
  return static_cast<std::size_t>(half_span + 1) * (half_span + 2) / 2;
}

std::size_t lattice_index(int qh, int rh) {
  return static_cast<std::size_t>(qh) * (qh + 1) / 2 + static_cast<std::size_t>(rh);
}

// Fills the even (q, r) lattice of v_qr(p, n, m), indexed by (q/2, r/2).
void fill_lattice(int p, int n, int m, std::span<double> out) {
  const int half_span = (p - n - m) / 2;
  out[0] = v00_seed(p, n, m);
  for (int qh = 0; qh <= half_span; ++qh) {
    if (qh > 0) {
      const double q = 2.0 * (qh - 1);
      out[lattice_index(qh, 0)] = -(p + n + m + q + 1) * (p - n - m - q) /
                                  ((q + 2) * (2.0 * m + q + 3)) * out[lattice_index(qh - 1, 0)];
    }
    const double q = 2.0 * qh;
    for (int rh = 1; rh <= qh; ++rh) {
      const double r = 2.0 * (rh - 1);
      // Positive ratio: stepping r never changes the sign of v.
      out[lattice_index(qh, rh)] = (q - r) * (2.0 * m + q - r + 1) /
                                   ((r + 2) * (2.0 * n + r + 3)) * out[lattice_index(qh, rh - 1)];
    }
  }
}

void check_v_indices(int p, int n, int m, int q, int r) {
  if (p < 0 || n < 0 || m < 0 || q < 0 || r < 0 || n + m > p || q > p - (n + m) || r > q)
    throw std::out_of_range("v_coefficient index violation (p=" + std::to_string(p) +
                            ", n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                            ", q=" + std::to_string(q) + ", r=" + std::to_string(r) + ")");
}

std::vector<double> powers(double x, int count) {
  std::vector<double> out(static_cast<std::size_t>(count) + 1);
  out[0] = 1.0;
  for (int i = 1; i <= count; ++i) out[i] = out[i - 1] * x;
  return out;
}

}  // namespace

MomentSet::MomentSet(int order, Basis basis)
    : order_(order), basis_(basis), values_(count(order), 0.0) {
  if (order < 0) throw std::invalid_argument("moment order must be >= 0");
}

MomentSet::MomentSet(int order, Basis basis, std::vector<double> values)
    : order_(order), basis_(basis), values_(std::move(values)) {
  if (order < 0) throw std::invalid_argument("moment order must be >= 0");
  if (values_.size() != count(order))
    throw std::invalid_argument("moment table needs " + std::to_string(count(order)) +
                                " entries, got " + std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("moment values must be finite");
}

MomentSet image_moments(const Image& image, int order, Basis basis) {
  check_moment_order(order, basis);
  const int n = image.size();
  // basis[p][i] = P_p(x_i) or x_i^p
  std::vector<std::vector<double>> table(order + 1, std::vector<double>(n));
  std::vector<double> column(order + 1);
  for (int i = 0; i < n; ++i) {
    const double x = cell_center(i, n);
    if (basis == Basis::legendre) {
      eval_legendre(x, column);
    } else {
      double pw = 1.0;
      for (auto& c : column) c = pw, pw *= x;
    }
    for (int p = 0; p <= order; ++p) table[p][i] = column[p];
  }
  // row_sums[a][iy] = sum_ix B_a(x_ix) f(ix, iy)
  std::vector<std::vector<double>> row_sums(order + 1, std::vector<double>(n, 0.0));
  for (int iy = 0; iy < n; ++iy)
    for (int a = 0; a <= order; ++a) {
      double acc = 0.0;
      for (int ix = 0; ix < n; ++ix) acc += table[a][ix] * image.at(ix, iy);
      row_sums[a][iy] = acc;
    }
  const double area = (2.0 / n) * (2.0 / n);
  MomentSet out(order, basis);
  for (int k = 0; k <= order; ++k)
    for (int m = 0; m <= k; ++m) {
      const int a = k - m;
      double acc = 0.0;
      for (int iy = 0; iy < n; ++iy) acc += table[m][iy] * row_sums[a][iy];
      out.at(a, m) = area * acc;
    }
  return out;
}

ProjectionMomentVector projection_moments(std::span<const double> row, double theta, int order,
                                          Basis basis) {
  if (order < 0) throw std::invalid_argument("moment order must be >= 0");
  const int n_rays = static_cast<int>(row.size());
  if (n_rays < 2) throw std::invalid_argument("projection row needs at least two rays");
  ProjectionMomentVector out{theta, order, std::vector<double>(order + 1, 0.0)};
  std::vector<double> b(order + 1);
  const double w = 2.0 / n_rays;
  for (int j = 0; j < n_rays; ++j) {
    const double s = cell_center(j, n_rays);
    if (basis == Basis::legendre) {
      eval_legendre(s, b);
    } else {
      double pw = 1.0;
      for (auto& c : b) c = pw, pw *= s;
    }
    for (int p = 0; p <= order; ++p) out.values[p] += w * b[p] * row[j];
  }
  return out;
}

double v_coefficient(int p, int n, int m, int q, int r) {
  check_v_indices(p, n, m, q, r);
  if (q % 2 || r % 2 || (p - n - m) % 2) return 0.0;
  std::vector<double> lattice(lattice_size((p - n - m) / 2));
  fill_lattice(p, n, m, lattice);
  return lattice[lattice_index(q / 2, r / 2)];
}

double mu_coefficient(int p, int n, int m, double theta, Basis basis) {
  if (n < 0 || m < 0 || n + m > p) return 0.0;
  const double c = std::cos(theta), s = std::sin(theta);
  if (basis == Basis::geometric)
    return n + m == p ? binomial(p, n) * std::pow(c, n) * std::pow(s, m) : 0.0;
  if ((p - n - m) % 2) return 0.0;
  const int half_span = (p - n - m) / 2;
  std::vector<double> lattice(lattice_size(half_span));
  fill_lattice(p, n, m, lattice);
  const auto cp = powers(c, p), sp = powers(s, p);
  double acc = 0.0;
  for (int qh = 0; qh <= half_span; ++qh)
    for (int rh = 0; rh <= qh; ++rh)
      acc += lattice[lattice_index(qh, rh)] * cp[n + 2 * rh] * sp[m + 2 * qh - 2 * rh];
  return acc;
}

double mu_general(int p, int n, int m, double theta, const CoeffMatrices& coeffs) {
  if (p > coeffs.p_max) throw std::invalid_argument("coefficient matrices too small for order");
  if (n < 0 || m < 0 || n + m > p) return 0.0;
  const long double c = std::cos(static_cast<long double>(theta));
  const long double s = std::sin(static_cast<long double>(theta));
  long double acc = 0;
  for (int q = 0; q <= p - (n + m); ++q)
    for (int r = 0; r <= q; ++r) {
      const long double term = coeffs.c(p, q + n + m) * coeffs.d(n + r, n) *
                               coeffs.d(m + q - r, m) * binomial(n + m + q, n + r);
      if (term == 0) continue;
      acc += term * std::pow(c, n + r) * std::pow(s, m + q - r);
    }
  return static_cast<double>(acc);
}

CouplingTable::CouplingTable(int order, Basis basis) : order_(order), basis_(basis) {
  if (order < 0 || order > kMaxCoeffOrder)
    throw std::invalid_argument("coupling order " + std::to_string(order) + " out of range");
  if (basis_ == Basis::geometric) return;
  offset_.assign(static_cast<std::size_t>(order + 1) * (order + 1) * (order + 1), kNoLattice);
  std::size_t total = 0;
  for (int p = 0; p <= order; ++p)
    for (int n = 0; n <= p; ++n)
      for (int m = 0; n + m <= p; ++m)
        if ((p - n - m) % 2 == 0) {
          offset_[slot(p, n, m)] = total;
          total += lattice_size((p - n - m) / 2);
        }
  lattice_.resize(total);
  for (int p = 0; p <= order; ++p)
    for (int n = 0; n <= p; ++n)
      for (int m = 0; n + m <= p; ++m)
        if (const auto off = offset_[slot(p, n, m)]; off != kNoLattice)
          fill_lattice(p, n, m,
                       std::span<double>(lattice_).subspan(off, lattice_size((p - n - m) / 2)));
}

double CouplingTable::v(int p, int n, int m, int q, int r) const {
  if (basis_ != Basis::legendre) throw std::logic_error("v coefficients exist only for Legendre");
  check_v_indices(p, n, m, q, r);
  if (p > order_) throw std::out_of_range("v index above table order");
  if (q % 2 || r % 2) return 0.0;
  const auto off = offset_[slot(p, n, m)];
  return off == kNoLattice ? 0.0 : lattice_[off + lattice_index(q / 2, r / 2)];
}

double CouplingTable::mu_with_powers(int p, int n, int m, std::span<const double> cp,
                                     std::span<const double> sp) const {
  if (basis_ == Basis::geometric) return n + m == p ? binomial(p, n) * cp[n] * sp[m] : 0.0;
  const auto off = offset_[slot(p, n, m)];
  if (off == kNoLattice) return 0.0;
  const int half_span = (p - n - m) / 2;
  double acc = 0.0;
  for (int qh = 0; qh <= half_span; ++qh)
    for (int rh = 0; rh <= qh; ++rh)
      acc += lattice_[off + lattice_index(qh, rh)] * cp[n + 2 * rh] * sp[m + 2 * qh - 2 * rh];
  return acc;
}

double CouplingTable::mu(int p, int n, int m, double theta) const {
  if (p < 0 || p > order_) throw std::out_of_range("mu order above table order");
  if (n < 0 || m < 0 || n + m > p) return 0.0;
  const auto cp = powers(std::cos(theta), order_), sp = powers(std::sin(theta), order_);
  return mu_with_powers(p, n, m, cp, sp);
}

Eigen::MatrixXd CouplingTable::matrix(double theta) const {
  const auto cp = powers(std::cos(theta), order_), sp = powers(std::sin(theta), order_);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(order_ + 1, static_cast<Eigen::Index>(MomentSet::count(order_)));
  for (int p = 0; p <= order_; ++p)
    for (int k = 0; k <= p; ++k)
      for (int m = 0; m <= k; ++m)
        t(p, static_cast<Eigen::Index>(MomentSet::index(k - m, m))) = mu_with_powers(p, k - m, m, cp, sp);
  return t;
}

Eigen::MatrixXd build_T(double theta, int order, Basis basis) {
  return CouplingTable(order, basis).matrix(theta);
}

ProjectionMomentVector predict_projection_moments(const MomentSet& moments, double theta,
                                                  const CouplingTable& table) {
  if (table.basis() != moments.basis())
    throw std::invalid_argument("coupling table basis does not match moment basis");
  if (table.order() < moments.order())
    throw std::invalid_argument("coupling table order below moment order");
  const int order = moments.order();
  const Eigen::MatrixXd t = table.matrix(theta);
  ProjectionMomentVector out{theta, order, std::vector<double>(order + 1, 0.0)};
  const auto values = moments.values();
  for (int p = 0; p <= order; ++p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) acc += t(p, static_cast<Eigen::Index>(j)) * values[j];
    out.values[p] = acc;
  }
  return out;
}

ProjectionMomentVector predict_projection_moments(const MomentSet& moments, double theta) {
  return predict_projection_moments(moments, theta, CouplingTable(moments.order(), moments.basis()));
}

}  // namespace mtomo
