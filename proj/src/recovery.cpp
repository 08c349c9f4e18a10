#include "mtomo/recovery.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mtomo/error.hpp"
#include "mtomo/parallel.hpp"

namespace mtomo {

namespace {

struct SolveResult {
  Eigen::VectorXd x;
  double condition;
};

double condition_number(const Eigen::MatrixXd& a) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double lo = sv(sv.size() - 1);
  return lo > 0.0 ? sv(0) / lo : std::numeric_limits<double>::infinity();
}

// Least squares by column-pivoted Householder QR, optionally with a ridge
// block appended below the system.
SolveResult solve_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                double ridge) {
  if (ridge <= 0.0) {
    const double cond = condition_number(a);
    return {a.colPivHouseholderQr().solve(b), cond};
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double weight = ridge * svd.singularValues()(0);
  Eigen::MatrixXd aug(a.rows() + a.cols(), a.cols());
  aug << a, weight * Eigen::MatrixXd::Identity(a.cols(), a.cols());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(aug.rows());
  rhs.head(b.size()) = b;
  const double cond = condition_number(aug);
  return {aug.colPivHouseholderQr().solve(rhs), cond};
}

[[noreturn]] void throw_ill_conditioned(int order, double cond, double limit) {
  std::ostringstream msg;
  msg << "moment recovery aborted at order " << order << ": condition number " << cond
      << " exceeds " << limit;
  throw RecoveryError(RecoveryError::Kind::ill_conditioned, order, msg.str());
}

}  // namespace

RecoveryReport recover_moments(std::span<const ProjectionMomentVector> views, int order,
                               Basis basis, const RecoveryOptions& options) {
  if (order < 0) throw std::invalid_argument("moment order must be >= 0");
  const int n_views = static_cast<int>(views.size());
  if (n_views < order + 1)
    throw RecoveryError(RecoveryError::Kind::insufficient_views, -1,
                        "moment recovery of order " + std::to_string(order) + " needs at least " +
                            std::to_string(order + 1) + " known views, got " +
                            std::to_string(n_views));
  for (const auto& v : views)
    if (static_cast<int>(v.values.size()) < order + 1)
      throw std::invalid_argument("projection moment vector shorter than recovery order");

  const CouplingTable table(order, basis);
  std::vector<Eigen::MatrixXd> coupling(n_views);
  parallel_for(0, n_views, [&](int i) { coupling[i] = table.matrix(views[i].theta); });

  RecoveryReport report{MomentSet(order, basis), std::vector<double>(order + 1),
                        std::vector<double>(order + 1)};
  auto lambda = report.moments.values();

  if (options.stacked) {
    const auto unknowns = static_cast<Eigen::Index>(MomentSet::count(order));
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n_views) * (order + 1), unknowns);
    Eigen::VectorXd b(a.rows());
    for (int i = 0; i < n_views; ++i)
      for (int p = 0; p <= order; ++p) {
        const Eigen::Index row = static_cast<Eigen::Index>(i) * (order + 1) + p;
        a.row(row) = coupling[i].row(p);
        b(row) = views[i].values[p];
      }
    const auto sol = solve_least_squares(a, b, options.ridge);
    if (!(sol.condition <= options.max_condition))
      throw_ill_conditioned(order, sol.condition, options.max_condition);
    for (Eigen::Index j = 0; j < unknowns; ++j) lambda[j] = sol.x(j);
    const Eigen::VectorXd res = a * sol.x - b;
    for (int p = 0; p <= order; ++p) {
      double sq = 0.0;
      for (int i = 0; i < n_views; ++i) {
        const double r = res(static_cast<Eigen::Index>(i) * (order + 1) + p);
        sq += r * r;
      }
      report.condition[p] = sol.condition;
      report.residual[p] = std::sqrt(sq);
    }
    return report;
  }

  for (int k = 0; k <= order; ++k) {
    const auto start = static_cast<Eigen::Index>(MomentSet::index(k, 0));
    Eigen::MatrixXd a(n_views, k + 1);
    Eigen::VectorXd b(n_views);
    for (int i = 0; i < n_views; ++i) {
      const auto row = coupling[i].row(k);
      a.row(i) = row.segment(start, k + 1);
      double lower = 0.0;
      for (Eigen::Index j = 0; j < start; ++j) lower += row(j) * lambda[j];
      b(i) = views[i].values[k] - lower;
    }
    const auto sol = solve_least_squares(a, b, options.ridge);
    if (!(sol.condition <= options.max_condition))
      throw_ill_conditioned(k, sol.condition, options.max_condition);
    for (int j = 0; j <= k; ++j) lambda[start + j] = sol.x(j);
    report.condition[k] = sol.condition;
    report.residual[k] = (a * sol.x - b).norm();
  }
  return report;
}

RecoveryReport recover_moments(const Sinogram& sino, int order, Basis basis,
                               const RecoveryOptions& options) {
  std::vector<ProjectionMomentVector> views;
  for (int v : sino.known_views())
    views.push_back(projection_moments(sino.row(v), sino.geometry().angle_rad(v), order, basis));
  return recover_moments(views, order, basis, options);
}

}  // namespace mtomo
