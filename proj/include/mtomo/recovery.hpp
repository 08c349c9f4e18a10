#pragma once

#include <span>
#include <vector>

#include "mtomo/moment_engine.hpp"
#include "mtomo/radon.hpp"

namespace mtomo {

struct RecoveryOptions {
  /// Tikhonov weight relative to the largest singular value of each system.
  /// Zero disables regularization.
  double ridge = 0.0;
  /// Solve all orders as one stacked system instead of order by order.
  bool stacked = false;
  /// Recovery aborts when any system's condition number exceeds this.
  double max_condition = 1e12;
};

struct RecoveryReport {
  MomentSet moments;
  std::vector<double> condition;  // per order, >= 1
  std::vector<double> residual;   // per order, 2-norm of A x - b
};

/// Recovers image moments of order <= `order` from per-view projection
/// moments (each vector must hold at least order+1 entries in `basis`).
/// Throws RecoveryError with fewer than order+1 views or on a condition number
/// above options.max_condition.
RecoveryReport recover_moments(std::span<const ProjectionMomentVector> views, int order,
                               Basis basis, const RecoveryOptions& options = {});

/// Convenience overload: projection moments of every known view of `sino`.
RecoveryReport recover_moments(const Sinogram& sino, int order, Basis basis,
                               const RecoveryOptions& options = {});

}  // namespace mtomo
