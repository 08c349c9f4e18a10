#pragma once

#include <stdexcept>
#include <string>

namespace mtomo {

/// Raised when a moment recovery cannot proceed: too few known views, or a
/// per-order system whose condition number exceeds the abort threshold.
class RecoveryError : public std::runtime_error {
public:
  enum class Kind { insufficient_views, ill_conditioned };

  RecoveryError(Kind kind, int order, const std::string& what)
      : std::runtime_error(what), kind_(kind), order_(order) {}

  Kind kind() const noexcept { return kind_; }
  /// Offending moment order (-1 when not order specific).
  int order() const noexcept { return order_; }

private:
  Kind kind_;
  int order_;
};

/// File format or filesystem failure.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtomo
