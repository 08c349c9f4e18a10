#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mtomo/completion.hpp"
#include "mtomo/phantom.hpp"
#include "mtomo/reconstruct.hpp"

namespace mtomo {

/// Fixed part of a limited-angle experiment: phantom, scan geometry and
/// reconstruction settings.
struct ExperimentSetup {
  PhantomSpec phantom = PhantomSpec::reference();
  int n_views = 180;
  double step_deg = 1.0;
  int n_rays = 128;
  int image_size = 128;
  Filter filter = Filter::ram_lak;
  RecoveryOptions recovery{};
};

/// Reference raster and exact full sinogram for a setup, computed once and
/// reused across cases.
class LimitedAngleExperiment {
public:
  explicit LimitedAngleExperiment(ExperimentSetup setup);

  const ExperimentSetup& setup() const noexcept { return setup_; }
  const Image& reference() const noexcept { return reference_; }
  const Sinogram& full_sinogram() const noexcept { return full_; }

  /// Full sinogram with views outside [lo_deg, hi_deg] marked unknown.
  Sinogram limited(double lo_deg, double hi_deg) const;

  double mse_full() const;
  double mse_zero_filled(double lo_deg, double hi_deg) const;
  /// Throws RecoveryError when moment recovery aborts.
  double mse_completed(double lo_deg, double hi_deg, int order, Basis basis) const;

private:
  ExperimentSetup setup_;
  Image reference_;
  Sinogram full_;
};

struct SweepRow {
  double alpha = 0.0;
  int order = 0;
  Basis basis = Basis::legendre;
  double mse_completed = 0.0;  // NaN when recovery aborted
  double mse_zero_filled = 0.0;
  std::optional<std::string> abort_reason;
};

/// Cross product alpha x order x basis with the known range [alpha, 180 - alpha].
std::vector<SweepRow> run_sweep(const LimitedAngleExperiment& experiment,
                                const std::vector<double>& alphas, const std::vector<int>& orders,
                                const std::vector<Basis>& bases);

/// `alpha,M,basis,mse_completed,mse_zero_filled`, 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace mtomo
