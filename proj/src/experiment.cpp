#include "mtomo/experiment.hpp"

#include <iomanip>
#include <limits>
#include <ostream>

#include "mtomo/error.hpp"

namespace mtomo {

LimitedAngleExperiment::LimitedAngleExperiment(ExperimentSetup setup)
    : setup_(std::move(setup)),
      reference_(rasterize(setup_.phantom, setup_.image_size)),
      full_(project_phantom(setup_.phantom, SinogramGeometry::uniform(setup_.n_views, setup_.n_rays,
                                                                       setup_.step_deg))) {}

Sinogram LimitedAngleExperiment::limited(double lo_deg, double hi_deg) const {
  Sinogram s = full_;
  s.mask_known_range(lo_deg, hi_deg);
  return s;
}

double LimitedAngleExperiment::mse_full() const {
  return mse_percent(reference_, fbp_reconstruct(full_, {setup_.image_size, setup_.filter}));
}

double LimitedAngleExperiment::mse_zero_filled(double lo_deg, double hi_deg) const {
  const Sinogram s = zero_filled(limited(lo_deg, hi_deg));
  return mse_percent(reference_, fbp_reconstruct(s, {setup_.image_size, setup_.filter}));
}

double LimitedAngleExperiment::mse_completed(double lo_deg, double hi_deg, int order,
                                             Basis basis) const {
  CompletionConfig cfg;
  cfg.order = order;
  cfg.basis = basis;
  cfg.recovery = setup_.recovery;
  const auto done = complete_sinogram(limited(lo_deg, hi_deg), cfg);
  return mse_percent(reference_, fbp_reconstruct(done.sinogram, {setup_.image_size, setup_.filter}));
}

std::vector<SweepRow> run_sweep(const LimitedAngleExperiment& experiment,
                                const std::vector<double>& alphas, const std::vector<int>& orders,
                                const std::vector<Basis>& bases) {
  std::vector<SweepRow> rows;
  for (double alpha : alphas) {
    const double lo = alpha, hi = 180.0 - alpha;
    const double zero = experiment.mse_zero_filled(lo, hi);
    for (int order : orders)
      for (Basis basis : bases) {
        SweepRow row{alpha, order, basis, 0.0, zero, std::nullopt};
        try {
          row.mse_completed = experiment.mse_completed(lo, hi, order, basis);
        } catch (const RecoveryError& e) {
          row.mse_completed = std::numeric_limits<double>::quiet_NaN();
          row.abort_reason = e.what();
        }
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,M,basis,mse_completed,mse_zero_filled\n" << std::setprecision(17);
  for (const auto& r : rows)
    out << r.alpha << ',' << r.order << ',' << to_string(r.basis) << ',' << r.mse_completed << ','
        << r.mse_zero_filled << '\n';
}

}  // namespace mtomo
