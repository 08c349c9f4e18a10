#include "mtomo/completion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mtomo/parallel.hpp"
#include "mtomo/poly_core.hpp"

namespace mtomo {

const char* to_string(Blend blend) {
  return blend == Blend::replace_all ? "replace_all" : "replace_unknown_only";
}

Blend parse_blend(const std::string& name) {
  if (name == "replace_unknown_only" || name == "unknown") return Blend::replace_unknown_only;
  if (name == "replace_all" || name == "all") return Blend::replace_all;
  throw std::invalid_argument("unknown blend mode '" + name + "'");
}

std::vector<double> synthesize_projection(std::span<const double> legendre_moments,
                                          std::span<const double> positions) {
  std::vector<double> out(positions.size(), 0.0);
  std::vector<double> basis(legendre_moments.size());
  for (std::size_t j = 0; j < positions.size(); ++j) {
    eval_legendre(positions[j], basis);
    double acc = 0.0;
    for (std::size_t p = 0; p < basis.size(); ++p) acc += legendre_moments[p] * basis[p];
    out[j] = acc;
  }
  return out;
}

MomentSet to_legendre(const MomentSet& geometric) {
  if (geometric.basis() != Basis::geometric)
    throw std::invalid_argument("to_legendre expects a geometric moment set");
  const int order = geometric.order();
  const CoeffMatrix c = build_legendre_coeffs(order);
  MomentSet out(order, Basis::legendre);
  for (int k = 0; k <= order; ++k)
    for (int m = 0; m <= k; ++m) {
      const int n = k - m;
      coeff_scalar acc = 0;
      for (int i = n % 2; i <= n; i += 2)
        for (int j = m % 2; j <= m; j += 2) acc += c(n, i) * c(m, j) * geometric.at(i, j);
      out.at(n, m) = static_cast<double>(acc);
    }
  return out;
}

namespace {

std::vector<double> estimate_with(const MomentSet& moments, double theta,
                                  const std::vector<double>& positions,
                                  const CouplingTable& table) {
  const auto l = predict_projection_moments(moments, theta, table);
  return synthesize_projection(l.values, positions);
}

}  // namespace

std::vector<double> estimate_projection(const MomentSet& moments, double theta,
                                        const SinogramGeometry& geometry) {
  if (moments.basis() != Basis::legendre)
    throw std::invalid_argument(
        "projection estimation needs Legendre moments; convert geometric moments with "
        "to_legendre");
  return estimate_with(moments, theta, geometry.ray_positions(),
                       CouplingTable(moments.order(), Basis::legendre));
}

CompletionResult complete_sinogram(const Sinogram& sino, const CompletionConfig& cfg) {
  if (cfg.order < 0) throw std::invalid_argument("completion order must be >= 0");
  const auto& geometry = sino.geometry();
  std::vector<int> targets;
  for (int v = 0; v < sino.n_views(); ++v)
    if (cfg.blend == Blend::replace_all || !sino.known(v)) targets.push_back(v);

  RecoveryReport report = recover_moments(sino, cfg.order, cfg.basis, cfg.recovery);
  const MomentSet legendre =
      cfg.basis == Basis::legendre ? report.moments : to_legendre(report.moments);

  Sinogram out = sino;
  const CouplingTable table(cfg.order, Basis::legendre);
  const auto positions = geometry.ray_positions();
  parallel_for(0, static_cast<int>(targets.size()), [&](int t) {
    const int v = targets[t];
    const auto est = estimate_with(legendre, geometry.angle_rad(v), positions, table);
    auto row = out.row(v);
    std::copy(est.begin(), est.end(), row.begin());
  });
  for (int v = 0; v < out.n_views(); ++v) out.set_known(v, true);
  return {std::move(out), std::move(report)};
}

}  // namespace mtomo
