#pragma once

#include <span>
#include <vector>

#include "mtomo/moment_engine.hpp"
#include "mtomo/radon.hpp"
#include "mtomo/recovery.hpp"

namespace mtomo {

enum class Blend { replace_unknown_only, replace_all };

const char* to_string(Blend blend);
Blend parse_blend(const std::string& name);

struct CompletionConfig {
  int order = 15;
  Basis basis = Basis::legendre;
  Blend blend = Blend::replace_unknown_only;
  RecoveryOptions recovery{};
};

/// Truncated orthonormal expansion sum_p L_p P_p(s) at each position.
std::vector<double> synthesize_projection(std::span<const double> legendre_moments,
                                          std::span<const double> positions);

/// Exact change of basis from geometric to Legendre image moments:
/// lambda_nm = sum_{i<=n, j<=m} c_ni c_mj M_ij.
MomentSet to_legendre(const MomentSet& geometric);

/// Projection at `theta` on the geometry's ray grid, synthesized from
/// Legendre image moments. Geometric sets are rejected; convert first.
std::vector<double> estimate_projection(const MomentSet& moments, double theta,
                                        const SinogramGeometry& geometry);

struct CompletionResult {
  Sinogram sinogram;  // every view marked known
  RecoveryReport report;  // moments are the recovered set in the configured basis
};

/// Recovers moments from the known views, then fills unknown views (or all
/// views, per cfg.blend) with projections estimated from those moments.
CompletionResult complete_sinogram(const Sinogram& sino, const CompletionConfig& cfg);

}  // namespace mtomo
