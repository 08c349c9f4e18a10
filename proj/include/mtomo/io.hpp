#pragma once

#include <iosfwd>
#include <string>

#include "mtomo/completion.hpp"
#include "mtomo/image.hpp"
#include "mtomo/moment_engine.hpp"
#include "mtomo/radon.hpp"
#include "mtomo/recovery.hpp"

namespace mtomo::io {

// Sinogram binary: magic "MTSINO1\0", then little-endian u32 n_views,
// u32 n_rays, f64 angles_deg[n_views], u8 known[n_views], f64 data (view-major).
void write_sinogram(std::ostream& out, const Sinogram& sino);
Sinogram read_sinogram(std::istream& in);
void save_sinogram(const std::string& path, const Sinogram& sino);
Sinogram load_sinogram(const std::string& path);

// Raw image: magic "MTIMG1\0" (7 bytes), little-endian u32 n, f64 data
// row-major.
void write_image(std::ostream& out, const Image& img);
Image read_image(std::istream& in);
void save_image(const std::string& path, const Image& img);
Image load_image(const std::string& path);

/// 16-bit binary PGM with linear min-max scaling; the range goes to
/// `path + ".range"` as `min <v>` / `max <v>` lines.
void save_pgm(const std::string& path, const Image& img);
/// Reads a 16-bit PGM; rescales with the sidecar range when present,
/// otherwise returns raw gray levels / 65535.
Image load_pgm(const std::string& path);

// MomentSet CSV: `basis,M` header, one `<basis>,<M>` line, then `n,m,value`
// header and rows in stacking order; values at 17 significant digits.
void write_moments_csv(std::ostream& out, const MomentSet& moments);
MomentSet read_moments_csv(std::istream& in);
void save_moments_csv(const std::string& path, const MomentSet& moments);
MomentSet load_moments_csv(const std::string& path);

/// `order,condition,residual` rows.
void write_diagnostics_csv(std::ostream& out, const RecoveryReport& report);
void save_diagnostics_csv(const std::string& path, const RecoveryReport& report);

/// Key-value record of a completion run: order, basis, blend, view mask and
/// per-order diagnostics.
void write_completion_sidecar(std::ostream& out, const CompletionConfig& cfg,
                              const Sinogram& input, const RecoveryReport& report);
void save_completion_sidecar(const std::string& path, const CompletionConfig& cfg,
                             const Sinogram& input, const RecoveryReport& report);

}  // namespace mtomo::io
