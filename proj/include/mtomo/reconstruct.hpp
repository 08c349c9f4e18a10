#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mtomo/image.hpp"
#include "mtomo/radon.hpp"

namespace mtomo {

enum class Filter { ram_lak, hamming_windowed };

const char* to_string(Filter filter);
Filter parse_filter(const std::string& name);

struct ReconConfig {
  int size = 128;
  Filter filter = Filter::ram_lak;
};

/// In-place iterative radix-2 FFT; size must be a power of two. The inverse
/// includes the 1/N factor.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse);

/// Frequency response of the discrete ramp filter for a padded length and
/// ray spacing, with the optional Hamming window applied.
std::vector<double> ramp_response(int padded_length, double ray_spacing, Filter filter);

/// Filtered backprojection of a complete sinogram. Rejects sinograms with
/// unknown views.
Image fbp_reconstruct(const Sinogram& sino, const ReconConfig& cfg);

/// Copy with unknown rows zeroed and every view marked known: the plain
/// limited-angle FBP baseline.
Sinogram zero_filled(const Sinogram& sino);

/// 100 * ||test - ref||^2 / ||ref||^2 over pixels inside the unit disk.
double mse_percent(const Image& reference, const Image& test);

}  // namespace mtomo
