#pragma once

#include <cstdint>
#include <string>

#include "sparsedom/weights.hpp"

namespace sparsedom {

SampledFunction constant_field(const GridSpec& grid, double norm_exponent,
                               std::span<const double> value);

// `value` inside the box, zero outside.
SampledFunction indicator_field(const GridSpec& grid, double norm_exponent, const Box& support,
                                std::span<const double> value);

// Independent uniform values in [lo, hi] per cell per component; all
// randomness flows from the single 64-bit seed.
SampledFunction random_piecewise_field(const GridSpec& grid, int components,
                                       double norm_exponent, double lo, double hi,
                                       uint64_t seed);

// Smooth cos^2 bump: amplitude * prod_i cos^2(pi (x_i - center_i)/width_i)
// where every |x_i - center_i| < width_i/2, zero elsewhere.
SampledFunction bump_field(const GridSpec& grid, double norm_exponent,
                           std::span<const double> center, std::span<const double> width,
                           std::span<const double> amplitude);

// |x - s|^a with the singular point s at the root center (d = 1).  Cells
// touching s take the closed-form cell average of |x-s|^a.
Weight power_weight(const GridSpec& grid, double exponent);

// Fixed 12-function test bank for the weighted-norm experiments; appends the
// bank names to `names`.
std::vector<SampledFunction> a2_test_bank(const GridSpec& grid, uint64_t seed,
                                          std::vector<std::string>& names);

}  // namespace sparsedom
