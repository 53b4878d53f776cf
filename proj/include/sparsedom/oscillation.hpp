#pragma once

#include "sparsedom/field.hpp"

namespace sparsedom {

// Certificate for a center/radius pair covering all but a discard-fraction of
// the cells of a cube.  The pseudomedian construction guarantees
// radius <= 2 * omega_discard(f; cube).
struct OscillationCertificate {
  Box cube;
  Rational discard;  // lambda in (0, 1/2)
  std::vector<double> center;
  double radius = 0.0;
  CellSet excess;  // cells of cube with ||f - center|| > radius
};

// Least bound about a fixed center: the minimal r such that at most a
// discard-fraction of the cells of `region` have ||f - center|| > r.
// Equals the k-th smallest of the N cell distances, k = N - floor(discard*N).
// discard in [0, 1); discard = 0 gives the sup.
double least_bound(const SampledFunction& f, const Box& region, const Rational& discard,
                   std::span<const double> center);

// Brute-force min of least_bound over an explicit center grid (flat array of
// f.components-sized points).  Upper estimate of the optimal oscillatory
// bound; exact when the grid contains an optimal center.
double optimal_bound_oracle(const SampledFunction& f, const Box& region, const Rational& discard,
                            std::span<const double> centers);

// Quasi-optimal center: argmin of least_bound over the sample values of f on
// the region, ties broken by smallest cell index.  discard in (0, 1/2).
OscillationCertificate pseudomedian(const SampledFunction& f, const Box& region,
                                    const Rational& discard);

// Lower median of a scalar field on a region: the smallest order statistic m
// with |{g > m}| <= |Q|/2 and |{g < m}| <= |Q|/2.
double scalar_median(const SampledFunction& g, const Box& region);

// Center grids for the brute-force oracle.  The scalar grid spans the value
// range with `oversample`*N uniform points plus the sample values themselves;
// the tensor grid does the same per coordinate (components <= 3).
std::vector<double> scalar_center_grid(const SampledFunction& f, const Box& region,
                                       int oversample = 10);
std::vector<double> tensor_center_grid(const SampledFunction& f, const Box& region, int per_axis);

}  // namespace sparsedom
