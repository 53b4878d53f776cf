#pragma once

#include "sparsedom/field.hpp"

namespace sparsedom {

enum class KernelKind {
  hilbert_truncated,  // d = 1, n = 1: 1/(pi (x - y))
  power_truncated,    // (x_1 - y_1) / |x - y|^{d+1}, max metric for d >= 2
  matrix_composed,    // scalar power kernel times a fixed n x n matrix, ||G|| <= 1
  diagonal_family,    // per-component multiples of the scalar power kernel
};

struct KernelSpec {
  KernelKind kind = KernelKind::hilbert_truncated;
  double holder_exponent = 1.0;  // alpha in (0, 1]
  double truncation = 0.0;       // <= 0 means "one cell side" at apply time
  int components = 1;
  std::vector<double> matrix;  // matrix_composed: n*n, row-major
  std::vector<double> diag;    // diagonal_family: n multipliers in [-1, 1]

  void validate(int dim) const;
};

// Distances are Euclidean for d = 1 and max-metric for d >= 2.
double kernel_metric(std::span<const double> x, std::span<const double> y);

// K(x, y) as an n x n matrix (row-major into `out`).  Zero when
// kernel_metric(x, y) < truncation.
void kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y,
                 std::span<double> out);

// Spectral norm of a small row-major matrix.
double matrix_opnorm(std::span<const double> m, int n);

struct KernelSamplePair {
  std::vector<double> x, y;
  std::vector<double> x_near;  // optional Holder probe; empty to skip
};

struct KernelBounds {
  double decay_const = 0.0;   // sup ||K(x,y)|| |x-y|^d
  double holder_const = 0.0;  // sup ||K(x,y)-K(x',y)|| |x-y|^d (|x-y|/|x-x'|)^alpha
};

// Empirical suprema over the sample pairs; Holder probes with
// |x - x'| >= |x - y|/2 are skipped.
KernelBounds kernel_bounds_check(const KernelSpec& spec,
                                 std::span<const KernelSamplePair> pairs);

// Midpoint quadrature of Tf(x) = ∫ K(x,y) f(y) dy over the cells of f's
// grid, the self-cell omitted; output on the same grid.
SampledFunction apply_cz(const KernelSpec& spec, const SampledFunction& f);

}  // namespace sparsedom
