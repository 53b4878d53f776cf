#pragma once

#include <string>

#include "sparsedom/oscillation.hpp"

namespace sparsedom {

struct SparseEntry {
  DyadicCube cube;
  int generation = 0;
  CellSet witness;  // E(Q): cells of Q not covered by deeper entries
  std::vector<double> center;
  double rho = 0.0;          // least bound about the center at the decomposition's lambda
  double omega_bound = 0.0;  // 3 * rho
};

// Cubes with pairwise disjoint witness sets of density >= witness_density,
// together with per-cube center/radius data certifying the pointwise bound
// ||f - center(Q^0)|| <= sum over containing cubes of 3*rho.
struct SparseCollection {
  Rational witness_density;  // nu in (0, 1)
  Rational discard;          // lambda = (1 - nu) * 2^{-d-2}
  Rational stop_fraction;    // kappa = 1/4
  GridSpec grid;
  std::vector<SparseEntry> entries;  // ordered by generation, then cube position
};

// The maximal dyadic subcubes of `cube` having at least one child C with
// |C ∩ {||f - center|| > radius}| > stop_fraction * |C| (strict, exact).
std::vector<DyadicCube> stopping_children(const SampledFunction& f, const DyadicCube& cube,
                                          const Rational& stop_fraction,
                                          std::span<const double> center, double radius);

// Iterated stopping-time decomposition with lambda = (1-nu)*2^{-d-2} and
// kappa = 1/4.
SparseCollection decompose(const SampledFunction& f, const DyadicCube& root,
                           const Rational& witness_density);

struct VerifyReport {
  double max_violation = 0.0;
  bool holds = false;
  long long worst_cell = -1;
};

// Checks ||f(x) - center(Q^0)|| <= sum_{Q in S, Q ∋ x} 3*rho_Q + eps at every
// cell center of Q^0.
VerifyReport verify_decomposition(const SampledFunction& f, const SparseCollection& s,
                                  double eps = 1e-9);

// Scalar-only check of the omega-form with constant 12 against the
// brute-force center-grid oracle (midpoint-enriched, so exact for scalars).
VerifyReport verify_omega_form(const SampledFunction& f, const SparseCollection& s,
                               double eps = 1e-6);

struct SparseCheckReport {
  bool ok = true;
  std::string violation;  // empty when ok
};

// Exact (rational) structural checks: witness sets disjoint and inside their
// cubes with density >= nu, generations nested and disjoint, the per-step
// measure bound sum|Q^1_j| <= 2^d (lambda/kappa) |Q|, and the generation
// decay |Omega^k| <= (1-nu)^k |Q^0|.
SparseCheckReport check_sparse_invariants(const SparseCollection& s);

}  // namespace sparsedom
