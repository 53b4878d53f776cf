#pragma once

#include "sparsedom/kernel.hpp"
#include "sparsedom/lerner.hpp"
#include "sparsedom/shift.hpp"
#include "sparsedom/weights.hpp"

namespace sparsedom {

// One grouped collection S^u_k: covers R(Q,k) of the decomposition cubes that
// landed in the translated system u, with the witness cells inherited from
// the decomposition entries.
struct CoverCollection {
  std::vector<Rational> translation;
  int complexity = 0;
  std::vector<DyadicCube> cubes;
  std::vector<CellSet> witnesses;  // aligned with cubes
};

struct DominationParams {
  KernelSpec kernel;
  DyadicCube base;                    // Q^0, contains supp f
  Rational witness_density{1, 2};     // nu
  int max_complexity = 8;             // K
};

struct DominationReport {
  SparseCollection decomposition;         // of Tf on Q^0
  std::vector<CoverCollection> collections;  // ordered by (k, u)
  SampledFunction lhs;                    // ||Tf|| restricted to Q^0
  SampledFunction rhs;                    // sum_u sum_{k<=K} 2^{-alpha k} A_{S^u_k,k} ||f||
  std::vector<double> per_k_mass;         // L^1 mass of each k-term of the series
  double c_emp = 0.0;                     // max over cells of lhs/rhs, 0/0 := 0
  double tail_bound = 0.0;                // sum_{k>K} 2^{-alpha k} * sup ||f||
};

DominationReport dominate(const SampledFunction& f, const DominationParams& params);

// Exact structural checks on the report's collections: witness density
// >= nu/6^d relative to the cover cubes, disjointness, the 4^d pointwise
// overlap bound, and the grouping partition.
SparseCheckReport check_domination_invariants(const DominationReport& report);

struct A2Params {
  KernelSpec kernel;
  GridSpec grid;                  // d = 1 experiment grid
  double p = 2.0;
  std::vector<double> exponents;  // power-weight exponents, |a| < p-1
  uint64_t seed = 1;              // seeds the random entries of the test bank
};

struct A2Row {
  double exponent = 0.0;     // a
  double ap_value = 0.0;     // [w]_{A_p}
  double ratio = 0.0;        // max over the bank of ||Tf||_{L^p_w} / ||f||_{L^p_w}
};

struct A2Experiment {
  double p = 2.0;
  std::vector<A2Row> rows;  // sorted by ap_value
  double fitted_slope = 0.0;
  std::vector<std::string> bank;  // names of the test-bank functions
};

A2Experiment a2_experiment(const A2Params& params);

struct OscillationKernelRow {
  Box cube;
  double omega_upper = 0.0;  // pseudomedian radius of Tf on the cube
  double series = 0.0;       // truncated dilated-average series + tail bound
  double ratio = 0.0;        // 0/0 := 0
};

std::vector<OscillationKernelRow> oscillation_kernel_report(
    const KernelSpec& spec, const SampledFunction& f, std::span<const Box> cubes,
    const Rational& discard, int max_complexity);

}  // namespace sparsedom
