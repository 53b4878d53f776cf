#pragma once

#include "sparsedom/field.hpp"

namespace sparsedom {

// A collection of dyadic cubes from a single translated system, plus the
// complexity parameter k: the operator g -> sum_Q 1_Q * (mean of g over the
// k-th ancestor of Q).
struct ShiftSpec {
  int complexity = 0;  // k >= 0
  std::vector<DyadicCube> cubes;

  void validate() const;  // same translation everywhere, k >= 0
};

struct GeneralShiftTerm {
  DyadicCube outer;  // Q
  DyadicCube inner;  // R, side 2^{-m} * side(Q)
  DyadicCube source; // S, side 2^{-n} * side(Q)
  double coeff = 0.0;  // a in [0, 1]
};

// Positive dyadic shift in the general coefficient form:
// g -> sum over terms of a * 1_R * (mean of g over S).
struct GeneralShiftSpec {
  int inner_steps = 0;   // m
  int source_steps = 0;  // n
  std::vector<GeneralShiftTerm> terms;

  void validate() const;
};

// Evaluated at the cell centers of g's grid; g must be scalar, nonnegative.
SampledFunction apply_shift(const ShiftSpec& spec, const SampledFunction& g);
SampledFunction apply_general_shift(const GeneralShiftSpec& spec, const SampledFunction& g);

// Encoding of A_{S,k} with unit coefficients: (R, S) = (Q, ancestor(Q, k)).
GeneralShiftSpec as_general(const ShiftSpec& spec);

// <A g, h> and <g, A h> with exact overlap quadrature, for k = 0 only.
std::pair<double, double> adjoint_pairing(const ShiftSpec& spec, const SampledFunction& g,
                                          const SampledFunction& h);

}  // namespace sparsedom
