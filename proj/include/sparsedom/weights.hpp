#pragma once

#include "sparsedom/field.hpp"

namespace sparsedom {

// Strictly positive scalar field; w(A) is the exact weighted sum over cells.
struct Weight {
  SampledFunction values;

  explicit Weight(SampledFunction w);
  const GridSpec& grid() const { return values.grid; }
};

Weight dual_weight(const Weight& w, double p);  // w^{-1/(p-1)}, p > 1

// The declared finite family approximating "all cubes": every grid-aligned
// box for d = 1, the in-root dyadic cubes of all 3^d translated systems for
// d >= 2.  Deterministic enumeration order.
std::vector<Box> characteristic_family(const GridSpec& grid);

// Hardy-Littlewood maximal function over the same family, evaluated at cell
// centers; `mask` restricts the averaged function to a box (exact overlap).
SampledFunction maximal_function(const SampledFunction& g);
double maximal_value_at(const SampledFunction& g, const Box& mask, long long cell);

struct ApReport {
  double p = 0.0;  // infinity() for the Fujii-Wilson characteristic
  double value = 0.0;
  Box argmax_cube;
  long long cube_family_size = 0;
};

ApReport ap_characteristic(const Weight& w, double p);     // p in (1, inf)
ApReport a_infty_characteristic(const Weight& w);          // Fujii-Wilson form
double two_weight_characteristic(const Weight& w, const Weight& sigma, double p);

double weighted_norm(const SampledFunction& f, const Weight& w, double p);  // p >= 1

}  // namespace sparsedom
