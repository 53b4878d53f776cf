#include "sparsedom/shift.hpp"

namespace sparsedom {

namespace {

void require_scalar_nonneg(const SampledFunction& g, const char* who) {
  if (!g.scalar_valued()) throw invalid_argument_error(std::string(who) + ": scalar field required");
  for (double v : g.values)
    if (v < 0) throw invalid_argument_error(std::string(who) + ": field must be nonnegative");
}

}  // namespace

void ShiftSpec::validate() const {
  if (complexity < 0) throw invalid_argument_error("ShiftSpec: complexity must be >= 0");
  for (const DyadicCube& q : cubes)
    if (q.translation != cubes.front().translation)
      throw invalid_argument_error("ShiftSpec: cubes must share one translation");
}

void GeneralShiftSpec::validate() const {
  if (inner_steps < 0 || source_steps < 0)
    throw invalid_argument_error("GeneralShiftSpec: steps must be >= 0");
  for (const GeneralShiftTerm& t : terms) {
    if (t.coeff < 0.0 || t.coeff > 1.0)
      throw invalid_argument_error("GeneralShiftSpec: coefficients must lie in [0, 1]");
    if (t.inner.level != t.outer.level + inner_steps ||
        t.source.level != t.outer.level + source_steps)
      throw invalid_argument_error("GeneralShiftSpec: side-length ratios do not match m, n");
    if (!t.outer.box().contains(t.inner.box()) || !t.outer.box().contains(t.source.box()))
      throw invalid_argument_error("GeneralShiftSpec: R and S must be subcubes of Q");
  }
}

SampledFunction apply_shift(const ShiftSpec& spec, const SampledFunction& g) {
  spec.validate();
  require_scalar_nonneg(g, "apply_shift");
  SampledFunction out(g.grid, 1, g.norm_exponent);
  for (const DyadicCube& q : spec.cubes) {
    double avg = box_average(g, ancestor(q, spec.complexity).box());
    for_each_cell(g.grid, cells_with_center_in(g.grid, q.box()),
                  [&](long long idx, const std::vector<long long>&) { out.values[idx] += avg; });
  }
  return out;
}

SampledFunction apply_general_shift(const GeneralShiftSpec& spec, const SampledFunction& g) {
  spec.validate();
  require_scalar_nonneg(g, "apply_general_shift");
  SampledFunction out(g.grid, 1, g.norm_exponent);
  for (const GeneralShiftTerm& t : spec.terms) {
    if (t.coeff == 0.0) continue;
    double avg = box_average(g, t.source.box());
    for_each_cell(g.grid, cells_with_center_in(g.grid, t.inner.box()),
                  [&](long long idx, const std::vector<long long>&) {
                    out.values[idx] += t.coeff * avg;
                  });
  }
  return out;
}

GeneralShiftSpec as_general(const ShiftSpec& spec) {
  spec.validate();
  GeneralShiftSpec out;
  out.inner_steps = spec.complexity;
  out.source_steps = 0;
  for (const DyadicCube& q : spec.cubes) {
    DyadicCube top = ancestor(q, spec.complexity);
    out.terms.push_back({top, q, top, 1.0});
  }
  return out;
}

std::pair<double, double> adjoint_pairing(const ShiftSpec& spec, const SampledFunction& g,
                                          const SampledFunction& h) {
  spec.validate();
  if (spec.complexity != 0)
    throw invalid_argument_error("adjoint_pairing: defined for complexity 0 only");
  require_scalar_nonneg(g, "adjoint_pairing");
  require_scalar_nonneg(h, "adjoint_pairing");
  double ag_h = 0.0, g_ah = 0.0;
  for (const DyadicCube& q : spec.cubes) {
    Box b = q.box();
    double vol = to_double(b.measure());
    ag_h += box_integral(g, b) / vol * box_integral(h, b);
    g_ah += box_integral(h, b) / vol * box_integral(g, b);
  }
  return {ag_h, g_ah};
}

}  // namespace sparsedom
