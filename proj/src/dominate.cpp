#include "sparsedom/dominate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sparsedom/generators.hpp"

namespace sparsedom {

namespace {

struct CoverKey {
  std::vector<Rational> translation;
  int level;
  std::vector<long long> pos;
  bool operator<(const CoverKey& o) const {
    if (translation != o.translation) return translation < o.translation;
    if (level != o.level) return level < o.level;
    return pos < o.pos;
  }
};

}  // namespace

DominationReport dominate(const SampledFunction& f, const DominationParams& params) {
  // The pointwise bound concerns ||Tf|| on the base cube and requires the
  // data to live inside it.
  SampledFunction nf = norm_field(f);
  Box base = params.base.box();
  for (long long c = 0; c < f.grid.cell_count(); ++c)
    if (nf.values[c] != 0.0 && !base.contains_point(f.grid.cell_center(c)))
      throw invalid_argument_error("dominate: field support leaks outside the base cube");

  DominationReport report;
  SampledFunction tf = apply_cz(params.kernel, f);
  SampledFunction ntf = norm_field(tf);

  report.decomposition = decompose(tf, params.base, params.witness_density);

  // lhs = ||Tf|| restricted to the base cube.
  report.lhs = SampledFunction(f.grid, 1, 2.0);
  for_each_cell(f.grid, cells_with_center_in(f.grid, params.base.box()),
                [&](long long idx, const std::vector<long long>&) {
                  report.lhs.values[idx] = ntf.values[idx];
                });

  report.rhs = SampledFunction(f.grid, 1, 2.0);
  report.per_k_mass.assign(params.max_complexity + 1, 0.0);
  double cm = to_double(f.grid.cell_measure());

  for (int k = 0; k <= params.max_complexity; ++k) {
    // Group the covers R(Q,k) by translated system, dropping duplicates:
    // the first entry (generation order) donates its witness set.
    std::map<CoverKey, size_t> seen;
    std::map<std::vector<Rational>, CoverCollection> grouped;
    for (const SparseEntry& e : report.decomposition.entries) {
      DyadicCube r = shifted_cover(e.cube, k);
      CoverKey key{r.translation, r.level, r.pos};
      if (seen.count(key)) continue;
      seen[key] = 1;
      CoverCollection& g = grouped[r.translation];
      g.translation = r.translation;
      g.complexity = k;
      g.cubes.push_back(r);
      g.witnesses.push_back(e.witness);
    }
    double weight = std::pow(2.0, -params.kernel.holder_exponent * k);
    for (auto& [u, group] : grouped) {
      ShiftSpec spec{k, group.cubes};
      SampledFunction term = apply_shift(spec, nf);
      for (long long c = 0; c < f.grid.cell_count(); ++c) {
        report.rhs.values[c] += weight * term.values[c];
        report.per_k_mass[k] += weight * term.values[c] * cm;
      }
      report.collections.push_back(std::move(group));
    }
  }

  report.c_emp = 0.0;
  for (long long c = 0; c < f.grid.cell_count(); ++c) {
    double lhs = report.lhs.values[c], rhs = report.rhs.values[c];
    if (lhs == 0.0) continue;
    report.c_emp = rhs == 0.0 ? std::numeric_limits<double>::infinity()
                              : std::max(report.c_emp, lhs / rhs);
  }

  double sup = 0.0;
  for (long long c = 0; c < f.grid.cell_count(); ++c) sup = std::max(sup, nf.values[c]);
  double q = std::pow(2.0, -params.kernel.holder_exponent);
  report.tail_bound = sup * std::pow(q, params.max_complexity + 1) / (1.0 - q);
  return report;
}

SparseCheckReport check_domination_invariants(const DominationReport& report) {
  SparseCheckReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    if (r.violation.empty()) r.violation = std::move(msg);
  };
  const GridSpec& grid = report.decomposition.grid;
  Rational cm = grid.cell_measure();
  Rational nu = report.decomposition.witness_density;
  long long six_pow = 1;
  for (int i = 0; i < grid.dim(); ++i) six_pow *= 6;

  std::map<int, std::vector<const CoverCollection*>> by_k;
  for (const CoverCollection& g : report.collections) by_k[g.complexity].push_back(&g);

  for (auto& [k, groups] : by_k) {
    std::vector<char> seen(grid.cell_count(), 0);
    size_t covered = 0;
    for (const CoverCollection* g : groups) {
      for (size_t i = 0; i < g->cubes.size(); ++i) {
        const DyadicCube& cube = g->cubes[i];
        const CellSet& witness = g->witnesses[i];
        ++covered;
        if (cube.translation != g->translation) fail("cover cube in the wrong group");
        // |E| >= nu * |R| / 6^d, exact.
        if (Rational(static_cast<long long>(witness.cells.size())) * cm * six_pow <
            nu * cube.measure())
          fail("cover witness density below nu/6^d");
        Box rbox = cube.box();
        for (uint32_t cell : witness.cells) {
          if (!rbox.contains(grid.cell_box(cell))) fail("cover witness outside its cube");
          if (seen[cell]) fail("cover witnesses overlap");
          seen[cell] = 1;
        }
      }
    }
    // Partition: every decomposition cube produced one cover, deduplicated.
    std::map<CoverKey, int> unique_covers;
    for (const SparseEntry& e : report.decomposition.entries) {
      DyadicCube cover = shifted_cover(e.cube, k);
      unique_covers[CoverKey{cover.translation, cover.level, cover.pos}] = 1;
    }
    if (unique_covers.size() != covered) fail("cover grouping is not a partition");
  }

  // Pointwise overlap: multiplicity of covers <= 4^d times the deduplicated count.
  long long four_pow = 1;
  for (int i = 0; i < grid.dim(); ++i) four_pow *= 4;
  for (auto& [k, groups] : by_k) {
    std::vector<int> multi(grid.cell_count(), 0), dedup(grid.cell_count(), 0);
    for (const SparseEntry& e : report.decomposition.entries) {
      DyadicCube cover = shifted_cover(e.cube, k);
      for_each_cell(grid, cells_with_center_in(grid, cover.box()),
                    [&](long long idx, const std::vector<long long>&) { ++multi[idx]; });
    }
    for (const CoverCollection* g : groups)
      for (const DyadicCube& cube : g->cubes)
        for_each_cell(grid, cells_with_center_in(grid, cube.box()),
                      [&](long long idx, const std::vector<long long>&) { ++dedup[idx]; });
    for (long long c = 0; c < grid.cell_count(); ++c)
      if (multi[c] > four_pow * dedup[c]) {
        fail("pointwise cover overlap exceeds 4^d");
        break;
      }
  }
  return r;
}

A2Experiment a2_experiment(const A2Params& params) {
  if (!(params.p > 1) || std::isinf(params.p))
    throw invalid_argument_error("a2_experiment: p must lie in (1, inf)");
  for (double a : params.exponents)
    if (std::abs(a) >= params.p - 1.0)
      throw invalid_argument_error("a2_experiment: inadmissible exponent |a| >= p-1");
  if (params.grid.dim() != 1)
    throw invalid_argument_error("a2_experiment: one-dimensional grids only");

  A2Experiment out;
  out.p = params.p;

  std::vector<SampledFunction> bank = a2_test_bank(params.grid, params.seed, out.bank);
  std::vector<SampledFunction> images;
  images.reserve(bank.size());
  for (const SampledFunction& f : bank) images.push_back(apply_cz(params.kernel, f));

  for (double a : params.exponents) {
    Weight w = power_weight(params.grid, a);
    A2Row row;
    row.exponent = a;
    row.ap_value = ap_characteristic(w, params.p).value;
    for (size_t i = 0; i < bank.size(); ++i) {
      double denom = weighted_norm(bank[i], w, params.p);
      double numer = weighted_norm(images[i], w, params.p);
      if (denom > 0.0) row.ratio = std::max(row.ratio, numer / denom);
    }
    out.rows.push_back(row);
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const A2Row& x, const A2Row& y) { return x.ap_value < y.ap_value; });

  // Least-squares slope of log ratio against log characteristic.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = 0;
  for (const A2Row& r : out.rows) {
    if (!(r.ratio > 0.0)) continue;  // degenerate bank entry, not fittable
    double x = std::log(r.ap_value), y = std::log(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double denom = n * sxx - sx * sx;
  out.fitted_slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  return out;
}

std::vector<OscillationKernelRow> oscillation_kernel_report(
    const KernelSpec& spec, const SampledFunction& f, std::span<const Box> cubes,
    const Rational& discard, int max_complexity) {
  if (discard <= 0 || discard >= Rational(1, 2))
    throw invalid_argument_error("oscillation_kernel_report: discard must lie in (0, 1/2)");
  SampledFunction tf = apply_cz(spec, f);
  SampledFunction nf = norm_field(f);
  double sup = 0.0;
  for (double v : nf.values) sup = std::max(sup, v);
  double q = std::pow(2.0, -spec.holder_exponent);

  std::vector<OscillationKernelRow> rows;
  for (const Box& cube : cubes) {
    OscillationKernelRow row;
    row.cube = cube;
    row.omega_upper = pseudomedian(tf, cube, discard).radius;
    double series = 0.0;
    for (int k = 0; k <= max_complexity; ++k)
      series += std::pow(q, k) * box_average(nf, dilate(cube, k));
    series += sup * std::pow(q, max_complexity + 1) / (1.0 - q);
    row.series = series;
    row.ratio = row.omega_upper == 0.0 ? 0.0
                : series == 0.0 ? std::numeric_limits<double>::infinity()
                                : row.omega_upper / series;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sparsedom
