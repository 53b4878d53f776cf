#include "sparsedom/lerner.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace sparsedom {

namespace {

void require_in_grid(const GridSpec& grid, const DyadicCube& cube, const char* who) {
  if (!cube.standard()) throw invalid_argument_error(std::string(who) + ": cube must be standard");
  if (cube.level < grid.root.level || cube.level > grid.root.level + grid.depth)
    throw invalid_argument_error(std::string(who) + ": cube level outside grid resolution");
  if (!grid.root.box().contains(cube.box()))
    throw invalid_argument_error(std::string(who) + ": cube not contained in the grid root");
}

// Number of exceedance cells inside a grid-aligned cube.
long long count_in(const std::vector<char>& exceed, const GridSpec& grid, const DyadicCube& cube) {
  long long n = 0;
  for_each_cell(grid, cells_with_center_in(grid, cube.box()),
                [&](long long idx, const std::vector<long long>&) { n += exceed[idx]; });
  return n;
}

void select_stopping(const std::vector<char>& exceed, const GridSpec& grid,
                     const Rational& stop_fraction, const DyadicCube& cube,
                     std::vector<DyadicCube>& out) {
  if (cube.level >= grid.root.level + grid.depth) return;  // single cell, no children
  bool qualifies = false;
  std::vector<DyadicCube> kids = children(cube);
  for (const DyadicCube& c : kids) {
    long long cells = floor_rational(c.measure() / grid.cell_measure());
    if (Rational(count_in(exceed, grid, c)) > stop_fraction * cells) {
      qualifies = true;
      break;
    }
  }
  if (qualifies) {
    out.push_back(cube);
    return;
  }
  for (const DyadicCube& c : kids) select_stopping(exceed, grid, stop_fraction, c, out);
}

std::string cube_text(const DyadicCube& q) {
  std::string s = "cube j=" + std::to_string(q.level) + " m=(";
  for (int i = 0; i < q.dim(); ++i) s += (i ? "," : "") + std::to_string(q.pos[i]);
  return s + ")";
}

std::vector<char> exceedance_mask(const SampledFunction& f, const DyadicCube& cube,
                                  std::span<const double> center, double radius) {
  std::vector<char> exceed(f.grid.cell_count(), 0);
  for_each_cell(f.grid, cells_with_center_in(f.grid, cube.box()),
                [&](long long idx, const std::vector<long long>&) {
                  exceed[idx] =
                      lq_distance(f.cell(idx), center, f.norm_exponent) > radius ? 1 : 0;
                });
  return exceed;
}

}  // namespace

std::vector<DyadicCube> stopping_children(const SampledFunction& f, const DyadicCube& cube,
                                          const Rational& stop_fraction,
                                          std::span<const double> center, double radius) {
  require_in_grid(f.grid, cube, "stopping_children");
  if (stop_fraction <= 0 || stop_fraction >= Rational(1, 2))
    throw invalid_argument_error("stopping_children: stop fraction must lie in (0, 1/2)");
  std::vector<char> exceed = exceedance_mask(f, cube, center, radius);
  std::vector<DyadicCube> out;
  select_stopping(exceed, f.grid, stop_fraction, cube, out);
  return out;
}

SparseCollection decompose(const SampledFunction& f, const DyadicCube& root,
                           const Rational& witness_density) {
  if (witness_density <= 0 || witness_density >= 1)
    throw invalid_argument_error("decompose: witness density must lie in (0, 1)");
  require_in_grid(f.grid, root, "decompose");

  SparseCollection s;
  s.witness_density = witness_density;
  s.discard = (Rational(1) - witness_density) * pow2_rational(-(f.grid.dim() + 2));
  s.stop_fraction = Rational(1, 4);
  s.grid = f.grid;

  std::vector<DyadicCube> current{root};
  for (int generation = 0; !current.empty(); ++generation) {
    std::sort(current.begin(), current.end(), cube_less);
    std::vector<DyadicCube> next;
    for (const DyadicCube& q : current) {
      OscillationCertificate cert = pseudomedian(f, q.box(), s.stop_fraction);
      double rho = least_bound(f, q.box(), s.discard, cert.center);
      SparseEntry e;
      e.cube = q;
      e.generation = generation;
      e.center = cert.center;
      e.rho = rho;
      e.omega_bound = 3.0 * rho;
      e.witness.grid = f.grid;
      s.entries.push_back(std::move(e));
      std::vector<DyadicCube> kids = stopping_children(f, q, s.stop_fraction, cert.center, rho);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    current = std::move(next);
  }

  // E(Q) = Q minus all deeper entries: give each cell to the deepest entry
  // containing it, sweeping generations in order.
  std::vector<int64_t> owner(f.grid.cell_count(), -1);
  for (size_t i = 0; i < s.entries.size(); ++i)
    for_each_cell(f.grid, cells_with_center_in(f.grid, s.entries[i].cube.box()),
                  [&](long long idx, const std::vector<long long>&) {
                    owner[idx] = static_cast<int64_t>(i);
                  });
  for (long long idx = 0; idx < f.grid.cell_count(); ++idx)
    if (owner[idx] >= 0)
      s.entries[owner[idx]].witness.cells.push_back(static_cast<uint32_t>(idx));
  return s;
}

namespace {

const SparseEntry& root_entry(const SparseCollection& s, const char* who) {
  const SparseEntry* top = nullptr;
  for (const SparseEntry& e : s.entries)
    if (e.generation == 0) {
      if (top) throw invalid_argument_error(std::string(who) + ": several generation-0 cubes");
      top = &e;
    }
  if (!top) throw invalid_argument_error(std::string(who) + ": no generation-0 cube");
  return *top;
}

}  // namespace

VerifyReport verify_decomposition(const SampledFunction& f, const SparseCollection& s,
                                  double eps) {
  if (!(f.grid == s.grid))
    throw invalid_argument_error("verify_decomposition: collection references a different grid");
  VerifyReport report;
  if (s.entries.empty()) {
    report.holds = true;
    return report;
  }
  std::vector<double> budget(f.grid.cell_count(), 0.0);
  for (const SparseEntry& e : s.entries)
    for_each_cell(f.grid, cells_with_center_in(f.grid, e.cube.box()),
                  [&](long long idx, const std::vector<long long>&) {
                    budget[idx] += 3.0 * e.rho;
                  });
  const SparseEntry& top = root_entry(s, "verify_decomposition");
  report.max_violation = -std::numeric_limits<double>::infinity();
  for_each_cell(f.grid, cells_with_center_in(f.grid, top.cube.box()),
                [&](long long idx, const std::vector<long long>&) {
                  double lhs = lq_distance(f.cell(idx), top.center, f.norm_exponent);
                  double v = lhs - budget[idx];
                  if (v > report.max_violation) {
                    report.max_violation = v;
                    report.worst_cell = idx;
                  }
                });
  report.holds = report.max_violation <= eps;
  return report;
}

VerifyReport verify_omega_form(const SampledFunction& f, const SparseCollection& s, double eps) {
  if (!(f.grid == s.grid))
    throw invalid_argument_error("verify_omega_form: collection references a different grid");
  if (!f.scalar_valued())
    throw invalid_argument_error("verify_omega_form: scalar instances only");
  VerifyReport report;
  if (s.entries.empty()) {
    report.holds = true;
    return report;
  }
  std::vector<double> budget(f.grid.cell_count(), 0.0);
  for (const SparseEntry& e : s.entries) {
    // Midpoint-enriched grid: for scalars the optimal center is the midpoint
    // of two sample values, so the oracle attains omega exactly.
    std::vector<double> centers = scalar_center_grid(f, e.cube.box());
    std::vector<double> samples;
    for_each_cell(f.grid, cells_with_center_in(f.grid, e.cube.box()),
                  [&](long long idx, const std::vector<long long>&) {
                    samples.push_back(f.values[idx]);
                  });
    for (size_t a = 0; a < samples.size(); ++a)
      for (size_t b = a + 1; b < samples.size(); ++b)
        centers.push_back(0.5 * (samples[a] + samples[b]));
    double omega = optimal_bound_oracle(f, e.cube.box(), s.discard, centers);
    for_each_cell(f.grid, cells_with_center_in(f.grid, e.cube.box()),
                  [&](long long idx, const std::vector<long long>&) {
                    budget[idx] += 12.0 * omega;
                  });
  }
  const SparseEntry& top = root_entry(s, "verify_omega_form");
  report.max_violation = -std::numeric_limits<double>::infinity();
  for_each_cell(f.grid, cells_with_center_in(f.grid, top.cube.box()),
                [&](long long idx, const std::vector<long long>&) {
                  double lhs = lq_distance(f.cell(idx), top.center, f.norm_exponent);
                  double v = lhs - budget[idx];
                  if (v > report.max_violation) {
                    report.max_violation = v;
                    report.worst_cell = idx;
                  }
                });
  report.holds = report.max_violation <= eps;
  return report;
}

SparseCheckReport check_sparse_invariants(const SparseCollection& s) {
  SparseCheckReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    if (r.violation.empty()) r.violation = std::move(msg);
  };
  if (s.entries.empty()) return r;

  const GridSpec& grid = s.grid;
  Rational cm = grid.cell_measure();
  std::vector<char> seen(grid.cell_count(), 0);
  std::map<int, std::vector<const SparseEntry*>> by_gen;
  for (const SparseEntry& e : s.entries) by_gen[e.generation].push_back(&e);

  for (const SparseEntry& e : s.entries) {
    Box qbox = e.cube.box();
    for (uint32_t c : e.witness.cells) {
      if (!qbox.contains(grid.cell_box(c))) {
        fail("witness cell " + std::to_string(c) + " outside its " + cube_text(e.cube));
        break;
      }
      if (seen[c]) {
        fail("witness sets overlap at cell " + std::to_string(c) + " of " + cube_text(e.cube));
        break;
      }
      seen[c] = 1;
    }
    if (Rational(static_cast<long long>(e.witness.cells.size())) * cm <
        s.witness_density * e.cube.measure())
      fail("witness density below nu at generation " + std::to_string(e.generation) + ", " +
           cube_text(e.cube));
  }

  // Generation structure and per-step measure bound.
  if (!by_gen.count(0) || by_gen[0].size() != 1) {
    fail("expected exactly one generation-0 cube");
    return r;
  }
  Rational root_measure = by_gen[0].front()->cube.measure();
  Rational step_bound = pow2_rational(grid.dim()) * s.discard / s.stop_fraction;
  Rational decay = Rational(1) - s.witness_density;
  for (auto& [gen, cubes] : by_gen) {
    Rational total(0);
    for (size_t a = 0; a < cubes.size(); ++a) {
      total += cubes[a]->cube.measure();
      for (size_t b = a + 1; b < cubes.size(); ++b)
        if (overlap_measure(cubes[a]->cube.box(), cubes[b]->cube.box()) > 0)
          fail("same-generation cubes overlap");
    }
    if (gen > 0) {
      if (!by_gen.count(gen - 1)) fail("generation gap");
      if (total > rational_pow(decay, gen) * root_measure)
        fail("generation measure decay violated at generation " + std::to_string(gen));
      for (const SparseEntry* e : cubes) {
        bool inside = false;
        for (const SparseEntry* p : by_gen[gen - 1])
          if (p->cube.box().contains(e->cube.box())) {
            inside = true;
            break;
          }
        if (!inside)
          fail(cube_text(e->cube) + " not contained in a previous-generation cube");
      }
      // Per-parent measure bound of the stopping step.
      for (const SparseEntry* p : by_gen[gen - 1]) {
        Rational child_total(0);
        for (const SparseEntry* e : cubes)
          if (p->cube.box().contains(e->cube.box())) child_total += e->cube.measure();
        if (child_total > step_bound * p->cube.measure())
          fail("per-step measure bound violated");
      }
    }
  }
  return r;
}

}  // namespace sparsedom
