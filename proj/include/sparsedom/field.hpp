#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsedom/cube.hpp"

namespace sparsedom {

// Uniform grid of standard dyadic cells refining a standard root cube.
// Cell index is row-major with coordinate 0 slowest.
struct GridSpec {
  DyadicCube root;
  int depth = 0;  // cells are the 2^depth per-axis descendants of root

  GridSpec() = default;
  GridSpec(DyadicCube root_, int depth_);

  int dim() const { return root.dim(); }
  long long cells_per_axis() const { return 1LL << depth; }
  long long cell_count() const { return 1LL << (static_cast<long long>(depth) * dim()); }
  Rational cell_side() const { return root.side() * pow2_rational(-depth); }
  Rational cell_measure() const { return rational_pow(cell_side(), dim()); }

  std::vector<long long> offsets(long long index) const;
  long long index(const std::vector<long long>& offsets) const;
  Box cell_box(long long index) const;
  std::vector<Rational> cell_center(long long index) const;

  bool operator==(const GridSpec&) const = default;
};

// Per-axis half-open offset window into a grid.
struct CellRange {
  std::vector<long long> begin, end;
  bool empty() const {
    for (size_t i = 0; i < begin.size(); ++i)
      if (begin[i] >= end[i]) return true;
    return begin.empty();
  }
  long long count() const {
    if (empty()) return 0;
    long long n = 1;
    for (size_t i = 0; i < begin.size(); ++i) n *= end[i] - begin[i];
    return n;
  }
};

CellRange cells_with_center_in(const GridSpec& grid, const Box& region);
CellRange cells_overlapping(const GridSpec& grid, const Box& region);

template <class Fn>
void for_each_cell(const GridSpec& grid, const CellRange& range, Fn&& fn) {
  if (range.empty()) return;
  std::vector<long long> o = range.begin;
  for (;;) {
    fn(grid.index(o), o);
    int i = grid.dim() - 1;
    for (; i >= 0; --i) {
      if (++o[i] < range.end[i]) break;
      o[i] = range.begin[i];
    }
    if (i < 0) break;
  }
}

// Piecewise-constant R^n-valued function on a grid, zero outside the root.
// norm_exponent q in [1, inf] selects the l^q norm on values.
struct SampledFunction {
  GridSpec grid;
  int components = 1;
  double norm_exponent = 2.0;
  std::vector<double> values;  // cell-major

  SampledFunction() = default;
  SampledFunction(GridSpec grid_, int components_, double norm_exponent_);

  std::span<const double> cell(long long index) const {
    return {values.data() + index * components, static_cast<size_t>(components)};
  }
  std::span<double> cell(long long index) {
    return {values.data() + index * components, static_cast<size_t>(components)};
  }
  double scalar(long long index) const { return values[index]; }
  bool scalar_valued() const { return components == 1; }
};

double lq_norm(std::span<const double> v, double q);
double lq_distance(std::span<const double> a, std::span<const double> b, double q);

// Cellwise l^q norm of f; scalar output.
SampledFunction norm_field(const SampledFunction& f);

// Exact overlap-weighted integral / mean of a scalar field over a rational
// box, the field extended by zero outside its root.
double box_integral(const SampledFunction& g, const Box& region);
double box_average(const SampledFunction& g, const Box& region);

struct CellSet {
  GridSpec grid;
  std::vector<uint32_t> cells;  // sorted, unique
  Rational measure() const {
    return grid.cell_measure() * static_cast<long long>(cells.size());
  }
};

// Cells whose center lies in `region` and whose value strictly exceeds `threshold`.
CellSet superlevel_set(const SampledFunction& g, const Box& region, double threshold);

// min{ r >= 0 : |{ ||f|| > r }| <= t }.  The Rational overload resolves ties
// in the measure comparison exactly.
double decreasing_rearrangement(const SampledFunction& f, double t);
double decreasing_rearrangement(const SampledFunction& f, const Rational& t);

}  // namespace sparsedom
