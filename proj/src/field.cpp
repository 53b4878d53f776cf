#include "sparsedom/field.hpp"

#include <algorithm>
#include <cmath>

namespace sparsedom {

GridSpec::GridSpec(DyadicCube root_, int depth_) : root(std::move(root_)), depth(depth_) {
  if (!root.standard()) throw invalid_argument_error("GridSpec: root must be a standard cube");
  if (depth < 0) throw invalid_argument_error("GridSpec: negative depth");
  if (static_cast<long long>(depth) * dim() > 26)
    throw invalid_argument_error("GridSpec: grid too large");
}

std::vector<long long> GridSpec::offsets(long long index) const {
  std::vector<long long> o(dim());
  long long mask = cells_per_axis() - 1;
  for (int i = dim() - 1; i >= 0; --i) {
    o[i] = index & mask;
    index >>= depth;
  }
  return o;
}

long long GridSpec::index(const std::vector<long long>& offsets) const {
  long long idx = 0;
  for (int i = 0; i < dim(); ++i) idx = (idx << depth) | offsets[i];
  return idx;
}

Box GridSpec::cell_box(long long index) const {
  std::vector<long long> o = offsets(index);
  Rational cs = cell_side();
  Box out;
  out.lo.resize(dim());
  out.hi.resize(dim());
  for (int i = 0; i < dim(); ++i) {
    out.lo[i] = root.lower(i) + cs * o[i];
    out.hi[i] = out.lo[i] + cs;
  }
  return out;
}

std::vector<Rational> GridSpec::cell_center(long long index) const {
  std::vector<long long> o = offsets(index);
  Rational cs = cell_side();
  std::vector<Rational> c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = root.lower(i) + cs * o[i] + cs / 2;
  return c;
}

namespace {

long long clamp_offset(long long v, long long n) { return std::clamp(v, 0LL, n); }

}  // namespace

CellRange cells_with_center_in(const GridSpec& grid, const Box& region) {
  CellRange r;
  r.begin.resize(grid.dim());
  r.end.resize(grid.dim());
  Rational cs = grid.cell_side();
  long long n = grid.cells_per_axis();
  for (int i = 0; i < grid.dim(); ++i) {
    // centers at root.lower + (o + 1/2) * cs
    Rational a = (region.lo[i] - grid.root.lower(i)) / cs - Rational(1, 2);
    Rational b = (region.hi[i] - grid.root.lower(i)) / cs - Rational(1, 2);
    r.begin[i] = clamp_offset(ceil_rational(a), n);
    r.end[i] = clamp_offset(ceil_rational(b), n);
  }
  return r;
}

CellRange cells_overlapping(const GridSpec& grid, const Box& region) {
  CellRange r;
  r.begin.resize(grid.dim());
  r.end.resize(grid.dim());
  Rational cs = grid.cell_side();
  long long n = grid.cells_per_axis();
  for (int i = 0; i < grid.dim(); ++i) {
    Rational a = (region.lo[i] - grid.root.lower(i)) / cs;
    Rational b = (region.hi[i] - grid.root.lower(i)) / cs;
    r.begin[i] = clamp_offset(floor_rational(a), n);
    r.end[i] = clamp_offset(ceil_rational(b), n);
  }
  return r;
}

SampledFunction::SampledFunction(GridSpec grid_, int components_, double norm_exponent_)
    : grid(std::move(grid_)), components(components_), norm_exponent(norm_exponent_) {
  if (components < 1) throw invalid_argument_error("SampledFunction: components must be >= 1");
  if (!(norm_exponent >= 1.0))
    throw invalid_argument_error("SampledFunction: norm exponent must be >= 1 (or inf)");
  values.assign(static_cast<size_t>(grid.cell_count()) * components, 0.0);
}

double lq_norm(std::span<const double> v, double q) {
  if (v.size() == 1) return std::abs(v[0]);
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (q == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (q == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), q);
  return std::pow(s, 1.0 / q);
}

double lq_distance(std::span<const double> a, std::span<const double> b, double q) {
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  double diff[16];
  if (a.size() <= 16) {
    for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return lq_norm({diff, a.size()}, q);
  }
  std::vector<double> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return lq_norm(d, q);
}

SampledFunction norm_field(const SampledFunction& f) {
  SampledFunction out(f.grid, 1, f.norm_exponent);
  long long cells = f.grid.cell_count();
  for (long long c = 0; c < cells; ++c) out.values[c] = lq_norm(f.cell(c), f.norm_exponent);
  return out;
}

double box_integral(const SampledFunction& g, const Box& region) {
  if (!g.scalar_valued()) throw invalid_argument_error("box_integral: scalar field required");
  if (region.measure().numerator() == 0) return 0.0;
  CellRange range = cells_overlapping(g.grid, region);
  if (range.empty()) return 0.0;
  Rational cs = g.grid.cell_side();
  int d = g.grid.dim();
  // Per-axis overlap lengths, so the d-dim overlap is a product.
  std::vector<std::vector<Rational>> axis(d);
  for (int i = 0; i < d; ++i) {
    axis[i].reserve(range.end[i] - range.begin[i]);
    for (long long o = range.begin[i]; o < range.end[i]; ++o) {
      Rational clo = g.grid.root.lower(i) + cs * o;
      Rational chi = clo + cs;
      axis[i].push_back(std::min(chi, region.hi[i]) - std::max(clo, region.lo[i]));
    }
  }
  double sum = 0.0;
  for_each_cell(g.grid, range, [&](long long idx, const std::vector<long long>& o) {
    Rational w(1);
    for (int i = 0; i < d; ++i) w *= axis[i][o[i] - range.begin[i]];
    sum += g.values[idx] * to_double(w);
  });
  return sum;
}

double box_average(const SampledFunction& g, const Box& region) {
  Rational vol = region.measure();
  if (vol <= 0) throw invalid_argument_error("box_average: region must have positive measure");
  return box_integral(g, region) / to_double(vol);
}

CellSet superlevel_set(const SampledFunction& g, const Box& region, double threshold) {
  if (!g.scalar_valued()) throw invalid_argument_error("superlevel_set: scalar field required");
  CellSet out{g.grid, {}};
  CellRange range = cells_with_center_in(g.grid, region);
  for_each_cell(g.grid, range, [&](long long idx, const std::vector<long long>&) {
    if (g.values[idx] > threshold) out.cells.push_back(static_cast<uint32_t>(idx));
  });
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

namespace {

// Smallest r such that at most `allowed` cells have norm > r.
double rearrangement_at(const SampledFunction& f, long long allowed) {
  long long cells = f.grid.cell_count();
  if (allowed >= cells) return 0.0;
  std::vector<double> norms(cells);
  for (long long c = 0; c < cells; ++c) norms[c] = lq_norm(f.cell(c), f.norm_exponent);
  // value with exactly `allowed` entries strictly above it
  auto nth = norms.begin() + (cells - 1 - allowed);
  std::nth_element(norms.begin(), nth, norms.end());
  return *nth;
}

}  // namespace

double decreasing_rearrangement(const SampledFunction& f, double t) {
  if (t < 0) throw invalid_argument_error("decreasing_rearrangement: t must be >= 0");
  long double cm = static_cast<long double>(to_double(f.grid.cell_measure()));
  long long allowed = static_cast<long long>(std::floor(static_cast<long double>(t) / cm));
  allowed = std::max(allowed, 0LL);
  return rearrangement_at(f, allowed);
}

double decreasing_rearrangement(const SampledFunction& f, const Rational& t) {
  if (t < 0) throw invalid_argument_error("decreasing_rearrangement: t must be >= 0");
  return rearrangement_at(f, floor_rational(t / f.grid.cell_measure()));
}

}  // namespace sparsedom
