#include "sparsedom/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparsedom {

namespace {

struct RegionSamples {
  std::vector<long long> cells;  // ascending cell indices
  long long count() const { return static_cast<long long>(cells.size()); }
};

RegionSamples gather(const SampledFunction& f, const Box& region) {
  RegionSamples s;
  for_each_cell(f.grid, cells_with_center_in(f.grid, region),
                [&](long long idx, const std::vector<long long>&) { s.cells.push_back(idx); });
  if (s.cells.empty()) throw empty_cube_error("region contains no cell centers");
  return s;
}

long long allowed_exceedances(const Rational& discard, long long n) {
  return floor_rational(discard * n);
}

double kth_bound(std::vector<double>& dist, long long allowed) {
  auto nth = dist.begin() + (dist.size() - 1 - allowed);
  std::nth_element(dist.begin(), nth, dist.end());
  return *nth;
}

double bound_about(const SampledFunction& f, const RegionSamples& s, long long allowed,
                   std::span<const double> center) {
  std::vector<double> dist(s.cells.size());
  for (size_t i = 0; i < s.cells.size(); ++i)
    dist[i] = lq_distance(f.cell(s.cells[i]), center, f.norm_exponent);
  return kth_bound(dist, allowed);
}

}  // namespace

double least_bound(const SampledFunction& f, const Box& region, const Rational& discard,
                   std::span<const double> center) {
  if (discard < 0 || discard >= 1)
    throw invalid_argument_error("least_bound: discard fraction must lie in [0, 1)");
  if (static_cast<int>(center.size()) != f.components)
    throw invalid_argument_error("least_bound: center dimension mismatch");
  RegionSamples s = gather(f, region);
  return bound_about(f, s, allowed_exceedances(discard, s.count()), center);
}

double optimal_bound_oracle(const SampledFunction& f, const Box& region, const Rational& discard,
                            std::span<const double> centers) {
  if (centers.empty() || centers.size() % f.components != 0)
    throw invalid_argument_error("optimal_bound_oracle: bad center grid");
  RegionSamples s = gather(f, region);
  long long allowed = allowed_exceedances(discard, s.count());
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < centers.size(); i += f.components)
    best = std::min(best, bound_about(f, s, allowed,
                                      centers.subspan(i, static_cast<size_t>(f.components))));
  return best;
}

OscillationCertificate pseudomedian(const SampledFunction& f, const Box& region,
                                    const Rational& discard) {
  if (discard <= 0 || discard >= Rational(1, 2))
    throw invalid_argument_error("pseudomedian: discard fraction must lie in (0, 1/2)");
  RegionSamples s = gather(f, region);
  long long n = s.count();
  long long allowed = allowed_exceedances(discard, n);

  // Medoid search: candidate centers are the sample values, in cell order.
  // A strict < keeps the first (smallest-index) minimizer.
  double best = std::numeric_limits<double>::infinity();
  long long best_cell = s.cells.front();
  std::vector<double> dist(n);
  for (long long c = 0; c < n; ++c) {
    std::span<const double> cand = f.cell(s.cells[c]);
    for (long long i = 0; i < n; ++i)
      dist[i] = lq_distance(f.cell(s.cells[i]), cand, f.norm_exponent);
    double r = kth_bound(dist, allowed);
    if (r < best) {
      best = r;
      best_cell = s.cells[c];
    }
  }

  OscillationCertificate cert;
  cert.cube = region;
  cert.discard = discard;
  cert.center.assign(f.cell(best_cell).begin(), f.cell(best_cell).end());
  cert.radius = best;
  cert.excess.grid = f.grid;
  for (long long i = 0; i < n; ++i)
    if (lq_distance(f.cell(s.cells[i]), cert.center, f.norm_exponent) > best)
      cert.excess.cells.push_back(static_cast<uint32_t>(s.cells[i]));
  return cert;
}

double scalar_median(const SampledFunction& g, const Box& region) {
  if (!g.scalar_valued()) throw invalid_argument_error("scalar_median: scalar field required");
  RegionSamples s = gather(g, region);
  std::vector<double> vals(s.cells.size());
  for (size_t i = 0; i < s.cells.size(); ++i) vals[i] = g.values[s.cells[i]];
  // Lower median: the ceil(N/2)-th smallest satisfies both half-measure
  // conditions and no smaller sample value does.
  long long n = s.count();
  auto nth = vals.begin() + ((n + 1) / 2 - 1);
  std::nth_element(vals.begin(), nth, vals.end());
  return *nth;
}

std::vector<double> scalar_center_grid(const SampledFunction& f, const Box& region,
                                       int oversample) {
  if (!f.scalar_valued())
    throw invalid_argument_error("scalar_center_grid: scalar field required");
  RegionSamples s = gather(f, region);
  std::vector<double> pts;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (long long c : s.cells) {
    lo = std::min(lo, f.values[c]);
    hi = std::max(hi, f.values[c]);
  }
  long long m = oversample * s.count();
  for (long long i = 0; i <= m; ++i) pts.push_back(lo + (hi - lo) * i / m);
  for (long long c : s.cells) pts.push_back(f.values[c]);
  return pts;
}

std::vector<double> tensor_center_grid(const SampledFunction& f, const Box& region, int per_axis) {
  if (f.components > 3)
    throw invalid_argument_error("tensor_center_grid: supported for components <= 3 only");
  if (per_axis < 2) throw invalid_argument_error("tensor_center_grid: per_axis must be >= 2");
  RegionSamples s = gather(f, region);
  int n = f.components;
  std::vector<double> lo(n, std::numeric_limits<double>::infinity()), hi(n, -lo[0]);
  for (long long c : s.cells) {
    std::span<const double> v = f.cell(c);
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  std::vector<double> pts;
  std::vector<int> o(n, 0);
  for (;;) {
    for (int i = 0; i < n; ++i) pts.push_back(lo[i] + (hi[i] - lo[i]) * o[i] / (per_axis - 1));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++o[i] < per_axis) break;
      o[i] = 0;
    }
    if (i < 0) break;
  }
  for (long long c : s.cells) pts.insert(pts.end(), f.cell(c).begin(), f.cell(c).end());
  return pts;
}

}  // namespace sparsedom
