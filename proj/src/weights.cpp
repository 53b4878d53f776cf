#include "sparsedom/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparsedom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> prefix_sums(const SampledFunction& g) {
  std::vector<double> p(g.values.size() + 1, 0.0);
  for (size_t i = 0; i < g.values.size(); ++i) p[i + 1] = p[i] + g.values[i];
  return p;
}

SampledFunction dual_values(const SampledFunction& w, double p) {
  SampledFunction out(w.grid, 1, w.norm_exponent);
  for (size_t i = 0; i < w.values.size(); ++i)
    out.values[i] = std::pow(w.values[i], -1.0 / (p - 1.0));
  return out;
}

Box aligned_interval(const GridSpec& grid, long long i, long long j) {
  Rational cs = grid.cell_side();
  Box b;
  b.lo = {grid.root.lower(0) + cs * i};
  b.hi = {grid.root.lower(0) + cs * j};
  return b;
}

// Generic sup over the characteristic family of a per-box functional.
template <class Fn>
void sup_over_family(const GridSpec& grid, Fn&& eval, double& best, Box& argmax,
                     long long& family_size) {
  best = -kInf;
  family_size = 0;
  if (grid.dim() == 1) {
    long long n = grid.cells_per_axis();
    for (long long i = 0; i < n; ++i)
      for (long long j = i + 1; j <= n; ++j) {
        ++family_size;
        double v = eval(aligned_interval(grid, i, j));
        if (v > best) {
          best = v;
          argmax = aligned_interval(grid, i, j);
        }
      }
    return;
  }
  for (const Box& b : characteristic_family(grid)) {
    ++family_size;
    double v = eval(b);
    if (v > best) {
      best = v;
      argmax = b;
    }
  }
}

}  // namespace

Weight::Weight(SampledFunction w) : values(std::move(w)) {
  if (!values.scalar_valued()) throw invalid_argument_error("Weight: scalar field required");
  for (double v : values.values)
    if (!(v > 0)) throw invalid_argument_error("Weight: values must be strictly positive");
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1)) throw invalid_argument_error("dual_weight: p must exceed 1");
  return Weight(dual_values(w.values, p));
}

std::vector<Box> characteristic_family(const GridSpec& grid) {
  std::vector<Box> out;
  if (grid.dim() == 1) {
    long long n = grid.cells_per_axis();
    for (long long i = 0; i < n; ++i)
      for (long long j = i + 1; j <= n; ++j) out.push_back(aligned_interval(grid, i, j));
    return out;
  }
  // All translated-dyadic cubes fully contained in the root, from root scale
  // down to cell scale.  Order: translation lex, level ascending, pos lex.
  static const Rational kOffsets[3] = {Rational(0), Rational(1, 3), Rational(2, 3)};
  int d = grid.dim();
  Box rootbox = grid.root.box();
  long long combos = 1;
  for (int i = 0; i < d; ++i) combos *= 3;
  for (long long c = 0; c < combos; ++c) {
    std::vector<Rational> u(d);
    long long rem = c;
    for (int i = d - 1; i >= 0; --i) {
      u[i] = kOffsets[rem % 3];
      rem /= 3;
    }
    for (int level = grid.root.level; level <= grid.root.level + grid.depth; ++level) {
      // Position window from the corners of the root.
      DyadicCube lo_cube = locate(u, level, rootbox.lo);
      std::vector<long long> lo_pos = lo_cube.pos;
      long long span = 1LL << (level - grid.root.level);
      std::vector<long long> counts(d, span + 1);
      std::vector<long long> o(d, 0);
      for (;;) {
        std::vector<long long> pos(d);
        for (int i = 0; i < d; ++i) pos[i] = lo_pos[i] + o[i];
        DyadicCube cand(u, level, pos);
        if (rootbox.contains(cand.box())) out.push_back(cand.box());
        int i = d - 1;
        for (; i >= 0; --i) {
          if (++o[i] < counts[i]) break;
          o[i] = 0;
        }
        if (i < 0) break;
      }
    }
  }
  return out;
}

double maximal_value_at(const SampledFunction& g, const Box& mask, long long cell) {
  if (!g.scalar_valued())
    throw invalid_argument_error("maximal_value_at: scalar field required");
  const GridSpec& grid = g.grid;
  double best = 0.0;
  if (grid.dim() == 1) {
    std::vector<double> prefix = prefix_sums(g);
    long long n = grid.cells_per_axis();
    long long x = cell;
    // Masked mean over aligned [i, j): restrict the numerator to the mask.
    Rational cs = grid.cell_side();
    Rational mask_lo = (mask.lo[0] - grid.root.lower(0)) / cs;
    Rational mask_hi = (mask.hi[0] - grid.root.lower(0)) / cs;
    long long mlo = std::clamp(floor_rational(mask_lo), 0LL, n);
    long long mhi = std::clamp(ceil_rational(mask_hi), 0LL, n);
    for (long long i = 0; i <= x; ++i)
      for (long long j = x + 1; j <= n; ++j) {
        long long a = std::max(i, mlo), b = std::min(j, mhi);
        double massed = b > a ? prefix[b] - prefix[a] : 0.0;
        best = std::max(best, massed / static_cast<double>(j - i));
      }
    return best;
  }
  static const Rational kOffsets[3] = {Rational(0), Rational(1, 3), Rational(2, 3)};
  int d = grid.dim();
  Box rootbox = grid.root.box();
  std::vector<Rational> x = grid.cell_center(cell);
  long long combos = 1;
  for (int i = 0; i < d; ++i) combos *= 3;
  for (long long c = 0; c < combos; ++c) {
    std::vector<Rational> u(d);
    long long rem = c;
    for (int i = d - 1; i >= 0; --i) {
      u[i] = kOffsets[rem % 3];
      rem /= 3;
    }
    for (int level = grid.root.level; level <= grid.root.level + grid.depth; ++level) {
      DyadicCube r = locate(u, level, x);
      Box rbox = r.box();
      if (!rootbox.contains(rbox)) continue;
      double val = box_integral(g, intersect(rbox, mask)) / to_double(rbox.measure());
      best = std::max(best, val);
    }
  }
  return best;
}

SampledFunction maximal_function(const SampledFunction& g) {
  SampledFunction out(g.grid, 1, g.norm_exponent);
  Box everything = g.grid.root.box();
  for (long long c = 0; c < g.grid.cell_count(); ++c)
    out.values[c] = maximal_value_at(g, everything, c);
  return out;
}

ApReport ap_characteristic(const Weight& w, double p) {
  if (!(p > 1) || std::isinf(p))
    throw invalid_argument_error("ap_characteristic: p must lie in (1, inf)");
  SampledFunction sigma = dual_values(w.values, p);
  ApReport report;
  report.p = p;
  const GridSpec& grid = w.grid();
  if (grid.dim() == 1) {
    std::vector<double> pw = prefix_sums(w.values), ps = prefix_sums(sigma);
    auto eval = [&](const Box& b) {
      Rational cs = grid.cell_side();
      long long i = floor_rational((b.lo[0] - grid.root.lower(0)) / cs);
      long long j = floor_rational((b.hi[0] - grid.root.lower(0)) / cs);
      double len = static_cast<double>(j - i);
      return (pw[j] - pw[i]) / len * std::pow((ps[j] - ps[i]) / len, p - 1.0);
    };
    sup_over_family(grid, eval, report.value, report.argmax_cube, report.cube_family_size);
    return report;
  }
  auto eval = [&](const Box& b) {
    double vol = to_double(b.measure());
    return box_integral(w.values, b) / vol * std::pow(box_integral(sigma, b) / vol, p - 1.0);
  };
  sup_over_family(grid, eval, report.value, report.argmax_cube, report.cube_family_size);
  return report;
}

ApReport a_infty_characteristic(const Weight& w) {
  ApReport report;
  report.p = kInf;
  const GridSpec& grid = w.grid();
  auto eval = [&](const Box& b) {
    double wq = 0.0, m_int = 0.0;
    for_each_cell(grid, cells_overlapping(grid, b),
                  [&](long long idx, const std::vector<long long>&) {
                    double frac = to_double(overlap_measure(grid.cell_box(idx), b));
                    if (frac <= 0.0) return;
                    wq += w.values.values[idx] * frac;
                    m_int += maximal_value_at(w.values, b, idx) * frac;
                  });
    return m_int / wq;
  };
  sup_over_family(grid, eval, report.value, report.argmax_cube, report.cube_family_size);
  return report;
}

double two_weight_characteristic(const Weight& w, const Weight& sigma, double p) {
  if (!(p > 1) || std::isinf(p))
    throw invalid_argument_error("two_weight_characteristic: p must lie in (1, inf)");
  if (!(w.grid() == sigma.grid()))
    throw invalid_argument_error("two_weight_characteristic: weights live on different grids");
  const GridSpec& grid = w.grid();
  double best;
  Box argmax;
  long long family_size;
  if (grid.dim() == 1) {
    std::vector<double> pw = prefix_sums(w.values), ps = prefix_sums(sigma.values);
    auto eval = [&](const Box& b) {
      Rational cs = grid.cell_side();
      long long i = floor_rational((b.lo[0] - grid.root.lower(0)) / cs);
      long long j = floor_rational((b.hi[0] - grid.root.lower(0)) / cs);
      double len = static_cast<double>(j - i);
      return (pw[j] - pw[i]) / len * std::pow((ps[j] - ps[i]) / len, p - 1.0);
    };
    sup_over_family(grid, eval, best, argmax, family_size);
    return best;
  }
  auto eval = [&](const Box& b) {
    double vol = to_double(b.measure());
    return box_integral(w.values, b) / vol *
           std::pow(box_integral(sigma.values, b) / vol, p - 1.0);
  };
  sup_over_family(grid, eval, best, argmax, family_size);
  return best;
}

double weighted_norm(const SampledFunction& f, const Weight& w, double p) {
  if (!(p >= 1) || std::isinf(p)) throw invalid_argument_error("weighted_norm: p must lie in [1, inf)");
  if (!(f.grid == w.grid())) throw invalid_argument_error("weighted_norm: grid mismatch");
  double cm = to_double(f.grid.cell_measure());
  double sum = 0.0;
  for (long long c = 0; c < f.grid.cell_count(); ++c)
    sum += std::pow(lq_norm(f.cell(c), f.norm_exponent), p) * w.values.values[c] * cm;
  return std::pow(sum, 1.0 / p);
}

}  // namespace sparsedom
