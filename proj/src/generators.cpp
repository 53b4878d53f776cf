#include "sparsedom/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sparsedom {

namespace {

double next_unit(std::mt19937_64& eng) {
  // Platform-independent mapping to [0, 1).
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

SampledFunction constant_field(const GridSpec& grid, double norm_exponent,
                               std::span<const double> value) {
  SampledFunction f(grid, static_cast<int>(value.size()), norm_exponent);
  for (long long c = 0; c < grid.cell_count(); ++c)
    std::copy(value.begin(), value.end(), f.cell(c).begin());
  return f;
}

SampledFunction indicator_field(const GridSpec& grid, double norm_exponent, const Box& support,
                                std::span<const double> value) {
  SampledFunction f(grid, static_cast<int>(value.size()), norm_exponent);
  for_each_cell(grid, cells_with_center_in(grid, support),
                [&](long long idx, const std::vector<long long>&) {
                  std::copy(value.begin(), value.end(), f.cell(idx).begin());
                });
  return f;
}

SampledFunction random_piecewise_field(const GridSpec& grid, int components,
                                       double norm_exponent, double lo, double hi,
                                       uint64_t seed) {
  SampledFunction f(grid, components, norm_exponent);
  std::mt19937_64 eng(seed);
  for (double& v : f.values) v = lo + (hi - lo) * next_unit(eng);
  return f;
}

SampledFunction bump_field(const GridSpec& grid, double norm_exponent,
                           std::span<const double> center, std::span<const double> width,
                           std::span<const double> amplitude) {
  if (center.size() != static_cast<size_t>(grid.dim()) || width.size() != center.size())
    throw invalid_argument_error("bump_field: center/width dimension mismatch");
  SampledFunction f(grid, static_cast<int>(amplitude.size()), norm_exponent);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    std::vector<Rational> x = grid.cell_center(c);
    double profile = 1.0;
    for (int i = 0; i < grid.dim(); ++i) {
      double t = (to_double(x[i]) - center[i]) / width[i];
      if (std::abs(t) >= 0.5) {
        profile = 0.0;
        break;
      }
      double cosv = std::cos(std::numbers::pi * t);
      profile *= cosv * cosv;
    }
    if (profile == 0.0) continue;
    std::span<double> cell = f.cell(c);
    for (size_t i = 0; i < amplitude.size(); ++i) cell[i] = amplitude[i] * profile;
  }
  return f;
}

Weight power_weight(const GridSpec& grid, double exponent) {
  if (grid.dim() != 1) throw invalid_argument_error("power_weight: d = 1 only");
  if (exponent <= -1.0)
    throw invalid_argument_error("power_weight: exponent must exceed -1 for local integrability");
  SampledFunction w(grid, 1, 2.0);
  Rational s = grid.root.lower(0) + grid.root.side() / 2;
  double sd = to_double(s);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    Box cell = grid.cell_box(c);
    if (s >= cell.lo[0] && s <= cell.hi[0]) {
      // Closed-form cell average of |x - s|^a across the singular point.
      double left = to_double(s - cell.lo[0]), right = to_double(cell.hi[0] - s);
      double h = to_double(cell.hi[0] - cell.lo[0]);
      w.values[c] = (std::pow(left, exponent + 1.0) + std::pow(right, exponent + 1.0)) /
                    ((exponent + 1.0) * h);
    } else {
      w.values[c] = std::pow(std::abs(to_double(grid.cell_center(c)[0]) - sd), exponent);
    }
  }
  return Weight(std::move(w));
}

std::vector<SampledFunction> a2_test_bank(const GridSpec& grid, uint64_t seed,
                                          std::vector<std::string>& names) {
  if (grid.dim() != 1) throw invalid_argument_error("a2_test_bank: d = 1 only");
  Rational lo = grid.root.lower(0);
  Rational len = grid.root.side();
  Rational cs = grid.cell_side();
  auto interval = [&](Rational a, Rational b) { return Box{{lo + len * a}, {lo + len * b}}; };
  const double one[1] = {1.0};

  std::vector<SampledFunction> bank;
  names.clear();
  auto add = [&](std::string name, SampledFunction f) {
    names.push_back(std::move(name));
    bank.push_back(std::move(f));
  };

  add("indicator-left-half", indicator_field(grid, 2.0, interval({0, 1}, {1, 2}), one));
  add("indicator-right-quarter", indicator_field(grid, 2.0, interval({3, 4}, {1, 1}), one));
  add("indicator-center", indicator_field(grid, 2.0, interval({7, 16}, {9, 16}), one));
  add("indicator-wide", indicator_field(grid, 2.0, interval({1, 8}, {7, 8}), one));

  double mid = to_double(lo + len / 2);
  double l = to_double(len);
  double c1[1] = {to_double(lo) + l / 4}, w1[1] = {l / 4};
  double c2[1] = {mid}, w2[1] = {l / 8};
  double c3[1] = {to_double(lo) + 3 * l / 4}, w3[1] = {l / 3};
  add("bump-left", bump_field(grid, 2.0, c1, w1, one));
  add("bump-center", bump_field(grid, 2.0, c2, w2, one));
  add("bump-right", bump_field(grid, 2.0, c3, w3, one));

  for (int i = 0; i < 4; ++i)
    add("random-piecewise-" + std::to_string(i),
        random_piecewise_field(grid, 1, 2.0, -1.0, 1.0, seed + i));

  Box thin{{lo + len / 2 - cs * 4}, {lo + len / 2 + cs * 4}};
  add("indicator-thin-center", indicator_field(grid, 2.0, thin, one));
  return bank;
}

}  // namespace sparsedom
