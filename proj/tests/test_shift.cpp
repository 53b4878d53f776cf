#include <doctest.h>

#include "sparsedom/shift.hpp"
#include "test_util.hpp"

using namespace sparsedom;
using namespace testutil;

namespace {

// Random standard subcubes of the grid root, within resolution.
std::vector<DyadicCube> random_subcubes(std::mt19937_64& eng, const GridSpec& grid,
                                        size_t count) {
  std::vector<DyadicCube> out;
  while (out.size() < count) {
    int level = grid.root.level + static_cast<int>(eng() % (grid.depth + 1));
    long long span = 1LL << (level - grid.root.level);
    std::vector<long long> pos(grid.dim());
    DyadicCube corner = locate(std::vector<Rational>(grid.dim(), Rational(0)), level,
                               grid.root.box().lo);
    for (int i = 0; i < grid.dim(); ++i) pos[i] = corner.pos[i] + eng() % span;
    out.push_back(standard_cube(level, pos));
  }
  return out;
}

}  // namespace

TEST_CASE("shift of a constant over the unit cube") {
  GridSpec grid(standard_cube(-1, {0}), 4);  // root [0,2)
  SampledFunction g = constant_field(grid, 2.0, std::vector<double>{1.0});
  ShiftSpec spec{0, {standard_cube(0, {0})}};
  SampledFunction out = apply_shift(spec, g);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    bool inside = grid.cell_center(c)[0] < Rational(1);
    CHECK(out.values[c] == (inside ? 1.0 : 0.0));
  }
}

TEST_CASE("shift averages over the ancestor") {
  GridSpec grid = grid_1d(4);  // [0,1)
  SampledFunction g = indicator_field(grid, 2.0, Box{{Rational(1, 2)}, {Rational(1)}},
                                      std::vector<double>{1.0});
  ShiftSpec spec{1, {standard_cube(1, {0})}};  // Q = [0, 1/2), ancestor [0,1)
  SampledFunction out = apply_shift(spec, g);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    bool inside = grid.cell_center(c)[0] < Rational(1, 2);
    CHECK(out.values[c] == doctest::Approx(inside ? 0.5 : 0.0));
  }
}

TEST_CASE("empty specs give the zero operator") {
  GridSpec grid = grid_1d(3);
  SampledFunction g = constant_field(grid, 2.0, std::vector<double>{2.0});
  ShiftSpec spec{2, {}};
  SampledFunction out = apply_shift(spec, g);
  for (double v : out.values) CHECK(v == 0.0);
  auto [a, b] = adjoint_pairing(ShiftSpec{0, {}}, g, g);
  CHECK(a == 0.0);
  CHECK(b == 0.0);
}

TEST_CASE("the general form reproduces the special form") {
  std::mt19937_64 eng(127);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 1 + static_cast<int>(eng() % 2);
    GridSpec grid =
        d == 1 ? GridSpec(standard_cube(0, {0}), 5) : GridSpec(standard_cube(0, {0, 0}), 3);
    SampledFunction g = random_piecewise_field(grid, 1, 2.0, 0.0, 1.0, eng());
    ShiftSpec spec{static_cast<int>(eng() % 4), random_subcubes(eng, grid, 1 + eng() % 6)};
    SampledFunction direct = apply_shift(spec, g);
    SampledFunction viaGeneral = apply_general_shift(as_general(spec), g);
    for (long long c = 0; c < grid.cell_count(); ++c)
      CHECK(direct.values[c] == doctest::Approx(viaGeneral.values[c]).epsilon(1e-12));
  }
}

TEST_CASE("general shift degenerate coefficients and linearity") {
  GridSpec grid = grid_1d(3);
  SampledFunction g = random_piecewise_field(grid, 1, 2.0, 0.0, 1.0, 5);
  DyadicCube q = grid.root;
  GeneralShiftSpec zero{0, 0, {{q, q, q, 0.0}}};
  for (double v : apply_general_shift(zero, g).values) CHECK(v == 0.0);
  // two disjoint terms act additively
  DyadicCube left = child(q, 0), right = child(q, 1);
  GeneralShiftSpec both{1, 1, {{q, left, left, 0.5}, {q, right, right, 0.75}}};
  GeneralShiftSpec only_left{1, 1, {{q, left, left, 0.5}}};
  GeneralShiftSpec only_right{1, 1, {{q, right, right, 0.75}}};
  SampledFunction sum = apply_general_shift(both, g);
  SampledFunction a = apply_general_shift(only_left, g);
  SampledFunction b = apply_general_shift(only_right, g);
  for (long long c = 0; c < grid.cell_count(); ++c)
    CHECK(sum.values[c] == doctest::Approx(a.values[c] + b.values[c]));
}

TEST_CASE("general shift validates its invariants") {
  GridSpec grid = grid_1d(3);
  DyadicCube q = grid.root;
  DyadicCube kid = child(q, 0);
  GeneralShiftSpec bad_ratio{2, 0, {{q, kid, q, 1.0}}};  // kid is one step, not two
  SampledFunction g = constant_field(grid, 2.0, std::vector<double>{1.0});
  CHECK_THROWS_AS(apply_general_shift(bad_ratio, g), invalid_argument_error);
  GeneralShiftSpec bad_coeff{1, 0, {{q, kid, q, 1.5}}};
  CHECK_THROWS_AS(apply_general_shift(bad_coeff, g), invalid_argument_error);
  DyadicCube outside = standard_cube(1, {-1});
  GeneralShiftSpec not_nested{1, 0, {{q, outside, q, 1.0}}};
  CHECK_THROWS_AS(apply_general_shift(not_nested, g), invalid_argument_error);
}

TEST_CASE("complexity-zero pairing is symmetric") {
  std::mt19937_64 eng(131);
  for (int trial = 0; trial < 50; ++trial) {
    GridSpec grid = grid_1d(5);
    SampledFunction g = random_piecewise_field(grid, 1, 2.0, 0.0, 1.0, eng());
    SampledFunction h = random_piecewise_field(grid, 1, 2.0, 0.0, 2.0, eng());
    ShiftSpec spec{0, random_subcubes(eng, grid, 1 + eng() % 8)};
    auto [ag_h, g_ah] = adjoint_pairing(spec, g, h);
    CHECK(ag_h == doctest::Approx(g_ah).epsilon(1e-9));
  }
}

TEST_CASE("pairing with itself and complexity restrictions") {
  GridSpec grid = grid_1d(3);
  SampledFunction g = random_piecewise_field(grid, 1, 2.0, 0.0, 1.0, 7);
  ShiftSpec spec{0, {grid.root}};
  auto [a, b] = adjoint_pairing(spec, g, g);
  CHECK(a == doctest::Approx(b));
  ShiftSpec k1{1, {grid.root}};
  CHECK_THROWS_AS(adjoint_pairing(k1, g, g), invalid_argument_error);
}

TEST_CASE("positivity and monotonicity of shifts") {
  std::mt19937_64 eng(137);
  for (int trial = 0; trial < 50; ++trial) {
    GridSpec grid = grid_1d(4);
    SampledFunction g = random_piecewise_field(grid, 1, 2.0, 0.0, 1.0, eng());
    SampledFunction h = g;
    for (double& v : h.values) v += unit_double(eng);  // h >= g pointwise
    ShiftSpec spec{static_cast<int>(eng() % 3), random_subcubes(eng, grid, 1 + eng() % 5)};
    SampledFunction ag = apply_shift(spec, g);
    SampledFunction ah = apply_shift(spec, h);
    for (long long c = 0; c < grid.cell_count(); ++c) {
      CHECK(ag.values[c] >= 0.0);
      CHECK(ag.values[c] <= ah.values[c]);
    }
  }
}

TEST_CASE("shifts reject signed inputs") {
  GridSpec grid = grid_1d(2);
  SampledFunction g = constant_field(grid, 2.0, std::vector<double>{-1.0});
  ShiftSpec spec{0, {grid.root}};
  CHECK_THROWS_AS(apply_shift(spec, g), invalid_argument_error);
}
