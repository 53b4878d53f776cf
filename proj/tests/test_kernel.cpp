#include <doctest.h>

#include <numbers>

#include "sparsedom/kernel.hpp"
#include "test_util.hpp"

using namespace sparsedom;
using namespace testutil;

namespace {

KernelSpec hilbert(double trunc = 0.0) {
  KernelSpec k;
  k.kind = KernelKind::hilbert_truncated;
  k.holder_exponent = 1.0;
  k.truncation = trunc;
  k.components = 1;
  return k;
}

}  // namespace

TEST_CASE("kernel evaluation formulas") {
  KernelSpec k = hilbert();
  double out[1];
  kernel_eval(k, std::vector<double>{1.0}, std::vector<double>{0.0}, out);
  CHECK(out[0] == doctest::Approx(1.0 / std::numbers::pi));
  kernel_eval(k, std::vector<double>{0.0}, std::vector<double>{1.0}, out);
  CHECK(out[0] == doctest::Approx(-1.0 / std::numbers::pi));

  KernelSpec t = hilbert(0.5);
  kernel_eval(t, std::vector<double>{0.2}, std::vector<double>{0.0}, out);
  CHECK(out[0] == 0.0);

  KernelSpec m;
  m.kind = KernelKind::matrix_composed;
  m.components = 2;
  m.matrix = {1.0, 0.0, 0.0, 1.0};
  double mo[4];
  kernel_eval(m, std::vector<double>{2.0}, std::vector<double>{0.0}, mo);
  CHECK(mo[0] == doctest::Approx(0.5));  // scalar power kernel 1/(x-y) times identity
  CHECK(mo[1] == 0.0);
  CHECK(mo[3] == doctest::Approx(0.5));
}

TEST_CASE("kernel bound constants match the closed forms for the hilbert kernel") {
  KernelSpec k = hilbert();
  std::mt19937_64 eng(173);
  std::vector<KernelSamplePair> pairs;
  for (int i = 0; i < 500; ++i) {
    double x = 4.0 * unit_double(eng) - 2.0;
    double y = 4.0 * unit_double(eng) - 2.0;
    if (x == y) continue;
    double step = (unit_double(eng) * 0.49) * std::abs(x - y);
    pairs.push_back({{x}, {y}, {x + step}});
  }
  KernelBounds b = kernel_bounds_check(k, pairs);
  CHECK(b.decay_const == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(b.holder_const <= 2.0 / std::numbers::pi + 1e-9);
  CHECK(b.holder_const > 0.0);

  KernelSpec zero;
  zero.kind = KernelKind::diagonal_family;
  zero.components = 1;
  zero.diag = {0.0};
  KernelBounds zb = kernel_bounds_check(zero, pairs);
  CHECK(zb.decay_const == 0.0);
  CHECK(zb.holder_const == 0.0);
}

TEST_CASE("power kernel bounds stay finite in two dimensions") {
  KernelSpec k;
  k.kind = KernelKind::power_truncated;
  k.components = 1;
  std::mt19937_64 eng(179);
  std::vector<KernelSamplePair> pairs;
  for (int i = 0; i < 400; ++i) {
    std::vector<double> x{2 * unit_double(eng) - 1, 2 * unit_double(eng) - 1};
    std::vector<double> y{2 * unit_double(eng) - 1, 2 * unit_double(eng) - 1};
    std::vector<double> xp = x;
    xp[0] += 0.3 * (unit_double(eng) - 0.5) * kernel_metric(x, y);
    xp[1] += 0.3 * (unit_double(eng) - 0.5) * kernel_metric(x, y);
    pairs.push_back({x, y, xp});
  }
  KernelBounds b = kernel_bounds_check(k, pairs);
  CHECK(b.decay_const <= 1.0 + 1e-9);  // |x1-y1| <= |x-y|_inf
  CHECK(std::isfinite(b.holder_const));
}

TEST_CASE("truncated hilbert transform of an indicator matches the antiderivative") {
  GridSpec grid(standard_cube(-1, {0}), 10);  // [0,2), cell side 2^-9
  SampledFunction f = indicator_field(grid, 2.0, Box{{Rational(0)}, {Rational(1)}},
                                      std::vector<double>{1.0});
  SampledFunction tf = apply_cz(hilbert(), f);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    double x = to_double(grid.cell_center(c)[0]);
    if (x < 1.1) continue;
    double expected = std::log(std::abs(x / (x - 1.0))) / std::numbers::pi;
    CHECK(std::abs(tf.values[c] - expected) <= 0.05 * std::abs(expected));
  }
}

TEST_CASE("the transform is odd for odd data") {
  GridSpec grid(standard_cube(-1, {0}), 8);  // [0,2), center 1
  SampledFunction f(grid, 1, 2.0);
  long long n = grid.cell_count();
  std::mt19937_64 eng(181);
  for (long long c = 0; c < n / 2; ++c) {
    double v = unit_double(eng);
    f.values[c] = v;
    f.values[n - 1 - c] = -v;  // odd about x = 1
  }
  SampledFunction tf = apply_cz(hilbert(), f);
  // Odd data and odd kernel: Tf is even about the center (mirror cells agree).
  for (long long c = 0; c < n / 2; ++c)
    CHECK(tf.values[c] == doctest::Approx(tf.values[n - 1 - c]).epsilon(1e-9));
  SampledFunction zero(grid, 1, 2.0);
  SampledFunction tz = apply_cz(hilbert(), zero);
  for (double v : tz.values) CHECK(v == 0.0);
}

TEST_CASE("quadrature is linear and commutes with the composed matrix") {
  GridSpec grid = grid_1d(6);
  std::mt19937_64 eng(191);
  SampledFunction f = random_piecewise_field(grid, 2, 2.0, -1.0, 1.0, eng());
  SampledFunction g = random_piecewise_field(grid, 2, 2.0, -1.0, 1.0, eng());

  KernelSpec m;
  m.kind = KernelKind::matrix_composed;
  m.components = 2;
  m.matrix = {0.6, -0.3, 0.2, 0.5};

  SampledFunction tf = apply_cz(m, f);
  SampledFunction tg = apply_cz(m, g);
  SampledFunction sum = f;
  for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += g.values[i];
  SampledFunction tsum = apply_cz(m, sum);
  for (size_t i = 0; i < tsum.values.size(); ++i)
    CHECK(tsum.values[i] == doctest::Approx(tf.values[i] + tg.values[i]).epsilon(1e-9));

  // T_G f = G (T_scalar f) componentwise.
  KernelSpec scalar;
  scalar.kind = KernelKind::power_truncated;
  scalar.components = 1;
  SampledFunction fx(grid, 1, 2.0), fy(grid, 1, 2.0);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    fx.values[c] = f.cell(c)[0];
    fy.values[c] = f.cell(c)[1];
  }
  SampledFunction tx = apply_cz(scalar, fx), ty = apply_cz(scalar, fy);
  for (long long c = 0; c < grid.cell_count(); ++c) {
    double want0 = 0.6 * tx.values[c] - 0.3 * ty.values[c];
    double want1 = 0.2 * tx.values[c] + 0.5 * ty.values[c];
    CHECK(tf.cell(c)[0] == doctest::Approx(want0).epsilon(1e-12));
    CHECK(tf.cell(c)[1] == doctest::Approx(want1).epsilon(1e-12));
  }
}

TEST_CASE("kernel spec validation") {
  KernelSpec m;
  m.kind = KernelKind::matrix_composed;
  m.components = 2;
  m.matrix = {2.0, 0.0, 0.0, 2.0};  // operator norm 2
  CHECK_THROWS_AS(m.validate(1), invalid_argument_error);
  KernelSpec h = hilbert();
  CHECK_THROWS_AS(h.validate(2), invalid_argument_error);
  h.holder_exponent = 0.0;
  CHECK_THROWS_AS(h.validate(1), invalid_argument_error);
}

TEST_CASE("matrix operator norms") {
  CHECK(matrix_opnorm(std::vector<double>{-3.0}, 1) == doctest::Approx(3.0));
  CHECK(matrix_opnorm(std::vector<double>{1, 0, 0, 1}, 2) == doctest::Approx(1.0));
  // rank-one [1 1; 1 1] has norm 2
  CHECK(matrix_opnorm(std::vector<double>{1, 1, 1, 1}, 2) == doctest::Approx(2.0));
}
