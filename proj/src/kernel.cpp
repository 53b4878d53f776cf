#include "sparsedom/kernel.hpp"

#include <cmath>
#include <numbers>

#include "sparsedom/parallel.hpp"

namespace sparsedom {

namespace {

// Odd scalar kernel with decay 1/r^d and Lipschitz angular part; reduces to
// 1/(x - y) in one dimension.
double scalar_power_kernel(std::span<const double> x, std::span<const double> y) {
  double r = kernel_metric(x, y);
  double s = x[0] - y[0];
  return s / std::pow(r, static_cast<double>(x.size()) + 1.0);
}

}  // namespace

void KernelSpec::validate(int dim) const {
  if (!(holder_exponent > 0.0) || holder_exponent > 1.0)
    throw invalid_argument_error("KernelSpec: Holder exponent must lie in (0, 1]");
  if (components < 1) throw invalid_argument_error("KernelSpec: components must be >= 1");
  switch (kind) {
    case KernelKind::hilbert_truncated:
      if (dim != 1 || components != 1)
        throw invalid_argument_error("KernelSpec: hilbert kernel requires d = 1, n = 1");
      break;
    case KernelKind::power_truncated:
      if (components != 1)
        throw invalid_argument_error("KernelSpec: power kernel is scalar");
      break;
    case KernelKind::matrix_composed: {
      if (matrix.size() != static_cast<size_t>(components) * components)
        throw invalid_argument_error("KernelSpec: matrix size must be n*n");
      if (matrix_opnorm(matrix, components) > 1.0 + 1e-12)
        throw invalid_argument_error("KernelSpec: matrix operator norm must be <= 1");
      break;
    }
    case KernelKind::diagonal_family:
      if (diag.size() != static_cast<size_t>(components))
        throw invalid_argument_error("KernelSpec: diag size must be n");
      for (double v : diag)
        if (std::abs(v) > 1.0 + 1e-12)
          throw invalid_argument_error("KernelSpec: diag multipliers must lie in [-1, 1]");
      break;
  }
}

double kernel_metric(std::span<const double> x, std::span<const double> y) {
  if (x.size() == 1) return std::abs(x[0] - y[0]);
  double m = 0.0;
  for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

void kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y,
                 std::span<double> out) {
  int n = spec.components;
  std::fill(out.begin(), out.end(), 0.0);
  double r = kernel_metric(x, y);
  if (r < spec.truncation || r == 0.0) return;
  switch (spec.kind) {
    case KernelKind::hilbert_truncated:
      out[0] = 1.0 / (std::numbers::pi * (x[0] - y[0]));
      return;
    case KernelKind::power_truncated:
      out[0] = scalar_power_kernel(x, y);
      return;
    case KernelKind::matrix_composed: {
      double s = scalar_power_kernel(x, y);
      for (int i = 0; i < n * n; ++i) out[i] = s * spec.matrix[i];
      return;
    }
    case KernelKind::diagonal_family: {
      double s = scalar_power_kernel(x, y);
      for (int i = 0; i < n; ++i) out[i * n + i] = s * spec.diag[i];
      return;
    }
  }
}

double matrix_opnorm(std::span<const double> m, int n) {
  if (n == 1) return std::abs(m[0]);
  // Power iteration on M^T M; deterministic start.
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), mv(n), mtmv(n);
  double lambda = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    for (int i = 0; i < n; ++i) {
      mv[i] = 0.0;
      for (int j = 0; j < n; ++j) mv[i] += m[i * n + j] * v[j];
    }
    for (int j = 0; j < n; ++j) {
      mtmv[j] = 0.0;
      for (int i = 0; i < n; ++i) mtmv[j] += m[i * n + j] * mv[i];
    }
    double norm = 0.0;
    for (int j = 0; j < n; ++j) norm += mtmv[j] * mtmv[j];
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    lambda = norm;
    for (int j = 0; j < n; ++j) v[j] = mtmv[j] / norm;
  }
  return std::sqrt(lambda);
}

KernelBounds kernel_bounds_check(const KernelSpec& spec,
                                 std::span<const KernelSamplePair> pairs) {
  KernelBounds bounds;
  if (pairs.empty()) return bounds;
  int n = spec.components;
  int d = static_cast<int>(pairs.front().x.size());
  spec.validate(d);
  std::vector<double> kxy(n * n), kxpy(n * n), diff(n * n);
  for (const KernelSamplePair& p : pairs) {
    double r = kernel_metric(p.x, p.y);
    if (r < spec.truncation || r == 0.0) continue;
    kernel_eval(spec, p.x, p.y, kxy);
    bounds.decay_const =
        std::max(bounds.decay_const, matrix_opnorm(kxy, n) * std::pow(r, d));
    if (p.x_near.empty()) continue;
    double dr = kernel_metric(p.x, p.x_near);
    if (dr == 0.0 || dr >= r / 2) continue;
    kernel_eval(spec, p.x_near, p.y, kxpy);
    for (int i = 0; i < n * n; ++i) diff[i] = kxy[i] - kxpy[i];
    bounds.holder_const =
        std::max(bounds.holder_const, matrix_opnorm(diff, n) * std::pow(r, d) *
                                          std::pow(r / dr, spec.holder_exponent));
  }
  return bounds;
}

SampledFunction apply_cz(const KernelSpec& spec, const SampledFunction& f) {
  const GridSpec& grid = f.grid;
  spec.validate(grid.dim());
  if (spec.components != f.components)
    throw invalid_argument_error("apply_cz: kernel/field component mismatch");
  KernelSpec resolved = spec;
  // Slack keeps neighbouring cells (distance exactly one cell side) inside
  // the quadrature despite rounding of the centers.
  if (resolved.truncation <= 0.0) resolved.truncation = to_double(grid.cell_side()) * (1.0 - 1e-9);

  long long cells = grid.cell_count();
  int n = f.components;
  int d = grid.dim();
  double cellvol = to_double(grid.cell_measure());
  std::vector<std::vector<double>> centers(cells);
  for (long long c = 0; c < cells; ++c) {
    std::vector<Rational> x = grid.cell_center(c);
    centers[c].resize(d);
    for (int i = 0; i < d; ++i) centers[c][i] = to_double(x[i]);
  }

  SampledFunction out(grid, n, f.norm_exponent);
  parallel_for(cells, [&](long long begin, long long end) {
    std::vector<double> k(n * n), acc(n);
    for (long long c = begin; c < end; ++c) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (long long src = 0; src < cells; ++src) {
        if (src == c) continue;  // principal-value convention for odd kernels
        kernel_eval(resolved, centers[c], centers[src], k);
        std::span<const double> fv = f.cell(src);
        for (int i = 0; i < n; ++i) {
          double row = 0.0;
          for (int j = 0; j < n; ++j) row += k[i * n + j] * fv[j];
          acc[i] += row;
        }
      }
      std::span<double> ov = out.cell(c);
      for (int i = 0; i < n; ++i) ov[i] = acc[i] * cellvol;
    }
  });
  return out;
}

}  // namespace sparsedom
