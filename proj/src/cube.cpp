#include "sparsedom/cube.hpp"

#include <algorithm>

namespace sparsedom {

namespace {

int sign_pm(int level) { return (level % 2 == 0) ? 1 : -1; }  // (-1)^level

// 3*u is an integer for u in {0, 1/3, 2/3}; this is what makes the
// translated systems nested across levels.
long long three_times(const Rational& u) {
  Rational t = u * 3;
  if (t.denominator() != 1)
    throw invalid_argument_error("dyadic translation must be a multiple of 1/3");
  return t.numerator();
}

long long floor_div2(long long a) { return a >= 0 ? a / 2 : (a - 1) / 2; }

}  // namespace

Rational Box::measure() const {
  Rational out(1);
  for (int i = 0; i < dim(); ++i) {
    Rational s = side(i);
    if (s <= 0) return Rational(0);
    out *= s;
  }
  return out;
}

bool Box::contains_point(const std::vector<Rational>& x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo[i] || x[i] >= hi[i]) return false;
  return true;
}

bool Box::contains(const Box& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.lo[i] < lo[i] || other.hi[i] > hi[i]) return false;
  return true;
}

Box intersect(const Box& a, const Box& b) {
  Box out;
  out.lo.resize(a.dim());
  out.hi.resize(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    out.lo[i] = std::max(a.lo[i], b.lo[i]);
    out.hi[i] = std::min(a.hi[i], b.hi[i]);
  }
  return out;
}

Rational overlap_measure(const Box& a, const Box& b) { return intersect(a, b).measure(); }

Box dilate(const Box& b, int k) {
  if (k < 0) throw invalid_argument_error("dilate: factor exponent must be nonnegative");
  Box out;
  out.lo.resize(b.dim());
  out.hi.resize(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    Rational center = (b.lo[i] + b.hi[i]) / 2;
    Rational half = (b.hi[i] - b.lo[i]) * pow2_rational(k) / 2;
    out.lo[i] = center - half;
    out.hi[i] = center + half;
  }
  return out;
}

DyadicCube::DyadicCube(std::vector<Rational> translation_, int level_, std::vector<long long> pos_)
    : translation(std::move(translation_)), level(level_), pos(std::move(pos_)) {
  if (translation.size() != pos.size())
    throw invalid_argument_error("DyadicCube: translation/pos dimension mismatch");
  for (const Rational& u : translation)
    if (u != Rational(0) && u != Rational(1, 3) && u != Rational(2, 3))
      throw invalid_argument_error("DyadicCube: translation entries must lie in {0, 1/3, 2/3}");
}

bool DyadicCube::standard() const {
  return std::all_of(translation.begin(), translation.end(),
                     [](const Rational& u) { return u == Rational(0); });
}

Rational DyadicCube::lower(int i) const {
  return pow2_rational(-level) * (Rational(pos[i]) + Rational(sign_pm(level)) * translation[i]);
}

Rational DyadicCube::measure() const { return rational_pow(side(), dim()); }

Box DyadicCube::box() const {
  Box out;
  out.lo.resize(dim());
  out.hi.resize(dim());
  Rational s = side();
  for (int i = 0; i < dim(); ++i) {
    out.lo[i] = lower(i);
    out.hi[i] = out.lo[i] + s;
  }
  return out;
}

DyadicCube standard_cube(int level, std::vector<long long> pos) {
  std::vector<Rational> u(pos.size(), Rational(0));
  return DyadicCube(std::move(u), level, std::move(pos));
}

bool cube_less(const DyadicCube& a, const DyadicCube& b) {
  if (a.level != b.level) return a.level < b.level;
  if (a.pos != b.pos) return a.pos < b.pos;
  return std::lexicographical_compare(a.translation.begin(), a.translation.end(),
                                      b.translation.begin(), b.translation.end());
}

DyadicCube child(const DyadicCube& q, unsigned index) {
  int d = q.dim();
  if (index >= (1u << d)) throw invalid_argument_error("child: index out of range");
  DyadicCube out = q;
  out.level = q.level + 1;
  // A child position m_c satisfies floor((m_c + s)/2) = m with s = 3*(-1)^{child level}*u.
  for (int i = 0; i < d; ++i) {
    long long s = sign_pm(out.level) * three_times(q.translation[i]);
    long long bit = (index >> (d - 1 - i)) & 1u;
    out.pos[i] = 2 * q.pos[i] - s + bit;
  }
  return out;
}

std::vector<DyadicCube> children(const DyadicCube& q) {
  std::vector<DyadicCube> out;
  out.reserve(1u << q.dim());
  for (unsigned idx = 0; idx < (1u << q.dim()); ++idx) out.push_back(child(q, idx));
  return out;
}

DyadicCube parent(const DyadicCube& q) {
  DyadicCube out = q;
  out.level = q.level - 1;
  for (int i = 0; i < q.dim(); ++i) {
    long long s = sign_pm(q.level) * three_times(q.translation[i]);
    out.pos[i] = floor_div2(q.pos[i] + s);
  }
  return out;
}

DyadicCube ancestor(const DyadicCube& q, int k) {
  if (k < 0) throw invalid_argument_error("ancestor: negative step");
  DyadicCube out = q;
  for (int i = 0; i < k; ++i) out = parent(out);
  return out;
}

DyadicCube locate(const std::vector<Rational>& translation, int level,
                  const std::vector<Rational>& x) {
  std::vector<long long> pos(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    pos[i] = floor_rational(x[i] * pow2_rational(level) -
                            Rational(sign_pm(level)) * translation[i]);
  return DyadicCube(translation, level, std::move(pos));
}

DyadicCube shifted_cover(const DyadicCube& q, int k) {
  if (!q.standard()) throw invalid_argument_error("shifted_cover: base cube must be standard");
  if (k < 0) throw invalid_argument_error("shifted_cover: negative complexity");
  int d = q.dim();
  const Box qbox = q.box();
  const Box target = dilate(qbox, k);
  std::vector<Rational> corner(d);
  for (int i = 0; i < d; ++i) corner[i] = qbox.lo[i];

  static const Rational kOffsets[3] = {Rational(0), Rational(1, 3), Rational(2, 3)};
  std::vector<Rational> u(d, Rational(0));
  long long combos = 1;
  for (int i = 0; i < d; ++i) combos *= 3;
  // Translations in lexicographic order; at a fixed level each grid holds a
  // unique cube containing q's lower corner, so that cube is the only candidate.
  for (long long c = 0; c < combos; ++c) {
    long long rem = c;
    for (int i = d - 1; i >= 0; --i) {
      u[i] = kOffsets[rem % 3];
      rem /= 3;
    }
    DyadicCube r = locate(u, q.level - 2, corner);
    if (!r.box().contains(qbox)) continue;
    if (!ancestor(r, k).box().contains(target)) continue;
    return r;
  }
  throw invariant_error("shifted_cover: no candidate found (should be impossible)");
}

}  // namespace sparsedom
