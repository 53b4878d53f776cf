#pragma once

#include <vector>

#include "sparsedom/rational.hpp"

namespace sparsedom {

// Half-open axis-aligned box with exact rational corners.
struct Box {
  std::vector<Rational> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  Rational side(int i) const { return hi[i] - lo[i]; }
  Rational measure() const;
  bool contains_point(const std::vector<Rational>& x) const;
  bool contains(const Box& other) const;  // other subseteq this
  bool operator==(const Box&) const = default;
};

Box intersect(const Box& a, const Box& b);
Rational overlap_measure(const Box& a, const Box& b);

// Same center, side scaled by 2^k.  k >= 0.
Box dilate(const Box& b, int k);

// The cube 2^{-level}([0,1)^d + pos + (-1)^level * translation) of the
// translated dyadic system D^u, translation entries in {0, 1/3, 2/3}.
struct DyadicCube {
  std::vector<Rational> translation;
  int level = 0;
  std::vector<long long> pos;

  DyadicCube() = default;
  DyadicCube(std::vector<Rational> translation_, int level_, std::vector<long long> pos_);

  int dim() const { return static_cast<int>(pos.size()); }
  bool standard() const;  // translation == 0
  Rational side() const { return pow2_rational(-level); }
  Rational lower(int i) const;
  Rational measure() const;
  Box box() const;
  bool operator==(const DyadicCube&) const = default;
};

DyadicCube standard_cube(int level, std::vector<long long> pos);

// Deterministic ordering: by level, then pos lexicographically, then translation.
bool cube_less(const DyadicCube& a, const DyadicCube& b);

// Child index bits: coordinate 0 is the most significant bit.
DyadicCube child(const DyadicCube& q, unsigned index);
std::vector<DyadicCube> children(const DyadicCube& q);
DyadicCube parent(const DyadicCube& q);
DyadicCube ancestor(const DyadicCube& q, int k);

// The unique cube of D^translation at `level` containing the point x.
DyadicCube locate(const std::vector<Rational>& translation, int level,
                  const std::vector<Rational>& x);

// A dyadic cube R of side exactly 4*side(q), in one of the 3^d translated
// systems, with q subseteq R and dilate(q, k) subseteq ancestor(R, k).
// Tie-break: lexicographically smallest translation, then smallest position.
DyadicCube shifted_cover(const DyadicCube& q, int k);

}  // namespace sparsedom
