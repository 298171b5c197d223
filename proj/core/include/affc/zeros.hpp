#pragma once

#include <array>
#include <vector>

#include "affc/algebra.hpp"

namespace affc {

// Point of P^2 with first nonzero coordinate equal to 1.
using PPoint = std::array<Scalar, 3>;
PPoint normalize_point(PPoint p);
// Deterministic preference: earlier first nonzero coordinate wins, then
// coordinates compared with zero below every nonzero value.
bool point_less(const PPoint& a, const PPoint& b);
std::string point_str(const PPoint& p);

// Common zeros in P^2 of homogeneous forms in three variables.
struct ZeroSet {
  const Field* field = nullptr;
  bool whole_plane = false;
  // Rational points: the isolated ones and canonical points on components,
  // sorted by point_less.
  std::vector<PPoint> points;
  // One-dimensional part: rational lines, and higher-degree components
  // without rational linear factors.
  std::vector<Poly> lines;
  std::vector<Poly> curves;
  // Univariate polynomials whose roots are coordinates of zeros outside the field.
  std::vector<UPoly> unresolved;
  bool empty() const { return !whole_plane && points.empty() && lines.empty() && curves.empty(); }
};

ZeroSet common_zeros(const std::vector<Poly>& forms);
// Over F_q, passes to extensions until every zero is rational.
ZeroSet common_zeros_split(const std::vector<Poly>& forms);

}  // namespace affc
