#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affc/polymap.hpp"
#include "affc/zeros.hpp"

namespace affc {

// Points at infinity where the closure of {f = 0} has multiplicity >= deg f - 1
// (for deg f = 2: singular points of the conic at infinity). `field` is the
// field the points live in; over F_q it may be an extension of f's field.
struct PivotSet {
  const Field* field = nullptr;
  std::vector<PPoint> points;  // sorted, first one is the preferred pivot
  std::vector<Poly> lines;     // one-dimensional components, if any
};
PivotSet pivot_points(const Poly& f);

// f o witness = x*p(y,z) + q(y,z) with the preferred pivot sent to [1:0:0].
struct StandardXpq {
  Poly p, q;
  AffineMap witness;
};
StandardXpq to_standard_xpq(const Poly& f);

// For p in k[y] \ k and q in k[y,z]: whether {x*p + q = 0} is a plane, with
// q = a*rad(p) + z*r1 + r0, deg_y r_i < deg rad(p), gcd(r1, rad(p)) = 1.
struct RussellResult {
  bool yes = false;
  Poly a, r1, r0;
  std::string obstruction;
};
RussellResult russell_criterion(const Poly& p, const Poly& q);

// Normal forms:
//   A: x + r2(y,z) + r3(y,z), r_i homogeneous of degree i
//   B: x*y + y*r2(y,z) + z,   r2 homogeneous quadratic not in k[y]
//   C: x*y^2 + y*(z^2 + a*z + b) + z
enum class PlaneCase { None, A, B, C };
const char* plane_case_name(PlaneCase c);

struct PlaneVerdict {
  bool is_plane = false;
  PlaneCase kase = PlaneCase::None;
  const Field* field = nullptr;
  Poly normal_form;    // f o witness, exactly
  AffineMap witness;
  std::string reason;  // stable tag when rejected
  std::string detail;
};
// Decides whether {f = 0} in A^3 is isomorphic to A^2, for deg f <= 3 (and
// for higher degree when f is already x*p(y) + q(y,z) and is rejected).
PlaneVerdict is_plane_deg3(const Poly& f);

// Automorphism of A^3 whose first component is f. `word` is present when the
// automorphism is produced as a composition of affine and triangular maps.
struct VariableWitness {
  PlaneVerdict verdict;
  PolyMap map;
  PolyMap inverse;
  std::optional<TameWord> word;
};
VariableWitness variable_witness(const Poly& f);

}  // namespace affc
