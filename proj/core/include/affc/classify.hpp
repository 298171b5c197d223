#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affc/planecheck.hpp"

namespace affc {

// Families of normal forms, by number of components n:
//   n = 1:  1  x + r2(y,z) + r3(y,z)
//           2  x*y + y*r2(y,z) + z,                 r2 not in k[y]
//           3  x*y^2 + y*(z^2 + a*z + b) + z
//   n = 2:  4  (x + p2 + p3, y + q2*z^2 + q3*z^3)
//           5  (y*z + z*a2(x,z) + x, y + a2(x,z) + r1*z + r2*z^2 + r3*z^3)
//           6  (y*z + z*a2(x,z) + x, z)
//           7  (x*y^2 + y*(z^2 + a*z + b) + z, y)
//           8  (x + z^2 + y^3, y + x^2),            characteristic 2
//           9  (x + z^2 + y^3, z + x^3),            characteristic 3
//   n = 3: 10  (x + p2 + p3, y + q2*z^2 + q3*z^3, z)
//          11  (y*z + z*a2(x,z) + x, y + a2(x,z) + r2*z^2 + r3*z^3, z)
// p_i, r_i in k[y,z] and a2 in k[x,z] homogeneous of the indicated degree,
// a2 not in k[z]; a, b, q_i, r_i scalars where they multiply powers of z.
struct ClassOutcome {
  int family = 0;
  const Field* field = nullptr;  // may extend the input's field over F_q
  PolyMap normal_form;
  AffineMap alpha;  // target, n-dimensional
  AffineMap beta;   // source, 3-dimensional
  std::vector<std::pair<std::string, Poly>> parameters;
};

// Evidence that a map is not a linear system of affine spaces.
//   "linear-parts":  the combination has no linear part, so its zero set is
//                    singular at the origin (or the combination is constant);
//   "jacobian":      datum is the Jacobian determinant, not a nonzero constant;
//   "hyperplane":    {datum = 0} is not isomorphic to A^2, datum =
//                    sum combination[i]*f_i - level;
//   "unconfirmed":   the reduction failed but no evidence was found.
struct RejectionReason {
  std::string stage;
  std::string detail;
  std::vector<Scalar> combination;
  Scalar level;
  Poly datum;
  std::string plane_reason;
};

struct Classification {
  bool accepted = false;
  ClassOutcome outcome;
  RejectionReason rejection;
};

// Top-degree analysis of a span V of forms of degree d in x, y, z.
struct SpanAnalysis {
  enum class Kind { CommonFactor, TwoVariableHull, PowerSpace, None };
  Kind kind = Kind::None;
  const Field* field = nullptr;
  std::optional<Poly> common_factor;           // product of common linear factors
  std::optional<std::pair<Poly, Poly>> hull;   // V inside k[s,t]
  bool power_space = false;                    // V = <x^d, y^d, z^d>, d = char k
  std::optional<Poly> conic_factor;            // smooth conic dividing an element of V
};
SpanAnalysis linear_span_analysis(const std::vector<Poly>& V, int d);
const char* span_kind_name(SpanAnalysis::Kind k);

// f = alpha o g o beta with every g_i of degree <= 1 in x, or one of the two
// exceptional normal forms, or a rejection.
struct StandardFormResult {
  enum class Kind { Standard, Exceptional8, Exceptional9, Reject };
  Kind kind = Kind::Reject;
  const Field* field = nullptr;
  PolyMap g;
  AffineMap alpha, beta;
  RejectionReason rejection;
};
StandardFormResult standard_form_reduce(const PolyMap& f);

Classification classify_system(const PolyMap& f);

// Reads a normal form against the family's template; nullopt if it does not
// match, including side conditions.
std::optional<std::vector<std::pair<std::string, Poly>>> family_parameters(int family,
                                                                           const PolyMap& N);

// Independent re-check of rejection evidence with the plane checker or the
// Jacobian determinant.
bool confirm_rejection(const PolyMap& f, const RejectionReason& r);

// Family of an accepted map from invariants alone (no witnesses).
int family_distinguisher(const PolyMap& f);

// Points v in P^2 such that every form F in `forms` satisfies F(X + v) = F(X).
ZeroSet cone_vertices(const std::vector<Poly>& forms);
// Whether the cubic or quadratic form has an irreducible conic factor over the
// algebraic closure.
bool has_conic_factor(const Poly& form);

// Affine and triangular letters whose composition is f; f must be an
// automorphism of degree <= 3.
TameWord tame_decompose(const PolyMap& f);
PolyMap invert_deg3_automorphism(const PolyMap& f);

}  // namespace affc
