#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affc/classify.hpp"

namespace affc {

// inf{theta >= 0 : deg_mu(f_i) <= theta*mu_i for all i}; nullopt is +infinity,
// which only happens when some mu_i = 0. Weights must be non-negative.
std::optional<QuadNum> mu_degree_of_map(const PolyMap& f, const WeightVector& mu);
// Component i is the mu-homogeneous part of f_i of degree theta*mu_i.
PolyMap mu_leading_part_of_map(const PolyMap& f, const WeightVector& mu);

struct DynDegCertificate {
  enum class Evidence { MonomialMap, DominantLeadingPart, BoundedIteration };
  WeightVector mu;
  QuadNum theta;
  PolyMap leading_part;
  Evidence evidence = Evidence::BoundedIteration;
  // MonomialMap: row i is the exponent vector of component i.
  std::vector<std::vector<int>> exponent_matrix;
  // DominantLeadingPart: variables of a coordinate projection pi with
  // pi o g = h o pi and h dominant (all variables when g itself is dominant).
  std::vector<int> projection;
  int iterations_checked = 0;
  // Monomial and dominance evidence prove g^r != 0 for every r.
  bool proven() const { return evidence != Evidence::BoundedIteration; }
};
const char* evidence_name(DynDegCertificate::Evidence e);

struct CertifyResult {
  std::optional<DynDegCertificate> certificate;
  std::string reason;  // why certification failed
};
inline constexpr int kDefaultCertifyIterations = 25;
// Checks theta = deg_mu(f) > 1 and that the mu-leading part never iterates to
// zero. Dominance is only used in characteristic 0.
CertifyResult certify(const PolyMap& f, const WeightVector& mu, int r_max = kDefaultCertifyIterations);

// (a + sqrt(a^2 + 4bc))/2, the dynamical degree of (z + x^a*y^b, y + x^c, x).
QuadNum lambda_shift(unsigned a, unsigned b, unsigned c);
PolyMap shift_map(const Field* F, unsigned a, unsigned b, unsigned c);

struct Estimate {
  std::vector<int> degrees;      // exact deg f^r for r = 1, 2, ...
  // Iterates computed by full expansion; later degrees are certified by a
  // line-restriction lower bound meeting a cancellation-free upper bound.
  int expanded = 0;
  RationalInterval fekete;       // encloses min_r deg(f^r)^(1/r); hi is an upper bound for lambda
  int fekete_r = 1;              // the r attaining the minimum
  mpq_class ratio;               // deg f^R / deg f^(R-1), R the last iterate
};
Estimate estimate_from_degrees(const std::vector<int>& degrees);
// Throws BudgetExceeded carrying the exact degrees obtained so far when the
// budget stops expansion and the degree bracket does not close.
Estimate estimate(const PolyMap& f, int r_max, std::size_t term_budget = kDefaultTermBudget);

struct LambdaValue {
  enum class Provenance { Certificate, ClosedFormula, DecisionTree, UpperBoundOnly };
  QuadNum value;  // for UpperBoundOnly the rational upper end of the Fekete bound
  Provenance provenance = Provenance::UpperBoundOnly;
  std::string tag;  // decision-tree case, or "(a,b,c)" for the closed formula
  PolyMap analysed;  // the conjugate of f the conclusion was read from
  std::optional<DynDegCertificate> certificate;
  std::optional<Estimate> bounds;
};
const char* provenance_name(LambdaValue::Provenance p);

// Dynamical degree of an automorphism of A^3 of degree <= 3.
LambdaValue lambda_deg3(const PolyMap& f, int r_max = 10);

struct LambdaEntry {
  QuadNum value;
  PolyMap representative;
  std::string source;
};
// Dynamical degrees of automorphisms of A^3 of degree d in {1, 2, 3},
// ascending, each with an automorphism realizing it.
std::vector<LambdaEntry> enumerate_lambda_set(int d, const Field* F);

}  // namespace affc
