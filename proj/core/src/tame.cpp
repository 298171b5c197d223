#include "affc/classify.hpp"
#include "affc/errors.hpp"

namespace affc {

namespace {

bool is_identity(const TameLetter& l) {
  PolyMap m = l.as_map();
  return m == PolyMap::identity(m.field(), m.target_dim());
}

// T = E_n o ... o E_1 where E_i changes component i only.
std::vector<TameLetter> elementary_split(const TriangularMap& t) {
  const Field* F = t.c[0].field();
  int n = static_cast<int>(t.c.size());
  std::vector<TameLetter> out;
  for (int i = n - 1; i >= 0; --i) {
    TriangularMap e;
    for (int j = 0; j < n; ++j) {
      e.c.push_back(j == i ? t.c[j] : Scalar(F, 1L));
      e.tail.push_back(j == i ? t.tail[j] : Poly(F, n));
    }
    out.push_back(triangular_letter(e));
  }
  return out;
}

TameWord simplify(const std::vector<TameLetter>& letters) {
  TameWord w;
  for (const auto& l : letters) {
    if (is_identity(l)) continue;
    if (l.kind == TameLetter::Kind::Affine && !w.letters.empty() &&
        w.letters.back().kind == TameLetter::Kind::Affine) {
      w.letters.back().affine = affine_compose(w.letters.back().affine, l.affine);
      if (is_identity(w.letters.back())) w.letters.pop_back();
      continue;
    }
    w.letters.push_back(l);
  }
  return w;
}

Poly param(const ClassOutcome& o, const std::string& name) {
  for (const auto& [k, v] : o.parameters)
    if (k == name) return v;
  throw WitnessFailure("missing family parameter " + name);
}

}  // namespace

TameWord tame_decompose(const PolyMap& f) {
  if (f.source_dim() != 3 || f.target_dim() != 3) throw DimensionMismatch("automorphisms of A^3 expected");
  if (f.degree() > 3) throw DegreeTooHigh("decomposition covers degree at most 3");
  if (is_affine(f)) {
    AffineMap a = AffineMap::from_polymap(f);
    if (mat_det(a.A).is_zero()) throw NotInvertible("affine map with singular linear part");
    TameWord w;
    w.letters.push_back(affine_letter(a));
    return w;
  }
  Classification c = classify_system(f);
  if (!c.accepted) throw NotInvertible("not an automorphism: " + c.rejection.stage + " (" + c.rejection.detail + ")");
  const ClassOutcome& o = c.outcome;
  const Field* G = o.field;
  std::vector<TameLetter> letters = {affine_letter(o.alpha)};
  if (o.family == 10) {
    for (auto& l : elementary_split(TriangularMap::from_polymap(o.normal_form))) letters.push_back(l);
  } else if (o.family == 11) {
    Poly x = Poly::var(G, 3, 0), y = Poly::var(G, 3, 1), z = Poly::var(G, 3, 2);
    Poly a2 = param(o, "a2");
    Poly r = param(o, "r2") * z.pow(2) + param(o, "r3") * z.pow(3);
    AffineMap iota = AffineMap::permutation(G, {1, 0, 2});
    letters.push_back(triangular_letter(TriangularMap::from_polymap(PolyMap({x + y * z, y + r, z}))));
    letters.push_back(affine_letter(iota));
    letters.push_back(triangular_letter(TriangularMap::from_polymap(PolyMap({x + a2.subst({y, y, z}), y, z}))));
    letters.push_back(affine_letter(iota));
  } else {
    throw WitnessFailure("three-component system outside families 10 and 11");
  }
  letters.push_back(affine_letter(o.beta));
  TameWord w = simplify(letters);
  if (w.letters.empty()) w.letters.push_back(affine_letter(AffineMap::identity(G, 3)));
  if (eval_tame_word(w) != f.embed(G)) throw WitnessFailure("tame word does not evaluate to the input");
  return w;
}

PolyMap invert_deg3_automorphism(const PolyMap& f) {
  if (f.degree() > 3) throw DegreeTooHigh("inversion covers degree at most 3");
  TameWord w = tame_decompose(f);
  PolyMap inv = eval_tame_word(invert_word(w));
  const Field* G = inv.field();
  PolyMap g = f.embed(G), id = PolyMap::identity(G, 3);
  if (compose(g, inv) != id || compose(inv, g) != id) throw WitnessFailure("inverse failed to compose to the identity");
  return inv;
}

}  // namespace affc
