#include "affc/planecheck.hpp"

#include "affc/errors.hpp"
#include "reduce.hpp"

namespace affc {

using namespace detail;

namespace {

PlaneVerdict reject(const Field* F, std::string reason, std::string detail) {
  PlaneVerdict v;
  v.field = F;
  v.reason = std::move(reason);
  v.detail = std::move(detail);
  return v;
}

}  // namespace

const char* plane_case_name(PlaneCase c) {
  switch (c) {
    case PlaneCase::A: return "A";
    case PlaneCase::B: return "B";
    case PlaneCase::C: return "C";
    default: return "none";
  }
}

PivotSet pivot_points(const Poly& f) {
  if (f.nvars() != 3) throw DimensionMismatch("pivot points need a polynomial in three variables");
  const Field* F = f.field();
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("pivot points of a constant polynomial");
  if (d > 3) throw DegreeTooHigh("pivot points are defined for degree at most 3");
  PivotSet ps;
  ps.field = F;
  if (d == 1) {
    Scalar z(F), o(F, 1L);
    ps.points = {{o, z, z}};
    return ps;
  }
  Poly top = f.homogeneous_part(d);
  std::vector<Poly> forms = {top, top.derivative(0), top.derivative(1), top.derivative(2)};
  if (d == 3) forms.push_back(f.homogeneous_part(2));
  ZeroSet zs = F->is_rational() ? common_zeros(forms) : common_zeros_split(forms);
  if (zs.points.empty() && !zs.unresolved.empty() && F->is_rational()) {
    const UPoly& u = zs.unresolved[0];
    throw FieldExtensionNeeded(minpoly_str(u), u.degree());
  }
  ps.field = zs.field;
  ps.points = zs.points;
  ps.lines = zs.lines;
  return ps;
}

StandardXpq to_standard_xpq(const Poly& f) {
  PivotSet ps = pivot_points(f);
  if (ps.points.empty()) throw NoPivot("closure of the surface has no admissible point at infinity");
  const Field* F = ps.field;
  const PPoint& v = ps.points[0];
  int i0 = 0;
  while (v[i0].is_zero()) ++i0;
  Mat m(3, Vec(3, Scalar(F)));
  for (int r = 0; r < 3; ++r) m[r][0] = v[r];
  int col = 1;
  for (int j = 0; j < 3; ++j) {
    if (j == i0) continue;
    m[j][col++] = Scalar(F, 1L);
  }
  Vec t(3, Scalar(F));
  Poly g = affine_subst(f.embed(F), m, t);
  if (g.degree_in(X) > 1) throw std::logic_error("pivot change left x-degree above one");
  return {g.coeff_in(X, 1), g.coeff_in(X, 0), AffineMap{m, t}};
}

RussellResult russell_criterion(const Poly& p, const Poly& q) {
  if (p.nvars() != 3 || q.nvars() != 3) throw DimensionMismatch("criterion needs three-variable polynomials");
  if (!only_vars(p, 1u << Y) || p.is_constant()) throw std::invalid_argument("p must be a nonconstant polynomial in y");
  if (!only_vars(q, (1u << Y) | (1u << Z))) throw std::invalid_argument("q must not involve x");
  const Field* F = p.field();
  UPoly rad = radical(to_upoly(p, Y));
  int r = rad.degree();
  Poly pt = from_upoly(rad, 3, Y);
  RussellResult res;
  res.a = Poly(F, 3);
  Poly rem = q;
  for (int dy = rem.degree_in(Y); !rem.is_zero() && dy >= r; dy = rem.degree_in(Y)) {
    Exps e{};
    e[Y] = static_cast<std::uint32_t>(dy - r);
    Poly term = rem.coeff_in(Y, static_cast<unsigned>(dy)) * Poly::monomial(e, Scalar(F, 1L), 3);
    res.a += term;
    rem -= term * pt;
  }
  res.r1 = rem.coeff_in(Z, 1);
  res.r0 = rem.coeff_in(Z, 0);
  if (rem.degree_in(Z) > 1) {
    res.obstruction = "remainder modulo rad(p) has degree " + std::to_string(rem.degree_in(Z)) + " in z";
    return res;
  }
  if (res.r1.is_zero()) {
    res.obstruction = "remainder modulo rad(p) does not involve z";
    return res;
  }
  if (ugcd(to_upoly(res.r1, Y), rad).degree() > 0) {
    res.obstruction = "z-coefficient of the remainder vanishes at a root of p";
    return res;
  }
  res.yes = true;
  return res;
}

PlaneVerdict is_plane_deg3(const Poly& f) {
  if (f.nvars() != 3) throw DimensionMismatch("plane check needs a polynomial in three variables");
  const Field* F = f.field();
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("plane check of a constant polynomial");
  if (d > 3) {
    Poly p = f.coeff_in(X, 1), q = f.coeff_in(X, 0);
    if (f.degree_in(X) == 1 && only_vars(p, 1u << Y) && !p.is_constant()) {
      RussellResult rr = russell_criterion(p, q);
      if (!rr.yes) return reject(F, "fibre-criterion", rr.obstruction);
    }
    throw DegreeTooHigh("plane check is decided for degree at most 3");
  }
  if (!irreducible_small(f)) return reject(F, "reducible", "polynomial factors over its coefficient field");

  Work w{F, f, AffineMap::identity(F, 3), {}};
  PlaneCase kase;
  try {
    if (d == 1) {
      int i = 0;
      while (coef(f, i == 0, i == 1, i == 2).is_zero()) ++i;
      if (i != X) w.sub({w.v(i), i == Y ? w.v(X) : w.v(Y), i == Z ? w.v(X) : w.v(Z)});
      kase = finish_a(w);
    } else {
      StandardXpq sx;
      try {
        sx = to_standard_xpq(f);
      } catch (const NoPivot&) {
        return reject(F, d == 2 ? "smooth-conic-at-infinity" : "no-pivot",
                      d == 2 ? "conic at infinity is smooth"
                             : "no point at infinity of multiplicity at least two on the closure");
      }
      const Field* G = sx.witness.field();
      w = Work{G, sx.p * Poly::var(G, 3, X) + sx.q, sx.witness, {}};
      kase = reduce(w);
    }
  } catch (const Rejected& r) {
    return reject(w.F, r.reason, r.detail);
  }
  if (affine_subst(f.embed(w.F), w.W.A, w.W.t) != w.g)
    throw WitnessFailure("plane witness does not reproduce the normal form");
  PlaneVerdict v;
  v.is_plane = true;
  v.kase = kase;
  v.field = w.F;
  v.normal_form = w.g;
  v.witness = w.W;
  return v;
}

VariableWitness variable_witness(const Poly& f) {
  VariableWitness out;
  out.verdict = is_plane_deg3(f);
  const PlaneVerdict& v = out.verdict;
  if (!v.is_plane) throw std::invalid_argument("not a plane: " + v.reason);
  const Field* F = v.field;
  Poly x = Poly::var(F, 3, X), y = Poly::var(F, 3, Y), z = Poly::var(F, 3, Z);
  const Poly& N = v.normal_form;
  AffineMap winv = invert_affine(v.witness);
  PolyMap wmap = v.witness.to_polymap(), winv_map = winv.to_polymap();
  PolyMap id = PolyMap::identity(F, 3);
  auto tri = [&](Poly a, Poly b, Poly c) { return TriangularMap::from_polymap(PolyMap({a, b, c})); };

  if (v.kase == PlaneCase::A || v.kase == PlaneCase::B) {
    TameWord word;
    if (v.kase == PlaneCase::A) {
      word.letters.push_back(triangular_letter(tri(N, y, z)));
    } else {
      Poly r2 = *divide_exact(N - x * y - z, y);
      AffineMap sigma = AffineMap::permutation(F, {2, 0, 1});
      AffineMap pi = AffineMap::permutation(F, {2, 1, 0});
      word.letters.push_back(affine_letter(affine_compose(sigma, pi)));
      word.letters.push_back(triangular_letter(tri(x + y * z, y, z)));
      word.letters.push_back(affine_letter(pi));
      word.letters.push_back(triangular_letter(tri(x + r2, y, z)));
    }
    word.letters.push_back(affine_letter(winv));
    out.map = eval_tame_word(word);
    out.inverse = eval_tame_word(invert_word(word));
    out.word = std::move(word);
  } else {
    // N = x*y^2 + y*s(z) + z with s monic quadratic; h is chosen so that
    // z - (N - y*s(N)) = y^2*h, which makes (N, y, h) invertible.
    Poly s = *divide_exact(N - x * y * y - z, y);
    Scalar a = coef(s, 0, 0, 1);
    auto s_of = [&](const Poly& t) { return s.subst({x, y, t}); };
    Poly h = -x + (x * y + s) * (N + z + Poly::constant(a, 3));
    PolyMap phi({N, y, h});
    Poly zz = x - y * s_of(x) + y * y * z;
    Poly xx = (s_of(x) - y * z) * (x + zz + Poly::constant(a, 3)) - z;
    PolyMap phi_inv({xx, y, zz});
    out.map = compose(phi, winv_map);
    out.inverse = compose(wmap, phi_inv);
  }
  if (compose(out.map, out.inverse) != id || compose(out.inverse, out.map) != id)
    throw WitnessFailure("completed automorphism failed to invert");
  if (out.map[0] != f.embed(F)) throw WitnessFailure("completed automorphism lost its first component");
  return out;
}

}  // namespace affc
