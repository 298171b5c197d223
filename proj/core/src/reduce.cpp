#include "reduce.hpp"

#include "affc/errors.hpp"

namespace affc::detail {

void Work::sub(const std::vector<Poly>& img) {
  g = g.subst(img);
  for (auto& o : others) o = o.subst(img);
  W = affine_compose(W, AffineMap::from_polymap(PolyMap(img)));
}

Scalar coef(const Poly& p, std::uint32_t ex, std::uint32_t ey, std::uint32_t ez) {
  Exps e{};
  e[0] = ex;
  e[1] = ey;
  e[2] = ez;
  return p.coeff(e);
}

bool only_vars(const Poly& p, unsigned mask) { return (p.support() & ~mask) == 0; }

// New z becomes the linear form vanishing at (y, z) = (r.a, r.b).
void line_to_z(Work& w, const ProjRoot& r) {
  if (r.b.is_zero()) return;
  w.sub({w.v(X), w.v(Y).scaled(r.a) + w.v(Z), w.v(Y)});
}

// New y becomes the linear form l = alpha*y + beta*z.
void line_to_y(Work& w, const Poly& l) {
  Scalar al = coef(l, 0, 1, 0), be = coef(l, 0, 0, 1);
  if (!al.is_zero())
    w.sub({w.v(X), (w.v(Y) - w.v(Z).scaled(be)).scaled(al.inverse()), w.v(Z)});
  else
    w.sub({w.v(X), w.v(Z), w.v(Y).scaled(be.inverse())});
}

// Cosmetic normalization of x + r2 for degree two: x + y^2 or x + y*z when
// the roots of r2 and the needed square root are in the field.
static void normalize_quadratic(Work& w) {
  Poly r2 = w.g.homogeneous_part(2);
  auto rts = rational_binary_roots(r2, Y, Z);
  if (rts.residual.degree() > 0) return;
  if (rts.roots.size() == 1) {
    const auto& r = rts.roots[0];
    line_to_y(w, w.v(Y).scaled(r.b) - w.v(Z).scaled(r.a));
    Scalar cy = coef(w.g, 0, 2, 0);
    auto sq = nth_roots(cy, 2);
    if (!sq.empty()) w.sub({w.v(X), w.v(Y).scaled(sq[0].inverse()), w.v(Z)});
    return;
  }
  const auto& r = rts.roots[0];
  const auto& t = rts.roots[1];
  Poly l1 = w.v(Y).scaled(r.b) - w.v(Z).scaled(r.a);
  Poly l2 = w.v(Y).scaled(t.b) - w.v(Z).scaled(t.a);
  // Old (y, z) expressed through l1, l2.
  Mat m = {{coef(l1, 0, 1, 0), coef(l1, 0, 0, 1)}, {coef(l2, 0, 1, 0), coef(l2, 0, 0, 1)}};
  Mat inv = *mat_inverse(m);
  w.sub({w.v(X), w.v(Y).scaled(inv[0][0]) + w.v(Z).scaled(inv[0][1]),
         w.v(Y).scaled(inv[1][0]) + w.v(Z).scaled(inv[1][1])});
  Scalar cyz = coef(w.g, 0, 1, 1);
  w.sub({w.v(X), w.v(Y), w.v(Z).scaled(cyz.inverse())});
}

// g = c*x + h(y,z), c constant: ends at x + h2 + h3.
PlaneCase finish_a(Work& w) {
  Scalar cx = w.p().constant_term();
  Poly h = w.q();
  Poly low = h.homogeneous_part(0) + h.homogeneous_part(1);
  w.sub({(w.v(X) - low).scaled(cx.inverse()), w.v(Y), w.v(Z)});
  if (w.cosmetic && w.g.degree() == 2) normalize_quadratic(w);
  return PlaneCase::A;
}

// g = x*y + y*b(y,z) + z.
PlaneCase normalize_xy(Work& w) {
  auto b = divide_exact(w.g - w.v(X) * w.v(Y) - w.v(Z), w.v(Y));
  if (!b || b->degree_in(X) > 0) throw WitnessFailure("expected x*y + y*b(y,z) + z, got " + w.g.str());
  Poly low = b->homogeneous_part(0) + b->homogeneous_part(1);
  w.sub({w.v(X) - low, w.v(Y), w.v(Z)});
  Poly b2 = b->homogeneous_part(2);
  if (b2.degree_in(Z) > 0) return PlaneCase::B;
  w.sub({w.v(Z), w.v(Y), w.v(X)});
  return finish_a(w);
}

// g = q(y,z): plane iff {q = 0} is a line-like curve in A^2.
PlaneCase reduce_curve(Work& w) {
  Poly q = w.q();
  int e = q.degree();
  if (e >= 2) {
    auto rts = rational_binary_roots(q.homogeneous_part(e), Y, Z);
    if (rts.roots.size() != 1 || rts.roots[0].mult != e || rts.residual.degree() > 0)
      throw Rejected{"curve-not-a-line", "top form of the plane curve is not a power of a linear form"};
    line_to_z(w, rts.roots[0]);
  } else if (coef(q, 0, 1, 0).is_zero()) {
    w.sub({w.v(X), w.v(Z), w.v(Y)});
  }
  q = w.q();
  Scalar be = q.coeff_in(Y, 1).constant_term();
  if (q.degree_in(Y) != 1 || !q.coeff_in(Y, 1).is_constant())
    throw Rejected{"curve-not-a-line", "plane curve is not a graph over a line"};
  Poly s = q.coeff_in(Y, 0);
  Poly low = s.homogeneous_part(0) + s.homogeneous_part(1);
  w.sub({w.v(Y), (w.v(X) - low).scaled(be.inverse()), w.v(Z)});
  return finish_a(w);
}

void reduce_ky_double(Work& w) {
  UPoly rad = radical(to_upoly(w.p(), Y));
  Scalar alpha = -rad.coeff(0);
  w.sub({w.v(X), w.v(Y) + w.c(alpha), w.v(Z)});
  Scalar lc = w.p().leading().c;
  w.sub({w.v(X).scaled(lc.inverse()), w.v(Y), w.v(Z)});
  RussellResult rr = russell_criterion(w.p(), w.q());
  if (!rr.yes) throw Rejected{"fibre-criterion", rr.obstruction};
  Scalar lam = coef(rr.r1, 0, 0, 0), mu = rr.r0.constant_term();
  w.sub({w.v(X), w.v(Y), (w.v(Z) - w.c(mu)).scaled(lam.inverse())});
  // g = x*y^2 + y*r(y,z) + z; move the y-part of r into x.
  Poly y = w.v(Y);
  Poly rest = *divide_exact(w.g - w.v(X) * y * y - w.v(Z), y);
  Poly s = rest.coeff_in(Y, 0);
  Poly rp = *divide_exact(rest - s, y);
  w.sub({w.v(X) - rp, w.v(Y), w.v(Z)});
}

// g = x*p(y) + q(y,z) with p nonconstant.
PlaneCase reduce_ky(Work& w) {
  Poly p = w.p(), q = w.q();
  RussellResult rr = russell_criterion(p, q);
  if (!rr.yes) throw Rejected{"fibre-criterion", rr.obstruction};
  UPoly rad = radical(to_upoly(p, Y));
  if (rad.degree() == 1) {
    if (p.degree() == 2) {
      reduce_ky_double(w);
    } else {
      Scalar alpha = -rad.coeff(0);
      w.sub({w.v(X), w.v(Y) + w.c(alpha), w.v(Z)});
      Scalar lc = w.p().leading().c;
      w.sub({w.v(X).scaled(lc.inverse()), w.v(Y), w.v(Z)});
      Poly r = w.q().coeff_in(Y, 0);  // lambda*z + mu
      Scalar lam = coef(r, 0, 0, 1), mu = r.constant_term();
      w.sub({w.v(X), w.v(Y), (w.v(Z) - w.c(mu)).scaled(lam.inverse())});
      return normalize_xy(w);
    }
    Poly s = *divide_exact(w.g - w.v(X) * w.v(Y) * w.v(Y) - w.v(Z), w.v(Y));
    int ds = s.degree();
    if (ds <= 0) {
      Scalar s0 = s.is_zero() ? w.s(0) : s.constant_term();
      w.sub({w.v(X), w.v(Y), w.v(Z) - w.v(Y).scaled(s0)});
      w.sub({w.v(Z), w.v(Y), w.v(X)});
      return finish_a(w);
    }
    if (ds == 1) {
      Scalar a = coef(s, 0, 0, 1), b = s.constant_term();
      w.sub({(w.v(Z).scaled(a) + w.c(b)).scaled(a), (w.v(Y) - w.c(1)).scaled(a.inverse()), w.v(X)});
      return normalize_xy(w);
    }
    Scalar s2 = coef(s, 0, 0, 2);
    w.sub({w.v(X).scaled(s2 * s2), w.v(Y).scaled(s2.inverse()), w.v(Z)});
    return PlaneCase::C;
  }
  // Two distinct roots: p = c*rad(p), q = a*rad(p) + z*r1(y) + r0(y).
  Scalar lc = p.leading().c;
  w.sub({(w.v(X) - rr.a).scaled(lc.inverse()), w.v(Y), w.v(Z)});
  w.sub({w.v(Z), w.v(Y), w.v(X)});
  Poly r1 = rr.r1;
  if (r1.is_constant()) return finish_a(w);
  Scalar s1 = coef(r1, 0, 1, 0), s0 = r1.constant_term();
  w.sub({w.v(X), (w.v(Y) - w.c(s0)).scaled(s1.inverse()), w.v(Z)});
  Scalar u0 = coef(w.g, 0, 0, 1), v0 = w.g.constant_term();
  w.sub({w.v(X), w.v(Y), (w.v(Z) - w.c(v0)).scaled(u0.inverse())});
  return normalize_xy(w);
}

void reduce_parabola_core(Work& w, const ProjRoot& root) {
  line_to_z(w, root);
  Poly p = w.p();
  Scalar be = coef(p, 0, 1, 0), ga = coef(p, 0, 0, 1), de = p.constant_term();
  w.sub({w.v(X), (w.v(Y) - w.v(Z).scaled(ga) - w.c(de)).scaled(be.inverse()), w.v(Z)});
  Scalar c = coef(w.p(), 0, 0, 2);
  Poly q = w.q();
  // Fibre criterion after y -> y - c*z^2.
  Poly r = q.subst({w.v(X), -(w.v(Z) * w.v(Z)).scaled(c), w.v(Z)});
  if (r.degree() > 1 || coef(r, 0, 0, 1).is_zero())
    throw Rejected{"fibre-criterion", "restriction of q to the parabola is not of degree one"};
  Scalar lam = coef(r, 0, 0, 1), mu = r.constant_term();
  auto s = divide_exact(q - w.v(Z).scaled(lam) - w.c(mu), w.p());
  if (!s || s->degree() > 1) throw WitnessFailure("parabola reduction: quotient not affine");
  w.sub({w.v(X) - *s, w.v(Y), w.v(Z)});
  w.sub({w.v(X), w.v(Y), (w.v(Z) - w.c(mu)).scaled(lam.inverse())});
  p = w.p();
  Scalar e1 = coef(p, 0, 0, 1), e0 = p.constant_term();
  w.sub({w.v(X), w.v(Y) - w.v(Z).scaled(e1) - w.c(e0), w.v(Z)});
  Scalar c2 = coef(w.p(), 0, 0, 2);
  w.sub({w.v(X).scaled(c2.inverse()), w.v(Y).scaled(c2), w.v(Z)});
}

static PlaneCase reduce_parabola(Work& w, const ProjRoot& root) {
  reduce_parabola_core(w, root);
  w.sub({w.v(Y), w.v(X), w.v(Z)});
  return PlaneCase::B;
}

PlaneCase reduce(Work& w) {
  Poly p = w.p();
  if (p.is_zero()) return reduce_curve(w);
  if (p.is_constant()) return finish_a(w);
  if (p.degree() == 1) {
    line_to_y(w, p.homogeneous_part(1));
    return reduce_ky(w);
  }
  auto rts = rational_binary_roots(p.homogeneous_part(2), Y, Z);
  if (rts.roots.size() != 1 || rts.roots[0].mult != 2)
    throw Rejected{"fibre-lines", "zero locus of p is not a union of parallel lines or a parabola"};
  const ProjRoot& r = rts.roots[0];
  Poly l = w.v(Y).scaled(r.b) - w.v(Z).scaled(r.a);
  Poly p1 = p.homogeneous_part(1);
  if (p1.is_zero() || p1.eval({w.s(0), r.a, r.b}).is_zero()) {
    line_to_y(w, l);
    return reduce_ky(w);
  }
  return reduce_parabola(w, r);
}

}  // namespace affc::detail
