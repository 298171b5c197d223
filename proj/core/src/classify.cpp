#include "affc/classify.hpp"

#include <algorithm>
#include <functional>
#include <type_traits>

#include "affc/errors.hpp"
#include "reduce.hpp"

namespace affc {

using detail::coef;
using detail::only_vars;
using detail::X;
using detail::Y;
using detail::Z;

namespace {

// The reduction hit a condition every linear system satisfies. The map is
// rejected once independent evidence is found.
struct Candidate {
  std::string detail;
};

[[noreturn]] void fail(std::string d) { throw Candidate{std::move(d)}; }

// c = T o f o S.
struct Sys {
  const Field* F;
  std::vector<Poly> c;
  AffineMap S, T;

  int n() const { return static_cast<int>(c.size()); }
  Poly v(int i) const { return Poly::var(F, 3, i); }
  Poly k(const Scalar& a) const { return Poly::constant(a, 3); }
  Scalar s(long a) const { return Scalar(F, a); }
  Poly p(int i) const { return c[i].coeff_in(X, 1); }
  Poly q(int i) const { return c[i].coeff_in(X, 0); }

  void src(const std::vector<Poly>& img) {
    for (auto& g : c) g = g.subst(img);
    S = affine_compose(S, AffineMap::from_polymap(PolyMap(img)));
  }
  void tgt(const AffineMap& m) {
    std::vector<Poly> out;
    for (int i = 0; i < n(); ++i) {
      Poly g = k(m.t[i]);
      for (int j = 0; j < n(); ++j)
        if (!m.A[i][j].is_zero()) g += c[j].scaled(m.A[i][j]);
      out.push_back(std::move(g));
    }
    c = std::move(out);
    T = affine_compose(m, T);
  }
  AffineMap idn() const { return AffineMap::identity(F, n()); }
  void scale(int i, const Scalar& a) {
    auto m = idn();
    m.A[i][i] = a;
    tgt(m);
  }
  // c_i += a*c_j
  void addmul(int i, int j, const Scalar& a) {
    auto m = idn();
    m.A[i][j] = a;
    tgt(m);
  }
  // new c_i = old c_{order[i]}
  void perm(const std::vector<int>& order) { tgt(AffineMap::permutation(F, order)); }
  void center() {
    auto m = idn();
    for (int i = 0; i < n(); ++i) m.t[i] = -c[i].constant_term();
    tgt(m);
  }
  // New coordinate i is the linear form rows[i] of the old coordinates.
  void coords(const Mat& rows) {
    auto inv = mat_inverse(rows);
    if (!inv) throw std::logic_error("coordinate forms are dependent");
    std::vector<Poly> img;
    for (int j = 0; j < 3; ++j) {
      Poly e(F, 3);
      for (int i = 0; i < 3; ++i) e += v(i).scaled((*inv)[j][i]);
      img.push_back(e);
    }
    src(img);
  }
  void embed(const Field* G) {
    if (G == F) return;
    for (auto& g : c) g = g.embed(G);
    S = S.embed(G);
    T = T.embed(G);
    F = G;
  }
};

Sys start(const PolyMap& f) {
  const Field* F = f.field();
  return Sys{F, f.components(), AffineMap::identity(F, 3), AffineMap::identity(F, f.target_dim())};
}

// Runs a single-polynomial reduction on component i; the other components
// follow every source change.
template <class Fn>
auto with_work(Sys& s, int i, Fn&& fn) {
  detail::Work w{s.F, s.c[i], AffineMap::identity(s.F, 3), {}, false};
  for (int j = 0; j < s.n(); ++j)
    if (j != i) w.others.push_back(s.c[j]);
  auto finish = [&] {
    s.c[i] = w.g;
    int o = 0;
    for (int j = 0; j < s.n(); ++j)
      if (j != i) s.c[j] = w.others[o++];
    s.S = affine_compose(s.S, w.W);
  };
  if constexpr (std::is_void_v<decltype(fn(w))>) {
    fn(w);
    finish();
  } else {
    auto r = fn(w);
    finish();
    return r;
  }
}

// Some t with t^n = a, extending F_q when needed. Embeds the system, so
// scalars read before the call belong to the old field.
Scalar root_of(Sys& s, const Scalar& a, unsigned n) {
  auto r = nth_roots(a, n);
  if (!r.empty()) return r[0];
  std::vector<Scalar> cs(n + 1, Scalar(a.field()));
  cs[0] = -a;
  cs[n] = Scalar(a.field(), 1L);
  UPoly u(a.field(), cs);
  if (a.field()->is_rational()) throw FieldExtensionNeeded(minpoly_str(u), static_cast<int>(n));
  s.embed(splitting_field(u));
  return nth_roots(a.embed(s.F), n).at(0);
}

Vec linear_row(const Poly& g) { return {coef(g, 1, 0, 0), coef(g, 0, 1, 0), coef(g, 0, 0, 1)}; }

// ---------------------------------------------------------------------------
// Standard form

std::vector<Poly> pivot_forms(const std::vector<Poly>& comps) {
  std::vector<Poly> forms;
  auto add = [&](const Poly& g) {
    if (!g.is_zero()) forms.push_back(g);
  };
  for (const auto& g : comps) {
    Poly f3 = g.homogeneous_part(3);
    add(f3);
    for (int i = 0; i < 3; ++i) add(f3.derivative(i));
    add(g.homogeneous_part(2));
  }
  return forms;
}

// Moves a point at infinity where every component has x-degree <= 1 to
// [1:0:0]; false when no such point exists over the algebraic closure.
bool to_standard(Sys& s) {
  std::vector<Poly> forms = pivot_forms(s.c);
  PPoint v = {s.s(1), s.s(0), s.s(0)};
  if (!forms.empty()) {
    ZeroSet zs = s.F->is_rational() ? common_zeros(forms) : common_zeros_split(forms);
    if (!zs.whole_plane) {
      if (zs.points.empty()) {
        if (!zs.unresolved.empty())
          throw FieldExtensionNeeded(minpoly_str(zs.unresolved[0]), zs.unresolved[0].degree());
        if (!zs.curves.empty()) throw FieldExtensionNeeded(zs.curves[0].str(), zs.curves[0].degree());
        return false;
      }
      s.embed(zs.field);
      v = zs.points[0];
    }
  }
  const Field* F = s.F;
  int i0 = 0;
  while (v[i0].is_zero()) ++i0;
  Mat m(3, Vec(3, Scalar(F)));
  for (int r = 0; r < 3; ++r) m[r][0] = v[r];
  int col = 1;
  for (int j = 0; j < 3; ++j)
    if (j != i0) m[j][col++] = Scalar(F, 1L);
  std::vector<Poly> img;
  for (int r = 0; r < 3; ++r) {
    Poly e(F, 3);
    for (int j = 0; j < 3; ++j) e += s.v(j).scaled(m[r][j]);
    img.push_back(e);
  }
  s.src(img);
  for (const auto& g : s.c)
    if (g.degree_in(X) > 1) throw std::logic_error("pivot change left x-degree above one");
  return true;
}

bool in_standard_form(const std::vector<Poly>& comps) {
  for (const auto& g : comps)
    if (g.degree_in(X) > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exceptional forms without a common pivot

// Characteristic 2, n = 2: ends at (x + z^2 + y^3, y + x^2).
void exceptional8(Sys& s) {
  auto cubic = [&](int i) { return s.c[i].homogeneous_part(3); };
  if (cubic(0).is_zero()) s.perm({1, 0});
  if (cubic(0).is_zero()) fail("no cubic part");
  // Cubic span must be one-dimensional.
  {
    Poly a = cubic(0), b = cubic(1);
    Scalar ca = a.leading().c;
    Scalar cb = b.is_zero() ? s.s(0) : b.coeff(a.leading().e);
    if (b != a.scaled(cb / ca)) fail("cubic parts are independent");
    s.addmul(1, 0, -(cb / ca));
  }
  LinearFactors lf = linear_factors(cubic(0));
  if (lf.factors.size() != 1 || lf.factors[0].second != 3) fail("cubic part is not a cube of a linear form");
  Poly l = lf.factors[0].first;
  Scalar kap = lf.cofactor.constant_term();
  s.scale(0, kap.inverse());
  // New y = l.
  {
    Vec row = linear_row(l);
    Mat rows;
    if (!row[1].is_zero())
      rows = {{s.s(1), s.s(0), s.s(0)}, row, {s.s(0), s.s(0), s.s(1)}};
    else if (!row[0].is_zero())
      rows = {{s.s(0), s.s(1), s.s(0)}, row, {s.s(0), s.s(0), s.s(1)}};
    else
      rows = {{s.s(1), s.s(0), s.s(0)}, row, {s.s(0), s.s(1), s.s(0)}};
    s.coords(rows);
  }
  // Quadratic parts are sums of squares.
  for (int i = 0; i < 2; ++i) {
    Poly q2 = s.c[i].homogeneous_part(2);
    if (!coef(q2, 1, 1, 0).is_zero() || !coef(q2, 1, 0, 1).is_zero() || !coef(q2, 0, 1, 1).is_zero())
      fail("quadratic part is not a square");
  }
  auto sq = [&](int i, int ex, int ey, int ez) {
    return root_of(s, coef(s.c[i].homogeneous_part(2), ex, ey, ez), 2);
  };
  // The first pass may extend the field; the second reads every root there.
  for (int i = 0; i < 2; ++i) (void)sq(i, 2, 0, 0), (void)sq(i, 0, 2, 0), (void)sq(i, 0, 0, 2);
  Vec l1 = {sq(0, 2, 0, 0), sq(0, 0, 2, 0), sq(0, 0, 0, 2)};
  Vec l2 = {sq(1, 2, 0, 0), sq(1, 0, 2, 0), sq(1, 0, 0, 2)};
  Mat rows = {l2, {s.s(0), s.s(1), s.s(0)}, l1};
  if (mat_rank(rows) < 3) fail("quadratic parts together with y^2 do not span all squares");
  s.coords(rows);
  s.center();
  Poly f1 = s.c[0], f2 = s.c[1];
  Scalar a = coef(f1, 1, 0, 0), b = coef(f1, 0, 0, 1), xi = coef(f1, 0, 1, 0);
  Scalar cc = coef(f2, 1, 0, 0), d = coef(f2, 0, 0, 1), nu = coef(f2, 0, 1, 0);
  if (a.is_zero() || !b.is_zero() || !cc.is_zero() || !d.is_zero() || nu.is_zero())
    fail("linear parts do not fit the characteristic-2 form");
  Scalar rn = root_of(s, nu.embed(s.F), 2);
  nu = nu.embed(s.F);
  s.src({s.v(X).scaled(rn), s.v(Y), s.v(Z)});
  s.scale(1, nu.inverse());
  xi = coef(s.c[0], 0, 1, 0);
  Scalar rx = root_of(s, xi, 2);
  xi = xi.embed(s.F);
  s.addmul(0, 1, xi);
  s.src({s.v(X), s.v(Y), s.v(Z) + s.v(X).scaled(rx)});
  Scalar a2 = coef(s.c[0], 1, 0, 0);
  Scalar mu = root_of(s, a2, 5);
  Scalar m2 = mu * mu, m3 = m2 * mu;
  s.src({s.v(X).scaled(mu), s.v(Y).scaled(m2), s.v(Z).scaled(m3)});
  s.scale(0, (m3 * m3).inverse());
  s.scale(1, m2.inverse());
}

bool cube_only(const Poly& g) {
  for (const auto& t : g.terms()) {
    int nz = 0;
    for (int i = 0; i < 3; ++i) nz += t.e[i] != 0;
    if (nz > 1) return false;
  }
  return true;
}

// Characteristic 3, n = 2: ends at (x + z^2 + y^3, z + x^3).
void exceptional9(Sys& s) {
  auto part = [&](int i, int d) { return s.c[i].homogeneous_part(d); };
  for (int i = 0; i < 2; ++i)
    if (!cube_only(part(i, 3))) fail("cubic part is not a cube");
  // Quadratic span: one-dimensional, spanned by a square.
  if (part(0, 2).is_zero()) s.perm({1, 0});
  Poly m2 = part(0, 2);
  if (m2.is_zero()) fail("no quadratic part");
  Scalar lc = m2.leading().c;
  Scalar r = part(1, 2).coeff(m2.leading().e) / lc;
  if (part(1, 2) != m2.scaled(r)) fail("quadratic parts are independent");
  s.addmul(1, 0, -r);
  if (part(0, 3).is_zero()) s.addmul(0, 1, s.s(1));
  if (part(0, 3).is_zero() || part(1, 3).is_zero()) fail("cubic parts are dependent");
  LinearFactors lf = linear_factors(part(0, 2));
  if (lf.factors.size() != 1 || lf.factors[0].second != 2) fail("quadratic part is not a square");
  s.scale(0, lf.cofactor.constant_term().inverse());
  Poly m = lf.factors[0].first;
  auto cube_root_row = [&](int i) {
    Poly g = part(i, 3);
    Vec row;
    for (int j = 0; j < 3; ++j) {
      Exps e{};
      e[j] = 3;
      row.push_back(root_of(s, g.coeff(e), 3));
    }
    return row;
  };
  // The first pass may extend the field; the second reads every root there.
  for (int i = 0; i < 2; ++i) (void)cube_root_row(i);
  Vec l1 = cube_root_row(0), l2 = cube_root_row(1);
  Mat rows = {l2, l1, linear_row(m.embed(s.F))};
  if (mat_rank(rows) < 3) fail("cube roots and the square root are dependent");
  s.coords(rows);
  s.center();
  Poly f1 = s.c[0], f2 = s.c[1];
  Scalar al = coef(f1, 1, 0, 0), be = coef(f1, 0, 1, 0), ga = coef(f1, 0, 0, 1);
  Scalar de = coef(f2, 1, 0, 0), ep = coef(f2, 0, 1, 0), ze = coef(f2, 0, 0, 1);
  if (al.is_zero() || !be.is_zero() || !de.is_zero() || !ep.is_zero() || ze.is_zero())
    fail("linear parts do not fit the characteristic-3 form");
  Scalar ratio = ga / ze;
  Scalar kap = root_of(s, ratio, 3);
  s.addmul(0, 1, -ratio.embed(s.F));
  s.src({s.v(X), s.v(Y) + s.v(X).scaled(kap), s.v(Z)});
  al = coef(s.c[0], 1, 0, 0);
  ze = coef(s.c[1], 0, 0, 1);
  Scalar t = al * al * al * ze;
  Scalar xi = root_of(s, t, 15);
  al = al.embed(s.F);
  Scalar x2 = xi * xi, x3 = x2 * xi, x6 = x3 * x3;
  s.src({s.v(X).scaled(x6 / al), s.v(Y).scaled(x2), s.v(Z).scaled(x3)});
  s.scale(0, x6.inverse());
  s.scale(1, (al * al * al) / (x6 * x6 * x6));
}

// ---------------------------------------------------------------------------
// Coefficients of x into k[y]

void line_to_y(Sys& s, const Poly& l) {
  with_work(s, 0, [&](detail::Work& w) { detail::line_to_y(w, l); });
}

// One component is x*(y + z^2) + z; ends with p_i in k[y] after exchanging x, y.
void parabola(Sys& s) {
  Poly p0 = s.p(0);
  auto rts = rational_binary_roots(p0.homogeneous_part(2), Y, Z);
  with_work(s, 0, [&](detail::Work& w) {
    try {
      detail::reduce_parabola_core(w, rts.roots.at(0));
    } catch (const detail::Rejected& r) {
      fail(r.detail);
    }
  });
  Poly yz2 = s.v(Y) + s.v(Z) * s.v(Z);
  if (s.c[0] != s.v(X) * yz2 + s.v(Z)) throw WitnessFailure("parabola reduction missed x*(y + z^2) + z");
  int n = s.n();
  for (int i = 1; i < n; ++i) {
    Scalar d = coef(s.p(i), 0, 0, 2);
    if (!d.is_zero()) s.addmul(i, 0, -d);
    if (!s.p(i).is_constant() && !s.p(i).is_zero()) fail("coefficient of x is not constant next to a parabola");
  }
  s.center();
  std::vector<Scalar> a(n, s.s(0)), pi(n, s.s(0));
  for (int i = 1; i < n; ++i) {
    Poly q = s.q(i);
    a[i] = coef(q, 0, 1, 0);
    if (q != yz2.scaled(a[i])) fail("component is not a multiple of the parabola modulo x");
    pi[i] = s.p(i).is_zero() ? s.s(0) : s.p(i).constant_term();
    if (a[i].is_zero() && pi[i].is_zero()) fail("constant component");
  }
  if (n == 3) {
    auto inv = mat_inverse({{a[1], pi[1]}, {a[2], pi[2]}});
    if (!inv) fail("components are dependent next to a parabola");
    auto m = s.idn();
    m.A[1][1] = (*inv)[0][0];
    m.A[1][2] = (*inv)[0][1];
    m.A[2][1] = (*inv)[1][0];
    m.A[2][2] = (*inv)[1][1];
    s.tgt(m);
  }
  s.src({s.v(Y), s.v(X), s.v(Z)});
}

void p_into_ky(Sys& s) {
  int n = s.n();
  Mat Q2;
  for (int i = 0; i < n; ++i) {
    Poly p = s.p(i);
    Q2.push_back({coef(p, 0, 2, 0), coef(p, 0, 1, 1), coef(p, 0, 0, 2)});
  }
  int r2 = mat_rank(Q2);
  if (r2 == 0) {
    Mat L;
    int j = -1;
    for (int i = 0; i < n; ++i) {
      Poly p = s.p(i);
      L.push_back({coef(p, 0, 1, 0), coef(p, 0, 0, 1)});
      if (j < 0 && (!L.back()[0].is_zero() || !L.back()[1].is_zero())) j = i;
    }
    if (mat_rank(L) > 1) fail("coefficients of x have independent linear parts");
    if (j >= 0) line_to_y(s, s.p(j).homogeneous_part(1));
    return;
  }
  if (r2 > 1) fail("quadratic parts of the coefficients of x span more than a line");
  int j = 0;
  while (s.p(j).homogeneous_part(2).is_zero()) ++j;
  auto rts = rational_binary_roots(s.p(j).homogeneous_part(2), Y, Z);
  if (rts.roots.size() != 1 || rts.roots[0].mult != 2)
    fail("quadratic part of a coefficient of x is not a square");
  const ProjRoot& r = rts.roots[0];
  line_to_y(s, s.v(Y).scaled(r.b) - s.v(Z).scaled(r.a));
  int k = -1;
  for (int i = 0; i < n && k < 0; ++i)
    if (!coef(s.p(i), 0, 0, 1).is_zero()) k = i;
  if (k < 0) return;
  if (coef(s.p(k), 0, 2, 0).is_zero()) s.addmul(k, j, s.s(1));
  std::vector<int> order = {k};
  for (int i = 0; i < n; ++i)
    if (i != k) order.push_back(i);
  s.perm(order);
  parabola(s);
}

// ---------------------------------------------------------------------------
// Shapes reached from p_i in k[y]

enum class Shape {
  Tri,       // (x + p(y,z), y + q(z), z)
  TwoY,      // (x*y + y*a(y,z) + z, x + a(y,z) + r(y), y)
  XYOnly,    // (x*y + y*a(y,z) + z, y)
  XY2,       // (x*y^2 + y*(z^2 + a*z + b) + z, y)
};

// c_i = alpha*y + beta becomes y.
void make_y(Sys& s, int i) {
  const Poly& g = s.c[i];
  if (!only_vars(g, 1u << Y) || g.degree() != 1) fail("component is not of degree one in y");
  Scalar al = coef(g, 0, 1, 0), be = g.constant_term();
  auto m = s.idn();
  m.A[i][i] = al.inverse();
  m.t[i] = -be / al;
  s.tgt(m);
}

// c_i in k[y,z] becomes y + q(z) by a change of y, z at the source.
void curve_to_graph(Sys& s, int i) {
  if (s.c[i].degree_in(X) > 0) throw std::logic_error("curve component involves x");
  with_work(s, i, [&](detail::Work& w) {
    Poly q = w.g;
    int e = q.degree();
    if (e < 1) fail("constant component");
    if (e >= 2) {
      auto rts = rational_binary_roots(q.homogeneous_part(e), Y, Z);
      if (rts.roots.size() != 1 || rts.roots[0].mult != e || rts.residual.degree() > 0)
        fail("top form of a plane curve is not a power of a linear form");
      detail::line_to_z(w, rts.roots[0]);
    } else if (coef(q, 0, 1, 0).is_zero()) {
      w.sub({w.v(X), w.v(Z), w.v(Y)});
    }
    q = w.g;
    if (q.degree_in(Y) != 1 || !q.coeff_in(Y, 1).is_constant()) fail("plane curve is not a graph over a line");
    Scalar be = q.coeff_in(Y, 1).constant_term();
    Poly low = q.coeff_in(Y, 0);
    low = low.homogeneous_part(0) + low.homogeneous_part(1);
    w.sub({w.v(X), (w.v(Y) - low).scaled(be.inverse()), w.v(Z)});
  });
}

// (c_i, c_j) in k[y,z] become (y + q(z), z).
void pair_to_triangular(Sys& s, int i, int j) {
  curve_to_graph(s, i);
  Poly qz = s.c[i] - s.v(Y);
  Poly R = s.c[j].subst({s.v(X), s.v(Y) - qz, s.v(Z)});
  Scalar a = coef(R, 0, 0, 1);
  Poly P = R - s.v(Z).scaled(a);
  if (a.is_zero() || !only_vars(P, 1u << Y)) fail("plane map is not an automorphism");
  if (P.degree() <= 1) {
    auto m = s.idn();
    m.A[j][j] = a.inverse();
    m.A[j][i] = -coef(P, 0, 1, 0) / a;
    m.t[j] = -P.constant_term() / a;
    s.tgt(m);
    return;
  }
  if (!qz.is_zero()) fail("plane map is not an automorphism");
  s.src({s.v(X), s.v(Z), s.v(Y)});
  auto m = s.idn();
  m.A[i][i] = s.s(0);
  m.A[i][j] = a.inverse();
  m.A[j][j] = s.s(0);
  m.A[j][i] = s.s(1);
  s.tgt(m);
}

// Rows of the coefficients of x in the basis y^2, y, 1.
Vec prow(const Sys& s, int i) {
  Poly p = s.p(i);
  return {coef(p, 0, 2, 0), coef(p, 0, 1, 0), coef(p, 0, 0, 0)};
}

// Reduced echelon form of the rows at the target; returns the rank.
int echelon(Sys& s) {
  int n = s.n(), r = 0;
  for (int col = 0; col < 3 && r < n; ++col) {
    int piv = -1;
    for (int i = r; i < n && piv < 0; ++i)
      if (!prow(s, i)[col].is_zero()) piv = i;
    if (piv < 0) continue;
    if (piv != r) {
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      std::swap(order[piv], order[r]);
      s.perm(order);
    }
    s.scale(r, prow(s, r)[col].inverse());
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      Scalar e = prow(s, i)[col];
      if (!e.is_zero()) s.addmul(i, r, -e);
    }
    ++r;
  }
  return r;
}

void require_ky(const Poly& g, const char* what) {
  if (!only_vars(g, 1u << Y)) fail(what);
}

// Every component is x*p(y) + z*r(y) + q(y), so any direction in the
// (x, z) plane can serve as the pivot.
bool bilinear_in_xz(const Sys& s) {
  for (const auto& g : s.c) {
    if (g.degree_in(Z) > 1) return false;
    if (!only_vars(g.coeff_in(Z, 1), 1u << Y)) return false;
  }
  return true;
}

Shape shape_from_ky(Sys& s, bool swapped = false) {
  int n = s.n();
  int dim = echelon(s);
  Poly x = s.v(X), y = s.v(Y), z = s.v(Z);
  if (dim == 0) {
    if (n == 3) fail("no component involves x");
    pair_to_triangular(s, 0, 1);
    s.src({z, x, y});
    return Shape::Tri;
  }
  if (dim == 1) {
    if (s.p(0).is_constant()) {
      if (n == 2)
        curve_to_graph(s, 1);
      else
        pair_to_triangular(s, 1, 2);
      return Shape::Tri;
    }
    if (n == 3) fail("coefficients of x have a common root");
    make_y(s, 1);
    PlaneCase pc = with_work(s, 0, [&](detail::Work& w) {
      try {
        return detail::reduce_ky(w);
      } catch (const detail::Rejected& r) {
        fail(r.detail);
      }
    });
    make_y(s, 1);
    if (pc == PlaneCase::A) return Shape::Tri;
    return pc == PlaneCase::B ? Shape::XYOnly : Shape::XY2;
  }
  if (dim == 3) fail("coefficients of x span three dimensions");
  // dim == 2: rows in reduced echelon form for the order y^2, y, 1.
  auto finish_third = [&] {
    if (n == 3) make_y(s, 2);
  };
  Vec r0 = prow(s, 0), r1 = prow(s, 1);
  if (r0[0].is_zero()) {
    // <1, y>: p0 = y + e, p1 = 1.
    s.src({x, y - s.k(r0[2]), z});
    echelon(s);
    finish_third();
    auto rr = russell_criterion(s.p(0), s.q(0));
    if (!rr.yes) fail(rr.obstruction);
    Scalar al = rr.r1.constant_term(), be = rr.r0.is_zero() ? s.s(0) : rr.r0.constant_term();
    s.src({x, y, (z - s.k(be)).scaled(al.inverse())});
    auto a = divide_exact(s.c[0] - x * y - z, y);
    if (!a) throw WitnessFailure("expected x*y + y*a + z");
    require_ky(s.q(1) - *a, "second component does not match the first");
    finish_third();
    return Shape::TwoY;
  }
  if (r1[1].is_zero()) {
    // <1, y^2 + b*y>
    Scalar b = r0[1];
    if (!b.is_zero()) {
      if (s.F->characteristic() != 2)
        s.src({x, y - s.k(b / s.s(2)), z});
      else
        s.src({x, y.scaled(b), z});
      echelon(s);
    }
    finish_third();
    bool square = prow(s, 0)[1].is_zero();
    if (square) {
      // p0 = y^2, p1 = 1
      with_work(s, 0, [&](detail::Work& w) {
        try {
          detail::reduce_ky_double(w);
        } catch (const detail::Rejected& r) {
          fail(r.detail);
        }
      });
      auto sz = divide_exact(s.c[0] - x * y * y - z, y);
      if (!sz || sz->degree() > 0) fail("first component is not x*y^2 + s*y + z");
      require_ky(s.q(1), "second component does not lie in k[y] modulo x");
    } else {
      // p0 = y*(y + 1), p1 = 1
      auto rr = russell_criterion(s.p(0), s.q(0));
      if (!rr.yes) fail(rr.obstruction);
      s.src({x - rr.a, y, z});
      rr = russell_criterion(s.p(0), s.q(0));
      if (!rr.r1.is_constant()) fail("z-coefficient of the first component is not constant");
      require_ky(s.q(1), "second component does not lie in k[y] modulo x");
    }
    finish_third();
    s.src({y, z, x});
    s.scale(0, coef(s.c[0], 1, 0, 0).inverse());
    s.center();
    return Shape::Tri;
  }
  // <y + e, y^2 + c>
  s.src({x, y - s.k(r1[2]), z});
  echelon(s);
  Scalar C = prow(s, 0)[2];
  if (C.is_zero()) fail("coefficients of x have a common root");
  // Normalizing needs a square root of C. When some pivot direction x' = z - r*x
  // has coefficients free of y^2 the root is avoided; rows are echelon, so
  // only the first row of those coefficients may carry y^2.
  if (!swapped && nth_roots(C, 2).empty() && bilinear_in_xz(s)) {
    bool free_below = true;
    for (int i = 1; i < n; ++i) free_below = free_below && coef(s.c[i], 0, 2, 1).is_zero();
    if (free_below) {
      Sys t = s;
      t.src({x - z.scaled(coef(s.c[0], 0, 2, 1)), y, z});
      t.src({z, y, x});
      try {
        Shape sh = shape_from_ky(t, true);
        s = std::move(t);
        return sh;
      } catch (const Candidate&) {
      } catch (const detail::Rejected&) {
      }
    }
  }
  Scalar rho = root_of(s, C, 2);
  x = s.v(X), y = s.v(Y), z = s.v(Z);
  s.src({x, y + s.k(rho), z});
  s.src({x, y.scaled(rho), z});
  echelon(s);
  finish_third();
  // p0 = y^2, p1 = y + 1
  with_work(s, 0, [&](detail::Work& w) {
    try {
      detail::reduce_ky_double(w);
    } catch (const detail::Rejected& r) {
      fail(r.detail);
    }
  });
  auto sz = divide_exact(s.c[0] - x * y * y - z, y);
  if (!sz || sz->degree() != 1 || coef(*sz, 0, 0, 1) != -s.s(1)) fail("first component does not fit p = (y^2, y + 1)");
  Scalar mu = sz->constant_term();
  require_ky(s.q(1) + z, "second component does not fit p = (y^2, y + 1)");
  s.src({x, y, z + s.k(mu)});
  s.center();
  s.src({z, y + s.k(s.s(1)), -x});
  s.center();
  finish_third();
  return Shape::TwoY;
}

// ---------------------------------------------------------------------------
// Final normalization into the families

int finish_tri(Sys& s) {
  s.center();
  Poly x = s.v(X), y = s.v(Y), z = s.v(Z);
  Scalar q1 = coef(s.c[1], 0, 0, 1);
  Poly P1 = (s.c[0] - x).homogeneous_part(1);
  Poly sh = P1.subst({x, y - z.scaled(q1), z});
  s.src({x - sh, y - z.scaled(q1), z});
  return s.n() == 2 ? 4 : 10;
}

int finish(Sys& s, Shape sh) {
  Poly x = s.v(X), y = s.v(Y), z = s.v(Z);
  if (sh == Shape::Tri) return finish_tri(s);
  if (sh == Shape::XY2) return 7;
  s.center();
  auto a = divide_exact(s.c[0] - x * y - z, y);
  if (!a) throw WitnessFailure("expected x*y + y*a + z");
  Poly low = a->homogeneous_part(0) + a->homogeneous_part(1);
  s.src({x - low, y, z});
  s.center();
  s.src({y, z, x});
  auto b2 = divide_exact(s.c[0] - y * z - x, z);
  if (!b2) throw WitnessFailure("expected y*z + z*a2 + x");
  bool in_z = b2->degree_in(X) <= 0;
  if (sh == Shape::TwoY) {
    Scalar r1 = coef(s.c[1], 0, 0, 1);
    if (in_z) {
      s.src({x, y - z.scaled(r1), z});
      return finish_tri(s);
    }
    if (s.n() == 3) {
      s.addmul(1, 2, -r1);
      return 11;
    }
    return 5;
  }
  if (in_z) {
    s.src({x, z, y});
    return finish_tri(s);
  }
  return 6;
}

// ---------------------------------------------------------------------------
// Templates

Poly only(const Poly& g, int d) { return g.homogeneous_part(d); }

bool homogeneous_in(const Poly& g, int d, unsigned mask) {
  return only_vars(g, mask) && (g.is_zero() || only(g, d) == g);
}

Poly z_coeff_poly(const Poly& g, unsigned k) {
  Exps e{};
  e[Z] = k;
  return Poly::constant(g.coeff(e), 3);
}

}  // namespace

std::optional<std::vector<std::pair<std::string, Poly>>> family_parameters(int family, const PolyMap& N) {
  using Params = std::vector<std::pair<std::string, Poly>>;
  if (N.source_dim() != 3) return std::nullopt;
  const Field* F = N.field();
  Poly x = Poly::var(F, 3, X), y = Poly::var(F, 3, Y), z = Poly::var(F, 3, Z);
  const unsigned YZ = (1u << Y) | (1u << Z), XZ = (1u << X) | (1u << Z), ZZ = 1u << Z;
  int n = N.target_dim();
  auto pure_z = [&](const Poly& g, std::initializer_list<unsigned> ks) {
    if (!only_vars(g, ZZ)) return false;
    Poly acc(F, 3);
    for (unsigned k : ks) acc += z_coeff_poly(g, k) * z.pow(k);
    return acc == g;
  };
  // x*y^2 + y*(z^2 + a*z + b) + z
  auto case_c = [&](const Poly& g, Params& out) {
    auto s = divide_exact(g - x * y * y - z, y);
    if (!s || !only_vars(*s, ZZ) || s->degree() != 2 || !coef(*s, 0, 0, 2).is_one()) return false;
    out = {{"a", z_coeff_poly(*s, 1)}, {"b", z_coeff_poly(*s, 0)}};
    return true;
  };
  // y*z + z*a2(x,z) + x with a2 not in k[z]
  auto case_yz = [&](const Poly& g, Poly& a2) {
    auto t = divide_exact(g - y * z - x, z);
    if (!t || !homogeneous_in(*t, 2, XZ) || t->degree_in(X) <= 0) return false;
    a2 = *t;
    return true;
  };
  auto tri_first = [&](const Poly& g, Params& out) {
    Poly h = g - x;
    if (!only_vars(h, YZ) || !only(h, 0).is_zero() || !only(h, 1).is_zero()) return false;
    out = {{"p2", only(h, 2)}, {"p3", only(h, 3)}};
    return true;
  };
  auto tri_second = [&](const Poly& g, Params& out) {
    Poly h = g - y;
    if (!pure_z(h, {2, 3})) return false;
    out.push_back({"q2", z_coeff_poly(h, 2)});
    out.push_back({"q3", z_coeff_poly(h, 3)});
    return true;
  };
  Params out;
  switch (family) {
    case 1: {
      if (n != 1) return std::nullopt;
      Params p;
      if (!tri_first(N[0], p)) return std::nullopt;
      return Params{{"r2", p[0].second}, {"r3", p[1].second}};
    }
    case 2: {
      if (n != 1) return std::nullopt;
      auto r = divide_exact(N[0] - x * y - z, y);
      if (!r || !homogeneous_in(*r, 2, YZ) || r->degree_in(Z) <= 0) return std::nullopt;
      return Params{{"r2", *r}};
    }
    case 3:
      if (n != 1 || !case_c(N[0], out)) return std::nullopt;
      return out;
    case 4:
    case 10:
      if (n != (family == 4 ? 2 : 3) || !tri_first(N[0], out) || !tri_second(N[1], out)) return std::nullopt;
      if (family == 10 && N[2] != z) return std::nullopt;
      return out;
    case 5:
    case 11: {
      if (n != (family == 5 ? 2 : 3)) return std::nullopt;
      Poly a2;
      if (!case_yz(N[0], a2)) return std::nullopt;
      Poly h = N[1] - y - a2;
      if (!pure_z(h, family == 5 ? std::initializer_list<unsigned>{1, 2, 3} : std::initializer_list<unsigned>{2, 3}))
        return std::nullopt;
      out = {{"a2", a2}};
      if (family == 5) out.push_back({"r1", z_coeff_poly(h, 1)});
      out.push_back({"r2", z_coeff_poly(h, 2)});
      out.push_back({"r3", z_coeff_poly(h, 3)});
      if (family == 11 && N[2] != z) return std::nullopt;
      return out;
    }
    case 6: {
      Poly a2;
      if (n != 2 || !case_yz(N[0], a2) || N[1] != z) return std::nullopt;
      return Params{{"a2", a2}};
    }
    case 7:
      if (n != 2 || !case_c(N[0], out) || N[1] != y) return std::nullopt;
      return out;
    case 8:
      if (n != 2 || F->characteristic() != 2 || N[0] != x + z * z + y.pow(3) || N[1] != y + x * x)
        return std::nullopt;
      return Params{};
    case 9:
      if (n != 2 || F->characteristic() != 3 || N[0] != x + z * z + y.pow(3) || N[1] != z + x.pow(3))
        return std::nullopt;
      return Params{};
    default:
      return std::nullopt;
  }
}

namespace {

// ---------------------------------------------------------------------------
// Rejection evidence

Poly combine(const PolyMap& f, const std::vector<Scalar>& lam, const Scalar& level) {
  const Field* F = lam[0].field();
  Poly h = Poly::constant(-level, 3);
  for (int i = 0; i < f.target_dim(); ++i) h += f[i].embed(F).scaled(lam[i]);
  return h;
}

// Plane-check verdict on a combination: reason tag when it is not a plane,
// empty when it is (or when the check cannot decide).
std::string not_plane_reason(const Poly& h) {
  if (h.degree() < 1) return h.is_zero() ? "zero" : "constant";
  try {
    PlaneVerdict v = is_plane_deg3(h);
    return v.is_plane ? std::string() : v.reason;
  } catch (const FieldExtensionNeeded&) {
    return {};
  } catch (const DegreeTooHigh&) {
    return {};
  }
}

std::vector<Scalar> field_values(const Field* F, std::size_t cap) {
  std::vector<Scalar> out;
  if (F->is_rational()) {
    for (long v : {0L, 1L, -1L, 2L, -2L, 3L}) out.push_back(Scalar(F, v));
  } else {
    Scalar s(F);
    for (std::uint64_t i = 0; out.size() < cap && sequence_element(F, i, s); ++i) out.push_back(s);
  }
  return out;
}

std::optional<RejectionReason> search_hyperplanes(const PolyMap& f, const Field* F) {
  int n = f.target_dim();
  std::vector<Scalar> vals = field_values(F, 16);
  std::vector<Scalar> levels = F->is_rational() ? std::vector<Scalar>(vals.begin(), vals.end() - 1) : vals;
  std::vector<std::vector<Scalar>> lams;
  std::vector<Scalar> cur(n, Scalar(F));
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      int first = 0;
      while (first < n && cur[first].is_zero()) ++first;
      if (first < n && (F->is_rational() ? cur[first] == Scalar(F, 1L) || cur[first] == Scalar(F, 2L) : cur[first].is_one()))
        lams.push_back(cur);
      return;
    }
    for (const auto& v : vals) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::stable_sort(lams.begin(), lams.end(), [](const auto& a, const auto& b) {
    auto nz = [](const auto& v) { return std::count_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); }); };
    return nz(a) < nz(b);
  });
  for (const auto& lam : lams)
    for (const auto& lev : levels) {
      Poly h = combine(f, lam, lev);
      std::string why = not_plane_reason(h);
      if (why.empty()) continue;
      RejectionReason r;
      r.stage = "hyperplane";
      r.combination = lam;
      r.level = lev;
      r.datum = h;
      r.plane_reason = why;
      return r;
    }
  return std::nullopt;
}

RejectionReason find_evidence(const PolyMap& f, const std::string& detail) {
  const Field* F = f.field();
  int n = f.target_dim();
  RejectionReason r;
  r.detail = detail;
  // Dependent linear parts.
  Mat Lt(3, Vec(n, Scalar(F)));
  for (int i = 0; i < n; ++i) {
    Vec row = linear_row(f[i]);
    for (int j = 0; j < 3; ++j) Lt[j][i] = row[j];
  }
  auto ker = mat_kernel(Lt, F, n);
  if (!ker.empty()) {
    Scalar zero(F);
    Poly h = combine(f, ker[0], zero);
    r.stage = "linear-parts";
    r.combination = ker[0];
    r.level = h.constant_term();
    r.datum = h - Poly::constant(r.level, 3);
    r.plane_reason = not_plane_reason(r.datum);
    if (!r.plane_reason.empty()) return r;
  }
  if (n == 3) {
    Poly J = jacobian_det(f);
    if (!J.is_constant() || J.is_zero()) {
      r.stage = "jacobian";
      r.combination.clear();
      r.level = Scalar(F);
      r.datum = J;
      r.plane_reason.clear();
      return r;
    }
  }
  if (auto h = search_hyperplanes(f, F)) {
    h->detail = detail;
    return *h;
  }
  if (!F->is_rational() && F->order() <= 16) {
    const Field* G = F->extension(2);
    if (auto h = search_hyperplanes(f.embed(G), G)) {
      h->detail = detail;
      return *h;
    }
  }
  r.stage = "unconfirmed";
  r.combination.clear();
  r.level = Scalar(F);
  r.datum = Poly(F, 3);
  r.plane_reason.clear();
  return r;
}

Classification rejected(const PolyMap& f, const std::string& detail) {
  Classification c;
  c.accepted = false;
  c.rejection = find_evidence(f, detail);
  return c;
}

void check_input(const PolyMap& f) {
  if (f.source_dim() != 3) throw DimensionMismatch("maps must have three source variables");
  if (f.target_dim() < 1 || f.target_dim() > 3)
    throw DimensionMismatch("linear systems of affine spaces have 1 to 3 components");
  if (f.degree() > 3) throw DegreeTooHigh("classification covers degree at most 3");
}

bool linear_parts_independent(const PolyMap& f) {
  Mat L;
  for (const auto& g : f.components()) L.push_back(linear_row(g));
  return mat_rank(L) == f.target_dim();
}

ClassOutcome outcome_from(const PolyMap& f, Sys& s, int family) {
  ClassOutcome o;
  o.family = family;
  o.field = s.F;
  o.normal_form = PolyMap(s.c);
  o.alpha = invert_affine(s.T);
  o.beta = invert_affine(s.S);
  auto params = family_parameters(family, o.normal_form);
  if (!params)
    throw WitnessFailure("normal form " + o.normal_form.str() + " does not match family " + std::to_string(family));
  o.parameters = std::move(*params);
  if (apply_equivalence(o.alpha, o.normal_form, o.beta) != f.embed(s.F))
    throw WitnessFailure("classification witnesses do not recompose the input");
  return o;
}

std::optional<int> template_family(const PolyMap& f) {
  static const std::vector<std::vector<int>> by_n = {{}, {1, 2, 3}, {4, 5, 6, 7, 8, 9}, {10, 11}};
  for (int fam : by_n[f.target_dim()])
    if (family_parameters(fam, f)) return fam;
  return std::nullopt;
}

}  // namespace

StandardFormResult standard_form_reduce(const PolyMap& f) {
  check_input(f);
  StandardFormResult res;
  Sys s = start(f);
  res.field = s.F;
  auto reject = [&](const std::string& d) {
    res.kind = StandardFormResult::Kind::Reject;
    res.rejection = find_evidence(f, d);
    return res;
  };
  if (!linear_parts_independent(f)) return reject("linear parts are dependent");
  try {
    if (!in_standard_form(s.c) && !to_standard(s)) {
      std::uint64_t p = s.F->characteristic();
      if (f.target_dim() == 2 && p == 2) {
        exceptional8(s);
        res.kind = StandardFormResult::Kind::Exceptional8;
      } else if (f.target_dim() == 2 && p == 3) {
        exceptional9(s);
        res.kind = StandardFormResult::Kind::Exceptional9;
      } else {
        return reject("no common point at infinity for a standard form");
      }
      if (!family_parameters(res.kind == StandardFormResult::Kind::Exceptional8 ? 8 : 9, PolyMap(s.c)))
        throw WitnessFailure("exceptional reduction missed its normal form");
    } else {
      res.kind = StandardFormResult::Kind::Standard;
    }
  } catch (const Candidate& c) {
    return reject(c.detail);
  }
  res.field = s.F;
  res.g = PolyMap(s.c);
  res.alpha = invert_affine(s.T);
  res.beta = invert_affine(s.S);
  if (apply_equivalence(res.alpha, res.g, res.beta) != f.embed(s.F))
    throw WitnessFailure("standard form witnesses do not recompose the input");
  return res;
}

Classification classify_system(const PolyMap& f) {
  check_input(f);
  const Field* F = f.field();
  int n = f.target_dim();
  for (const auto& g : f.components())
    if (g.degree() < 1) return rejected(f, "constant component");
  if (!linear_parts_independent(f)) return rejected(f, "linear parts are dependent");
  Classification out;
  if (auto fam = template_family(f)) {
    Sys s = start(f);
    out.accepted = true;
    out.outcome = outcome_from(f, s, *fam);
    return out;
  }
  if (n == 1) {
    PlaneVerdict v = is_plane_deg3(f[0]);
    if (!v.is_plane) {
      out.rejection.stage = "hyperplane";
      out.rejection.detail = v.detail;
      out.rejection.combination = {Scalar(F, 1L)};
      out.rejection.level = Scalar(F);
      out.rejection.datum = f[0];
      out.rejection.plane_reason = v.reason;
      return out;
    }
    Sys s{v.field, {v.normal_form}, v.witness, AffineMap::identity(v.field, 1)};
    int fam = v.kase == PlaneCase::A ? 1 : v.kase == PlaneCase::B ? 2 : 3;
    out.accepted = true;
    out.outcome = outcome_from(f, s, fam);
    return out;
  }
  Sys s = start(f);
  int fam = 0;
  try {
    if (!to_standard(s)) {
      std::uint64_t p = s.F->characteristic();
      if (n == 2 && p == 2) {
        exceptional8(s);
        fam = 8;
      } else if (n == 2 && p == 3) {
        exceptional9(s);
        fam = 9;
      } else {
        fail("no common point at infinity for a standard form");
      }
    } else {
      p_into_ky(s);
      fam = finish(s, shape_from_ky(s));
    }
  } catch (const Candidate& c) {
    return rejected(f, c.detail);
  } catch (const detail::Rejected& r) {
    return rejected(f, r.detail);
  }
  out.accepted = true;
  out.outcome = outcome_from(f, s, fam);
  return out;
}

bool confirm_rejection(const PolyMap& f, const RejectionReason& r) {
  if (r.stage == "jacobian") {
    if (f.target_dim() != 3) return false;
    Poly J = jacobian_det(f);
    return J == r.datum && (J.is_zero() || !J.is_constant());
  }
  if (r.stage != "hyperplane" && r.stage != "linear-parts") return false;
  if (static_cast<int>(r.combination.size()) != f.target_dim()) return false;
  if (combine(f, r.combination, r.level) != r.datum) return false;
  if (r.stage == "linear-parts" && !r.datum.homogeneous_part(1).is_zero()) return false;
  return !not_plane_reason(r.datum).empty();
}

}  // namespace affc
