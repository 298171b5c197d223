#include "affc/zeros.hpp"

#include <algorithm>

#include "affc/errors.hpp"

namespace affc {

PPoint normalize_point(PPoint p) {
  for (int i = 0; i < 3; ++i) {
    if (p[i].is_zero()) continue;
    Scalar inv = p[i].inverse();
    for (auto& c : p) c *= inv;
    return p;
  }
  throw std::invalid_argument("zero vector is not a projective point");
}

bool point_less(const PPoint& a, const PPoint& b) {
  auto first = [](const PPoint& p) {
    int i = 0;
    while (i < 3 && p[i].is_zero()) ++i;
    return i;
  };
  int fa = first(a), fb = first(b);
  if (fa != fb) return fa < fb;
  for (int i = fa + 1; i < 3; ++i) {
    bool za = a[i].is_zero(), zb = b[i].is_zero();
    if (za != zb) return za;
    if (!(a[i] == b[i])) return a[i] < b[i];
  }
  return false;
}

std::string point_str(const PPoint& p) {
  return "[" + p[0].str() + ":" + p[1].str() + ":" + p[2].str() + "]";
}

namespace {

Scalar eval_point(const Poly& p, const PPoint& v) { return p.eval({v[0], v[1], v[2]}); }

void add_point(std::vector<PPoint>& pts, PPoint p) {
  p = normalize_point(p);
  for (const auto& q : pts)
    if (q == p) return;
  pts.push_back(p);
}

std::vector<PPoint> line_points(const Poly& l) {
  const Field* F = l.field();
  Scalar a = l.coeff(Exps{1, 0, 0}), b = l.coeff(Exps{0, 1, 0}), c = l.coeff(Exps{0, 0, 1});
  Scalar z(F);
  std::vector<PPoint> pts;
  for (PPoint p : {PPoint{z, c, -b}, PPoint{c, z, -a}, PPoint{b, -a, z}})
    if (!(p[0].is_zero() && p[1].is_zero() && p[2].is_zero())) add_point(pts, p);
  return pts;
}

struct Partial {
  std::vector<PPoint> points;
  std::vector<UPoly> unresolved;
  std::vector<Poly> curves;
};

// Zeros of coprime forms a, b that also annihilate every form in `all`.
void finite_pair(const Poly& a, const Poly& b, const std::vector<Poly>& all, Partial& out) {
  const Field* F = a.field();
  Scalar zero(F), one(F, 1L);
  std::vector<PPoint> centers = {{zero, one, zero}, {one, zero, zero}, {zero, zero, one},
                                 {one, one, zero}, {zero, one, one},  {one, zero, one},
                                 {one, one, one}};
  for (std::uint64_t i = 2; centers.size() < 64; ++i) {
    Scalar t;
    if (!sequence_element(F, i, t)) break;
    centers.push_back({one, t, t * t});
  }
  PPoint c{};
  bool found = false;
  for (const auto& cand : centers) {
    if (!eval_point(a, cand).is_zero() || !eval_point(b, cand).is_zero()) {
      c = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no projection center off a finite zero set");
  int i0 = !c[1].is_zero() ? 1 : (!c[0].is_zero() ? 0 : 2);
  std::vector<int> others;
  for (int k = 0; k < 3; ++k)
    if (k != i0) others.push_back(k);
  Mat m(3, Vec(3, zero));
  for (int r = 0; r < 3; ++r) m[r][1] = c[r];
  m[others[0]][0] = one;
  m[others[1]][2] = one;
  auto tr = [&](const Poly& p) { return affine_subst(p, m, {}); };
  Poly a2 = tr(a), b2 = tr(b);
  bool a_full = !eval_point(a, c).is_zero();
  const Poly& lead = a_full ? a2 : b2;
  int dl = a_full ? a.degree() : b.degree();
  Poly r = resultant(a2, b2, 1, a.degree(), b.degree());
  std::vector<Poly> rest;
  for (const auto& g : all) {
    if (g == a || g == b) continue;
    Poly g2 = tr(g);
    rest.push_back(g2);
    Poly rg = resultant(lead, g2, 1, dl, g.degree());
    if (!rg.is_zero()) r = poly_gcd(r, rg);
  }
  if (r.is_zero()) throw std::logic_error("resultant of coprime forms vanished");
  if (r.degree() == 0) return;
  auto roots = rational_binary_roots(r, 0, 2);
  if (roots.residual.degree() > 0) out.unresolved.push_back(roots.residual);
  for (const auto& pr : roots.roots) {
    int n = 3;
    std::vector<Poly> img = {Poly::constant(pr.a, n), Poly::var(F, n, 1), Poly::constant(pr.b, n)};
    UPoly u(F);
    for (const Poly* g : {&a2, &b2}) u = ugcd(u, to_upoly(g->subst(img), 1));
    for (const auto& g : rest) u = ugcd(u, to_upoly(g.subst(img), 1));
    if (u.is_zero() || u.degree() <= 0) continue;
    auto sp = split_linear(u);
    if (sp.residual.degree() > 0) out.unresolved.push_back(sp.residual);
    for (const auto& [y0, mult] : sp.roots) {
      (void)mult;
      Vec v = mat_vec(m, {pr.a, y0, pr.b});
      add_point(out.points, {v[0], v[1], v[2]});
    }
  }
}

void solve_finite(std::vector<Poly> g, Partial& out) {
  std::vector<Poly> keep;
  for (auto& p : g) {
    if (p.is_zero()) continue;
    if (p.degree() == 0) return;
    keep.push_back(p.monic());
  }
  g = std::move(keep);
  if (g.empty()) throw std::logic_error("finite solve on an empty system");
  std::sort(g.begin(), g.end(), [](const Poly& x, const Poly& y) { return x.degree() < y.degree(); });
  const Poly a = g[0];
  if (g.size() == 1) {
    out.curves.push_back(a);
    return;
  }
  for (std::size_t i = 1; i < g.size(); ++i) {
    Poly h = poly_gcd(a, g[i]);
    if (h.degree() == 0) {
      finite_pair(a, g[i], g, out);
      return;
    }
  }
  // Every other form shares a factor with a.
  Poly h = poly_gcd(a, g[1]);
  if (h == a) {
    std::vector<Poly> rest(g.begin(), g.end());
    rest.erase(rest.begin() + 1);
    solve_finite(rest, out);
    return;
  }
  Poly q = *divide_exact(a, h);
  std::vector<Poly> g1 = g, g2 = g;
  g1[0] = h;
  g2[0] = q;
  solve_finite(g1, out);
  solve_finite(g2, out);
}

}  // namespace

ZeroSet common_zeros(const std::vector<Poly>& forms) {
  ZeroSet zs;
  std::vector<Poly> g;
  for (const auto& p : forms) {
    if (p.nvars() != 3) throw DimensionMismatch("common zeros need forms in three variables");
    zs.field = p.field();
    if (p.is_zero()) continue;
    if (p.homogeneous_part(p.degree()) != p) throw std::invalid_argument("form is not homogeneous");
    if (p.degree() == 0) return zs;
    g.push_back(p);
  }
  if (g.empty()) {
    zs.whole_plane = true;
    return zs;
  }
  const Field* F = zs.field;
  Poly h(F, 3);
  for (const auto& p : g) h = poly_gcd(h, p);
  Partial part;
  if (h.degree() > 0) {
    auto lf = linear_factors(h);
    for (const auto& [l, m] : lf.factors) {
      (void)m;
      zs.lines.push_back(l);
      for (const auto& p : line_points(l)) add_point(part.points, p);
    }
    if (lf.cofactor.degree() > 0) {
      zs.curves.push_back(lf.cofactor);
      // A component without rational lines still may carry a rational singular point.
      Poly cf = lf.cofactor;
      std::vector<Poly> sing = {cf, cf.derivative(0), cf.derivative(1), cf.derivative(2)};
      if (cf.degree() >= 2) {
        ZeroSet s = common_zeros(sing);
        for (const auto& p : s.points) add_point(part.points, p);
      }
    }
    std::vector<Poly> red;
    for (const auto& p : g) red.push_back(*divide_exact(p, h));
    solve_finite(red, part);
  } else {
    solve_finite(g, part);
  }
  for (const auto& c : part.curves) {
    auto lf = linear_factors(c);
    for (const auto& [l, m] : lf.factors) {
      (void)m;
      zs.lines.push_back(l);
      for (const auto& p : line_points(l)) add_point(part.points, p);
    }
    if (lf.cofactor.degree() > 0) zs.curves.push_back(lf.cofactor);
  }
  for (const auto& p : part.points) {
    bool ok = true;
    for (const auto& f : g)
      if (!eval_point(f, p).is_zero()) ok = false;
    if (ok) add_point(zs.points, p);
  }
  std::sort(zs.points.begin(), zs.points.end(), point_less);
  zs.unresolved = part.unresolved;
  return zs;
}

ZeroSet common_zeros_split(const std::vector<Poly>& forms) {
  ZeroSet zs = common_zeros(forms);
  if (zs.field == nullptr || zs.field->is_rational()) return zs;
  const Field* big = zs.field;
  for (const auto& u : zs.unresolved) big = common_extension(big, splitting_field(u));
  if (big == zs.field) return zs;
  std::vector<Poly> emb;
  for (const auto& p : forms) emb.push_back(p.embed(big));
  ZeroSet out = common_zeros(emb);
  out.field = big;
  return out;
}

}  // namespace affc
