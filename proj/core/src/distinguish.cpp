#include <map>

#include "affc/classify.hpp"
#include "affc/errors.hpp"

namespace affc {

namespace {

using Key = std::array<std::uint32_t, 3>;

ZeroSet zeros_of(const std::vector<Poly>& forms) {
  if (forms.empty()) {
    ZeroSet z;
    z.whole_plane = true;
    return z;
  }
  return forms[0].field()->is_rational() ? common_zeros(forms) : common_zeros_split(forms);
}

// Some zero exists over the algebraic closure.
bool has_zero(const ZeroSet& z) { return !z.empty() || !z.unresolved.empty(); }

Poly parts(const Poly& g, int lo) {
  Poly out(g.field(), g.nvars());
  for (int d = lo; d <= g.degree(); ++d) out += g.homogeneous_part(d);
  return out;
}

Scalar quadric_det(const Poly& q) {
  const Field* F = q.field();
  Scalar half = Scalar(F, 2L).inverse();
  Mat m(3, Vec(3, Scalar(F)));
  for (const auto& t : q.terms()) {
    int idx[2], k = 0;
    for (int i = 0; i < 3; ++i)
      for (std::uint32_t j = 0; j < t.e[i]; ++j) idx[k++] = i;
    if (idx[0] == idx[1]) {
      m[idx[0]][idx[0]] = t.c;
    } else {
      m[idx[0]][idx[1]] = t.c * half;
      m[idx[1]][idx[0]] = t.c * half;
    }
  }
  return mat_det(m);
}

// The quadratic cofactor of `form` once every linear factor over the
// algebraic closure is removed, when that cofactor is an irreducible conic.
std::optional<Poly> conic_part(const Poly& form) {
  if (form.degree() < 2) return std::nullopt;
  if (form.field()->is_rational()) {
    Poly cof = linear_factors(form).cofactor;
    // Over Q a quadratic without rational lines is a conic iff it is smooth;
    // a cubic without rational lines has no conic component.
    if (cof.degree() == 2 && !quadric_det(cof).is_zero()) return cof;
    return std::nullopt;
  }
  Poly cur = form;
  while (cur.degree() >= 1) {
    Poly e = cur.embed(linear_factor_field(cur));
    LinearFactors lf = linear_factors(e);
    if (lf.factors.empty()) break;
    cur = lf.cofactor;
  }
  if (cur.degree() == 2) return cur;
  return std::nullopt;
}

std::vector<Poly> pivot_forms(const PolyMap& f) {
  std::vector<Poly> forms;
  auto add = [&](const Poly& g) {
    if (!g.is_zero()) forms.push_back(g);
  };
  for (const auto& g : f.components()) {
    Poly f3 = g.homogeneous_part(3);
    add(f3);
    for (int i = 0; i < 3; ++i) add(f3.derivative(i));
    add(g.homogeneous_part(2));
  }
  return forms;
}

std::vector<Poly> top_forms(const PolyMap& f) {
  std::vector<Poly> forms;
  for (const auto& g : f.components())
    for (int d : {3, 2}) {
      Poly h = g.homogeneous_part(d);
      if (!h.is_zero()) forms.push_back(h);
    }
  return forms;
}

// Linear forms s, t vanishing at v.
std::pair<Poly, Poly> forms_through(const PPoint& v) {
  const Field* F = v[0].field();
  Poly x = Poly::var(F, 3, 0), y = Poly::var(F, 3, 1), z = Poly::var(F, 3, 2);
  if (!v[0].is_zero()) return {y - x.scaled(v[1]), z - x.scaled(v[2])};
  if (!v[1].is_zero()) return {x, z - y.scaled(v[2])};
  return {x, y};
}

Poly product_of_linear_factors(const Poly& g) {
  const Field* F = g.field();
  Poly out = Poly::constant(F, 3, 1);
  if (F->is_rational()) {
    LinearFactors lf = linear_factors(g);
    if (lf.cofactor.degree() == 2 && quadric_det(lf.cofactor).is_zero())
      throw FieldExtensionNeeded(lf.cofactor.str(), 2);
    for (const auto& [l, m] : lf.factors) out *= l.pow(static_cast<unsigned>(m));
    return out;
  }
  Poly cur = g;
  while (cur.degree() >= 1) {
    const Field* G = linear_factor_field(cur);
    LinearFactors lf = linear_factors(cur.embed(G));
    if (lf.factors.empty()) break;
    out = out.embed(G);
    for (const auto& [l, m] : lf.factors) out *= l.pow(static_cast<unsigned>(m));
    cur = lf.cofactor;
  }
  return out;
}

}  // namespace

ZeroSet cone_vertices(const std::vector<Poly>& forms) {
  std::vector<Poly> coeffs;
  for (const auto& F : forms) {
    if (F.is_zero()) continue;
    if (F.nvars() != 3) throw DimensionMismatch("forms in three variables expected");
    const Field* K = F.field();
    std::vector<Poly> img;
    for (int i = 0; i < 3; ++i) img.push_back(Poly::var(K, 6, i) + Poly::var(K, 6, i + 3));
    Poly G = F.subst(img) - F.with_nvars(6);
    std::map<Key, Poly> by_x;
    for (const auto& t : G.terms()) {
      Key k{t.e[0], t.e[1], t.e[2]};
      Exps e{};
      for (int i = 0; i < 3; ++i) e[i] = t.e[i + 3];
      auto it = by_x.try_emplace(k, Poly(K, 3)).first;
      it->second += Poly::monomial(e, t.c, 3);
    }
    // Each coefficient is homogeneous in v only after splitting by degree.
    for (auto& [k, c] : by_x)
      for (int d = 0; d <= c.degree(); ++d) {
        Poly h = c.homogeneous_part(d);
        if (h.is_zero()) continue;
        if (d == 0) {
          ZeroSet none;
          none.field = K;
          return none;
        }
        coeffs.push_back(h);
      }
  }
  ZeroSet z = zeros_of(coeffs);
  if (!z.field && !forms.empty()) z.field = forms[0].field();
  return z;
}

bool has_conic_factor(const Poly& form) { return conic_part(form).has_value(); }

SpanAnalysis linear_span_analysis(const std::vector<Poly>& V, int d) {
  std::vector<Poly> basis;
  for (const auto& g : V) {
    if (g.is_zero()) continue;
    if (g.nvars() != 3) throw DimensionMismatch("forms in three variables expected");
    if (g.homogeneous_part(d) != g) throw std::invalid_argument("span elements must be forms of degree " + std::to_string(d));
    basis.push_back(g);
  }
  if (basis.empty()) throw std::invalid_argument("span must be nonzero");
  const Field* F = basis[0].field();
  SpanAnalysis out;
  out.field = F;
  auto lift = [&](const Field* G) { out.field = common_extension(out.field, G); };

  // Coefficient rows; the rank decides whether a gcd carries information.
  std::map<Key, int> cols;
  for (const auto& g : basis)
    for (const auto& t : g.terms()) cols.try_emplace(Key{t.e[0], t.e[1], t.e[2]}, 0);
  int c = 0;
  for (auto& [k, i] : cols) i = c++;
  Mat rows;
  for (const auto& g : basis) {
    Vec r(cols.size(), Scalar(F));
    for (const auto& t : g.terms()) r[cols[Key{t.e[0], t.e[1], t.e[2]}]] = t.c;
    rows.push_back(r);
  }
  int dim = mat_rank(rows);

  if (dim >= 2) {
    Poly g = basis[0];
    for (std::size_t i = 1; i < basis.size(); ++i) g = poly_gcd(g, basis[i]);
    if (g.degree() >= 1) {
      Poly l = product_of_linear_factors(g);
      if (l.degree() >= 1) {
        out.common_factor = l;
        lift(l.field());
      }
    }
  }

  ZeroSet zs = cone_vertices(basis);
  if (!zs.points.empty()) {
    out.hull = forms_through(zs.points[0]);
    lift(zs.field);
  } else if (zs.whole_plane) {
    Poly x = Poly::var(F, 3, 0), y = Poly::var(F, 3, 1);
    out.hull = std::pair{x, y};
  } else if (!zs.unresolved.empty()) {
    throw FieldExtensionNeeded(minpoly_str(zs.unresolved[0]), zs.unresolved[0].degree());
  }
  if (out.hull) {
    // In coordinates (u, s, t) with u nonzero at the vertex, no element of V
    // may involve u.
    const Poly& s = out.hull->first;
    const Poly& t = out.hull->second;
    const Field* G = s.field();
    auto row = [&](const Poly& l) {
      Vec r;
      for (int i = 0; i < 3; ++i) {
        Exps e{};
        e[i] = 1;
        r.push_back(l.coeff(e));
      }
      return r;
    };
    Vec rs = row(s), rt = row(t);
    Mat m;
    for (int i = 0; i < 3 && m.empty(); ++i) {
      Vec u(3, Scalar(G));
      u[i] = Scalar(G, 1L);
      Mat cand = {u, rs, rt};
      if (mat_rank(cand) == 3) m = cand;
    }
    Mat inv = *mat_inverse(m);
    std::vector<Poly> img;
    for (int j = 0; j < 3; ++j) {
      Poly e(G, 3);
      for (int i = 0; i < 3; ++i) e += Poly::var(G, 3, i).scaled(inv[j][i]);
      img.push_back(e);
    }
    for (const auto& g : basis)
      if (g.embed(G).subst(img).degree_in(0) > 0) throw WitnessFailure("span is not inside k[s, t]");
  }

  std::uint64_t p = F->characteristic();
  if (p != 0 && static_cast<std::uint64_t>(d) == p && dim == 3) {
    bool pure = true;
    for (const auto& g : basis)
      for (const auto& t : g.terms())
        if (t.e[0] != static_cast<std::uint32_t>(d) && t.e[1] != static_cast<std::uint32_t>(d) &&
            t.e[2] != static_cast<std::uint32_t>(d))
          pure = false;
    out.power_space = pure;
  }

  for (const auto& g : basis)
    if (auto q = conic_part(g)) {
      out.conic_factor = *q;
      lift(q->field());
      break;
    }

  auto up = [&](Poly& g) { g = g.embed(out.field); };
  if (out.common_factor) up(*out.common_factor);
  if (out.hull) up(out.hull->first), up(out.hull->second);
  if (out.conic_factor) up(*out.conic_factor);

  if (out.common_factor)
    out.kind = SpanAnalysis::Kind::CommonFactor;
  else if (out.hull)
    out.kind = SpanAnalysis::Kind::TwoVariableHull;
  else if (out.power_space)
    out.kind = SpanAnalysis::Kind::PowerSpace;
  return out;
}

const char* span_kind_name(SpanAnalysis::Kind k) {
  switch (k) {
    case SpanAnalysis::Kind::CommonFactor: return "common-factor";
    case SpanAnalysis::Kind::TwoVariableHull: return "two-variable-hull";
    case SpanAnalysis::Kind::PowerSpace: return "power-space";
    default: return "none";
  }
}

int family_distinguisher(const PolyMap& f) {
  int n = f.target_dim();
  const Field* F = f.field();
  if (n == 1) {
    Poly f3 = f[0].homogeneous_part(3);
    if (!f3.is_zero() && has_conic_factor(f3)) return 3;
    return has_zero(cone_vertices(top_forms(f))) ? 1 : 2;
  }
  if (n == 3) return has_zero(cone_vertices(top_forms(f))) ? 10 : 11;
  std::vector<Poly> pf = pivot_forms(f);
  if (!pf.empty() && !has_zero(zeros_of(pf))) return F->characteristic() == 2 ? 8 : 9;
  for (const auto& g : f.components()) {
    Poly f3 = g.homogeneous_part(3);
    if (!f3.is_zero() && has_conic_factor(f3)) return 7;
  }
  if (has_zero(cone_vertices(top_forms(f)))) return 4;
  Poly u0 = parts(f[0], 2), u1 = parts(f[1], 2);
  if (u0.is_zero() || u1.is_zero()) return 6;
  Scalar r = u1.leading().c / u0.leading().c;
  return u1 == u0.scaled(r) ? 6 : 5;
}

}  // namespace affc
