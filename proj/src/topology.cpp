#include "cuspmag/topology.hpp"

#include "cuspmag/error.hpp"

#include <algorithm>

namespace cuspmag {

std::string_view reason_code(TrapReason reason) {
  switch (reason) {
    case TrapReason::Phi0NonConstant: return "phi0-nonconstant";
    case TrapReason::Theta0NonClosed: return "theta0-nonclosed";
    case TrapReason::FluxNonIntegral: return "flux-nonintegral";
    case TrapReason::Integral: return "integral";
  }
  return "integral";
}

Verdict classify_potential(const ManifoldSpec& spec, const PotentialSpec& potential) {
  validate(spec, potential);
  Verdict v;
  bool all_trapping = true, none_trapping = true;
  for (std::size_t i = 0; i < spec.ends.size(); ++i) {
    const auto& pe = potential.per_end[i];
    ComponentVerdict c{spec.ends[i].label, true, TrapReason::Integral};
    if (!pe.phi0.is_constant())
      c.reason = TrapReason::Phi0NonConstant;
    else if (!pe.closed)
      c.reason = TrapReason::Theta0NonClosed;
    else if (!is_integral(pe.flux))
      c.reason = TrapReason::FluxNonIntegral;
    else
      c.trapping = false;
    all_trapping = all_trapping && c.trapping;
    none_trapping = none_trapping && !c.trapping;
    v.components.push_back(std::move(c));
  }
  v.trapping = all_trapping;
  v.maximal_non_trapping = none_trapping;
  return v;
}

void validate(const FieldClass& field) {
  for (const auto& label : field.vanishes_on)
    if (!field.class_components.count(label))
      throw ConfigError("missing class for component in vanishes_on", "field.class." + label);
  for (const auto& [label, cls] : field.class_components) {
    if (!field.vanishes_on.count(label))
      throw ConfigError("class given for a component not in vanishes_on", "field.class." + label);
    if (cls.empty()) throw ConfigError("class vector must be non-empty", "field.class." + label);
  }
}

bool classify_field(const FieldClass& field) {
  if (!field.h1_zero) throw PreconditionError("gauge-dependent: classify a potential instead");
  validate(field);
  for (const auto& label : field.vanishes_on)
    if (is_integral(field.class_components.at(label))) return false;
  return true;
}

bool CyclicGroup::contains(const Rational& g) const {
  if (all_reals) return true;
  if (generator == 0) return g == 0;
  return is_integral(Rational(g / generator));
}

bool GroupDescription::contains(const Rational& g) const {
  return std::any_of(members.begin(), members.end(), [&](const auto& m) { return m.second.contains(g); });
}

bool GroupDescription::is_group() const {
  if (members.size() <= 1) return true;
  return std::any_of(members.begin(), members.end(), [](const auto& m) { return m.second.all_reals; });
}

CyclicGroup coupling_group(const RationalVector& class_vector) {
  // g*c_i integral for all i  <=>  g in lcm_i (v_i/|u_i|) Z where c_i = u_i/v_i.
  Integer num_lcm = 1, den_gcd = 0;
  bool any = false;
  for (const auto& c : class_vector) {
    if (c == 0) continue;
    Integer u = numerator_of(c), v = denominator_of(c);
    if (u < 0) u = -u;
    num_lcm = any ? lcm(num_lcm, v) : v;
    den_gcd = any ? gcd(den_gcd, u) : u;
    any = true;
  }
  if (!any) return CyclicGroup{true, Rational{0}};
  return CyclicGroup{false, Rational(num_lcm, den_gcd)};
}

GroupDescription coupling_group(const FieldClass& field) {
  validate(field);
  GroupDescription out;
  if (field.vanishes_on.empty()) {
    out.members.emplace_back("", CyclicGroup{false, Rational{0}});
    return out;
  }
  for (const auto& label : field.vanishes_on) out.members.emplace_back(label, coupling_group(field.class_components.at(label)));
  return out;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  const std::size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
  IntegerMatrix c(m, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Integer determinant(const IntegerMatrix& a) {
  RationalMatrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& e : a[i]) r[i].emplace_back(e);
  return numerator_of(determinant(std::move(r)));
}

namespace {

IntegerMatrix identity(std::size_t n) {
  IntegerMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Floor division for the remainder step of the Euclidean reduction.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

struct Reducer {
  IntegerMatrix& D;
  IntegerMatrix& U;
  IntegerMatrix& V;

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(D[a], D[b]);
    std::swap(U[a], U[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (auto& row : D) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < D[dst].size(); ++j) D[dst][j] += f * D[src][j];
    for (std::size_t j = 0; j < U[dst].size(); ++j) U[dst][j] += f * U[src][j];
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (auto& row : D) row[dst] += f * row[src];
    for (auto& row : V) row[dst] += f * row[src];
  }
  void negate_row(std::size_t r) {
    for (auto& e : D[r]) e = -e;
    for (auto& e : U[r]) e = -e;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& A) {
  const std::size_t m = A.size(), n = m ? A[0].size() : 0;
  SmithForm s{identity(m), A, identity(n)};
  Reducer red{s.D, s.U, s.V};
  auto& D = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (pi == m || abs_of(D[i][j]) < abs_of(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return s;  // trailing block is zero
      if (pi != t) red.swap_rows(pi, t);
      if (pj != t) red.swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (D[i][t] != 0) {
          red.add_row(i, t, -floor_div(D[i][t], D[t][t]));
          if (D[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (D[t][j] != 0) {
          red.add_col(j, t, -floor_div(D[t][j], D[t][t]));
          if (D[t][j] != 0) clean = false;
        }
      if (!clean) continue;

      // Divisibility: fold any row whose entries are not multiples of the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            red.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D[t][t] < 0) red.negate_row(t);
  }
  return s;
}

SurfaceGaugeOptions surface_gauge_options(int cusps, bool orientable, const Rational& b_class) {
  if (cusps < 1) throw PreconditionError("a cusped surface has at least one cusp");
  if (!orientable || cusps >= 2) return {true, true};
  const bool integral = is_integral(b_class);
  return {!integral, integral};
}

void validate(const CohomologyPresentation& pres) {
  if (pres.dimension != 3) throw ConfigError("three-manifold presentation requires dimension 3", "three_manifold.dimension");
  if (!pres.orientable) throw ConfigError("three-manifold presentation requires orientable", "three_manifold.orientable");
  const std::size_t h = pres.boundary_rank.size();
  if (h == 0) throw ConfigError("at least one cusp is required", "three_manifold.boundary_rank");
  for (auto r : pres.boundary_rank)
    if (r != 2) throw ConfigError("torus cusps have b1 = 2", "three_manifold.boundary_rank");
  if (pres.l_basis.size() != 2 * h) throw ConfigError("l_basis must have 2h rows", "three_manifold.l_basis");
  for (const auto& row : pres.l_basis)
    if (row.size() != h) throw ConfigError("l_basis must have h columns", "three_manifold.l_basis");
  RationalMatrix q(2 * h, RationalVector(h));
  for (std::size_t i = 0; i < 2 * h; ++i)
    for (std::size_t j = 0; j < h; ++j) q[i][j] = Rational(pres.l_basis[i][j]);
  if (rank(q) != h) throw ConfigError("l_basis does not have full column rank", "three_manifold.l_basis");
  // Isotropy for the boundary intersection form, a sum of 2x2 symplectic blocks.
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = a + 1; b < h; ++b) {
      Integer w = 0;
      for (std::size_t j = 0; j < h; ++j)
        w += pres.l_basis[2 * j][a] * pres.l_basis[2 * j + 1][b] - pres.l_basis[2 * j + 1][a] * pres.l_basis[2 * j][b];
      if (w != 0) throw ConfigError("l_basis is not isotropic for the intersection form", "three_manifold.l_basis");
    }
}

ThreeManifoldGauge three_manifold_gauge(const CohomologyPresentation& pres, const RationalVector& b_components) {
  validate(pres);
  const std::size_t h = pres.boundary_rank.size();
  if (b_components.size() != h) throw ConfigError("b must have one entry per cusp", "three_manifold.b");
  ThreeManifoldGauge out;
  for (std::size_t j = 0; j < h; ++j) {
    CuspGauge cg;
    RationalMatrix proj(2, RationalVector(h));
    for (std::size_t c = 0; c < h; ++c) {
      proj[0][c] = Rational(pres.l_basis[2 * j][c]);
      proj[1][c] = Rational(pres.l_basis[2 * j + 1][c]);
    }
    const std::size_t r = rank(proj);
    if (r == 2) {
      cg.surjective = true;
      cg.member = true;
      out.non_trapping_exists = true;
      out.cusps.push_back(cg);
      continue;
    }
    if (r == 0) throw ConfigError("L projects trivially onto cusp " + std::to_string(j), "three_manifold.l_basis");
    std::size_t col = 0;
    while (pres.l_basis[2 * j][col] == 0 && pres.l_basis[2 * j + 1][col] == 0) ++col;
    Integer l1 = pres.l_basis[2 * j][col], l2 = pres.l_basis[2 * j + 1][col];
    const Integer g = gcd(l1, l2);
    l1 /= g;
    l2 /= g;
    if (l2 < 0 || (l2 == 0 && l1 < 0)) {
      l1 = -l1;
      l2 = -l2;
    }
    cg.direction = {l1, l2};
    // Lattice points of Z^2 translated along the L direction meet the
    // transverse axis in (1/|l2|)Z (first axis) or Z (second axis, L horizontal).
    cg.generator = l2 != 0 ? Rational(1, l2) : Rational(1);
    cg.member = is_integral(Rational(b_components[j] / cg.generator));
    out.non_trapping_exists = out.non_trapping_exists || cg.member;
    out.q = lcm(out.q, denominator_of(cg.generator));
    out.cusps.push_back(cg);
  }
  return out;
}

}  // namespace cuspmag
