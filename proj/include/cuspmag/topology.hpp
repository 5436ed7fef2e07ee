#pragma once

#include "cuspmag/model.hpp"
#include "cuspmag/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cuspmag {

enum class TrapReason { Phi0NonConstant, Theta0NonClosed, FluxNonIntegral, Integral };

/// Stable reason codes: "phi0-nonconstant", "theta0-nonclosed",
/// "flux-nonintegral", "integral".
std::string_view reason_code(TrapReason reason);

struct ComponentVerdict {
  std::string label;
  bool trapping = false;
  TrapReason reason = TrapReason::Integral;
};

struct Verdict {
  std::vector<ComponentVerdict> components;
  /// Trapping on every component.
  bool trapping = false;
  /// Non-trapping on every component.
  bool maximal_non_trapping = false;

  bool non_trapping() const { return !trapping; }
};

Verdict classify_potential(const ManifoldSpec& spec, const PotentialSpec& potential);

/// Relative class of an exact field, stored already divided by 2*pi, one
/// vector per boundary component on which the field vanishes.
struct FieldClass {
  bool h1_zero = false;
  std::set<std::string> vanishes_on;
  std::map<std::string, RationalVector> class_components;
};

void validate(const FieldClass& field);

/// True when the field is trapping. Refuses unless H^1(X) = 0 was declared.
bool classify_field(const FieldClass& field);

/// The cyclic group generator*Z, or all of R.
struct CyclicGroup {
  bool all_reals = false;
  Rational generator{0};

  bool contains(const Rational& g) const;
};

/// Coupling constants g for which g*B is non-trapping: a union of cyclic
/// groups, one per component on which B vanishes. A single member is a group.
struct GroupDescription {
  std::vector<std::pair<std::string, CyclicGroup>> members;

  bool contains(const Rational& g) const;
  bool is_group() const;
};

GroupDescription coupling_group(const FieldClass& field);
/// Generator of {g : g*c integral} for one class vector c (all reals if c = 0).
CyclicGroup coupling_group(const RationalVector& class_vector);

struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
};

/// U*A*V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
SmithForm smith_normal_form(const IntegerMatrix& A);

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);
Integer determinant(const IntegerMatrix& a);

struct SurfaceGaugeOptions {
  bool trapping_exists = false;
  bool non_trapping_exists = false;
};

/// Gauge options for a field on a complete hyperbolic surface with cusps.
SurfaceGaugeOptions surface_gauge_options(int cusps, bool orientable, const Rational& b_class);

/// Integer presentation of the restriction image L = i_M(H^1(X)) inside
/// H^1(M) = Z^{2h} for an orientable hyperbolic 3-manifold with h torus cusps.
struct CohomologyPresentation {
  int dimension = 3;
  bool orientable = true;
  std::vector<std::size_t> boundary_rank;
  /// 2h rows, h columns; columns span L.
  IntegerMatrix l_basis;
};

void validate(const CohomologyPresentation& pres);

struct CuspGauge {
  /// L projects onto all of H^1(M_j): every class admits a non-trapping gauge.
  bool surjective = false;
  /// Primitive integer direction of the projection of L onto H^1(M_j).
  std::vector<Integer> direction;
  /// Generator of the cyclic subgroup in the intercept coordinate.
  Rational generator{1};
  bool member = false;
};

struct ThreeManifoldGauge {
  bool non_trapping_exists = false;
  Integer q{1};
  std::vector<CuspGauge> cusps;
};

/// b_components[j] is the class of [B] on cusp j, measured as the intercept
/// of a lift on the coordinate axis transverse to the projected L direction
/// (the first axis unless L is horizontal there).
ThreeManifoldGauge three_manifold_gauge(const CohomologyPresentation& pres, const RationalVector& b_components);

}  // namespace cuspmag
