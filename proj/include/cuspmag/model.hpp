#pragma once

#include "cuspmag/rational.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace cuspmag {

struct Circle {
  PiScalar length;
};

/// Flat torus R^{d}/Λ described by the Gram matrix of the lattice generators.
/// All entries share one power of pi.
struct FlatTorus {
  std::vector<std::vector<PiScalar>> gram;
};

struct BoundaryComponent {
  std::string label;
  std::variant<Circle, FlatTorus> kind;

  bool is_circle() const { return std::holds_alternative<Circle>(kind); }
  /// First Betti number of the cross-section.
  std::size_t betti() const;
  /// Riemannian volume Vol(M, h0).
  double volume() const;
  /// Gram matrix as (rational coefficients, common power of pi).
  RationalMatrix gram_coefficients() const;
  int gram_pi_power() const;
};

/// End geometry: metric x^{2p}(dx^2/x^4 + h0) on 0 < x <= x0 over each component.
struct ManifoldSpec {
  int n = 2;
  Rational p{1};
  std::vector<BoundaryComponent> ends;
  Rational x0{1, 10};
  Rational core_volume{0};

  /// p <= 1; p > 1 is a metric horn.
  bool complete() const { return p <= 1; }
  const BoundaryComponent& end(const std::string& label) const;
  std::size_t end_index(const std::string& label) const;
};

/// Boundary value of the dx/x^2 coefficient. Either a constant or a list of
/// exact samples on the cross-section; only constancy is ever inspected.
struct Phi0 {
  std::vector<Rational> samples{Rational{0}};
  bool sampled = false;

  bool is_constant() const;
};

struct ComponentPotential {
  Phi0 phi0;
  /// Holonomy class divided by 2*pi in the chosen integer basis of H^1(M).
  RationalVector flux;
  bool closed = true;

  /// Spectral modules require phi0 constant and theta0 closed.
  bool normalized() const { return closed && phi0.is_constant(); }
};

/// One entry per end, aligned with ManifoldSpec::ends.
struct PotentialSpec {
  std::vector<ComponentPotential> per_end;
};

/// Uniform grid on [r0, r0 + cells*h] with Dirichlet conditions at both ends;
/// the unknowns live on the cells-1 interior nodes.
struct Grid {
  double r0 = 0.0;
  double h = 0.02;
  std::size_t cells = 8;

  static Grid spanning(double r0, double r_max, double h);

  double r_max() const { return r0 + static_cast<double>(cells) * h; }
  std::size_t interior() const { return cells - 1; }
  double node(std::size_t i) const { return r0 + static_cast<double>(i + 1) * h; }
};

/// Volume of the end 0 < x <= x0 of one component; +infinity when np <= 1.
double end_volume(const ManifoldSpec& spec, const BoundaryComponent& component);
/// Sum of end volumes plus the user-supplied core volume.
double total_volume(const ManifoldSpec& spec);

/// Geodesic coordinate r = L(x): -ln x for p = 1, x^{p-1}/(1-p) otherwise.
double radial_coordinate(const ManifoldSpec& spec, double x);
double radial_coordinate(const Rational& p, double x);
/// Inverse of radial_coordinate.
double boundary_coordinate(const Rational& p, double r);
/// r0 = L(x0), the left end of every radial grid.
double radial_origin(const ManifoldSpec& spec);

/// Checks n, p, component kinds and Gram positivity. Throws ConfigError with
/// a field path.
void validate(const ManifoldSpec& spec);
void validate(const ManifoldSpec& spec, const PotentialSpec& potential);

}  // namespace cuspmag
