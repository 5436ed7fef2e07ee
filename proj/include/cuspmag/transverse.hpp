#pragma once

#include "cuspmag/model.hpp"

#include <string>
#include <vector>

namespace cuspmag {

struct ModeEntry {
  double mu = 0.0;
  /// mu = 4 * exact * pi^(2 - gram_pi_power), grouped on this exact value.
  Rational exact{0};
  std::size_t multiplicity = 0;
  /// Every lattice index k with eigenvalue mu, lexicographically sorted.
  std::vector<std::vector<long>> lattice_indices;
};

/// Eigenvalues of the boundary magnetic Laplacian d*d with constant closed
/// theta0 of holonomy a: mu_k = 4 pi^2 (k+a)^T G^{-1} (k+a).
struct ModeSpectrum {
  std::string label;
  RationalVector flux;
  double mu_max = 0.0;
  std::vector<ModeEntry> entries;

  std::size_t count() const;
  std::size_t count_at_most(double mu) const;
};

ModeSpectrum mode_spectrum(const BoundaryComponent& component, const RationalVector& flux, double mu_max);

/// Number of boundary components on which the potential is non-trapping,
/// i.e. the dimension of the low-energy space ker(d_theta).
std::size_t kernel_dimension(const ManifoldSpec& spec, const PotentialSpec& potential);

struct ZetaResult {
  double value = 0.0;
  /// Rigorous bound on the omitted tail.
  double tail_bound = 0.0;
  double radius = 0.0;
  std::size_t terms = 0;
};

/// Sum of mu^{-s} over the nonzero modes, accurate to tol. Needs
/// s > (n-1)/2; the enumeration radius is the smallest one whose
/// lattice-point tail bound is below tol.
ZetaResult spectral_zeta_detail(const BoundaryComponent& component, const RationalVector& flux, double s, double tol);
double spectral_zeta(const BoundaryComponent& component, const RationalVector& flux, double s, double tol);
/// Partial sum over modes with sqrt(mu) <= radius, plus the tail bound there.
ZetaResult spectral_zeta_truncated(const BoundaryComponent& component, const RationalVector& flux, double s,
                                   double radius);

}  // namespace cuspmag
