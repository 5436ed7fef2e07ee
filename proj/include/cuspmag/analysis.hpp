#pragma once

#include "cuspmag/radial.hpp"
#include "cuspmag/topology.hpp"

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cuspmag {

enum class WeylRegime { Above, Critical, Below };
std::string_view regime_name(WeylRegime regime);

struct WeylPrediction {
  WeylRegime regime = WeylRegime::Above;
  double constant = 0.0;
  /// N(lambda) ~ constant * lambda^exponent * (log lambda if log_factor).
  double exponent = 1.0;
  bool log_factor = false;
  std::string law;
  double total_volume = 0.0;     // Vol(X, g_p)
  double boundary_volume = 0.0;  // Vol(M, h0)
  double sphere_volume = 0.0;    // Vol(S^{n-1})
  std::optional<double> zeta_s;
  std::optional<double> zeta_value;
  std::optional<double> gamma_prefactor;

  double shape(double lambda) const;
  double predict(double lambda) const { return constant * shape(lambda); }
};

/// Leading Weyl constant for a trapping potential. The Below regime uses
/// the transverse zeta at s = (1-p)/(2p), the exponent produced by the
/// separated semiclassical count (see the config documentation).
WeylPrediction weyl_constants(const ManifoldSpec& spec, const PotentialSpec& potential, double zeta_tol = 1e-10);

struct WeylFit {
  double fitted = 0.0;
  double predicted = 0.0;
  double relative_error = 0.0;
  std::vector<double> ratios;  // N / prediction, every sample
  double mean_ratio = 0.0;
  /// Relative drift of N / (fitted shape) across the fitted range.
  double residual_trend = 0.0;
  bool law_mismatch = false;
  std::size_t fitted_from = 0;  // index of the first sample in the fit
};

WeylFit weyl_fit(const std::vector<double>& lambdas, const std::vector<double>& counts, const WeylPrediction& prediction);

struct ThresholdEstimate {
  bool discrete = false;
  std::optional<double> kappa_hat;
  std::optional<double> richardson_slope;
  double expected_kappa = 0.0;
  std::vector<double> r_max;
  std::vector<double> ground_states;
  /// Trapping path: max relative change of the ground state over the schedule.
  double stability = 0.0;
};

struct ThresholdOptions {
  double h = 0.01;
  double tol = 1e-10;
  std::optional<double> inverse_square_override;
};

ThresholdEstimate threshold_estimate(const ManifoldSpec& spec, const PotentialSpec& potential,
                                     const std::vector<double>& r_max_schedule, const ThresholdOptions& options);

struct HornEstimate {
  std::vector<double> eps;
  std::vector<double> ground_states;
  std::vector<double> growth;  // ground(eps/2) / ground(eps)
  double expected_growth = 0.0;  // 2^{2p-2}
};

/// Ground state of the x-coordinate zero-mode model as eps halves.
HornEstimate horn_threshold(const ManifoldSpec& spec, double eps0, int halvings, std::size_t cells = 4000);

struct CouplingRow {
  Rational g;
  RationalVector flux;
  bool non_trapping = false;
  bool zero_mode = false;
  double ground_state = 0.0;
  double spacing = 0.0;       // at box length Lambda
  double spacing_long = 0.0;  // at 2 Lambda
  double spacing_ratio = 0.0;
};

struct CouplingScan {
  RationalVector base_flux;
  CyclicGroup group;
  double lambda_star = 0.0;
  double box = 0.0;
  std::vector<CouplingRow> rows;
};

struct CouplingOptions {
  double lambda_star = std::numeric_limits<double>::quiet_NaN();  // default kappa + 1
  double box = 40.0;
  double h = 0.02;
  std::optional<double> inverse_square_override;
  unsigned threads = 1;
};

CouplingScan coupling_scan(const ManifoldSpec& spec, const RationalVector& base_flux, const std::vector<Rational>& g_grid,
                           const CouplingOptions& options);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct MourreProbeReport {
  double R = 0.0;  // +inf for the unbounded branch
  Interval window;
  double kappa = 0.0;
  std::size_t window_dimension = 0;
  double min_projected_eigenvalue = 0.0;
  /// Fraction of the negative form density of the minimizing window state
  /// sitting in the compact region r <= r0 + 2 + margin or against the wall.
  double localization_fraction = 0.0;
  /// Minimum of the commutator form over far-supported window states.
  double far_floor = 0.0;
  double epsilon_R = 0.0;
  double asymmetry = 0.0;
  bool cluster_flag = false;
};

struct MourreOptions {
  double h = 0.05;
  double r_max = 100.0;  // absolute right end of the grid
  double margin = 4.0;
};

MourreProbeReport mourre_probe(const ManifoldSpec& spec, const PotentialSpec& potential, double R, Interval window,
                               const MourreOptions& options);

/// Discrete Phi_R(-i d/dr) = -i G on n nodes; G is real antisymmetric,
/// stored row-major. R = +inf gives the central difference.
std::vector<double> phi_operator(std::size_t n, double h, double R);
/// i[H, S_R] as a dense row-major matrix for a zero-mode operator, before
/// symmetrization. xi and the cutoff are anchored at op.grid.r0.
std::vector<double> commutator_matrix(const RadialOperator& op, double R);
/// <phi, i[H, S_inf] phi> with banded stencils only.
double commutator_form_unbounded(const RadialOperator& op, const std::vector<double>& phi);

/// C^2 bump: 1 on [-1, 1], 0 outside [-2, 2].
double bump(double x);
/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 clamped to [0, 1].
double smoothstep(double t);

struct HolderResult {
  double exponent = 0.0;
  double constant = 0.0;
  bool stable = false;
  double epsilon_floor = 0.0;
  std::vector<std::complex<double>> z_samples;
  std::vector<double> r_max;
  std::vector<double> constants;  // per r_max
  std::vector<double> exponents;  // per r_max
  std::vector<double> distances;  // pairwise |z1 - z2| (first r_max)
  std::vector<double> differences;
};

struct HolderOptions {
  std::vector<double> r_max{40.0, 80.0, 160.0};
  double h = 0.02;
  std::size_t samples = 6;
  std::optional<double> inverse_square_override;
};

HolderResult holder_probe(const ManifoldSpec& spec, const PotentialSpec& potential, double s_weight, Interval window,
                          std::vector<std::complex<double>> z_samples, const HolderOptions& options);

struct ResolventGrowth {
  double center = 0.0;
  double mu = 0.0;
  std::vector<double> eta;
  std::vector<double> norms;
};

/// Weighted resolvent norm at center + i eta for the lowest contributing
/// mode; center defaults to that mode's ground state.
ResolventGrowth resolvent_growth(const ManifoldSpec& spec, const PotentialSpec& potential, double s_weight,
                                 std::optional<double> center, const std::vector<double>& etas, const HolderOptions& options);

}  // namespace cuspmag
