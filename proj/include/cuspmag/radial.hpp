#pragma once

#include "cuspmag/model.hpp"
#include "cuspmag/transverse.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cuspmag {

/// Radial profile used by perturbations.
struct FunctionDescriptor {
  enum class Form { Power, Exponential, Gaussian };
  Form form = Form::Power;
  Rational coefficient{0};
  /// Decay exponent (Power) or rate (Exponential).
  Rational exponent{2};
  Rational center{0};
  Rational width{1};

  double operator()(double r) const;
};

struct Perturbation {
  enum class Kind { None, ShortRangePotential, RadialConformal };
  Kind kind = Kind::None;
  FunctionDescriptor profile;
  /// Decay margin for the short-range condition sup |L^{1+eps} W| < inf.
  Rational epsilon{1, 2};
};

/// Coefficients of the separated end operator
///   -d^2/dr^2 + V(r) + Q(r) mu
/// with V = ((n-1)/2)^2, Q = e^{2r} for p = 1 and
/// V = c / r^2, Q = ((1-p) r)^{2p/(1-p)} for p < 1.
struct RadialModel {
  int n = 2;
  Rational p{1};
  double r0 = 0.0;
  double inverse_square = 0.0;

  double potential(double r) const;
  double transverse_factor(double r) const;
  /// Bottom of the essential spectrum of the zero mode: V(infinity).
  double threshold() const;
};

/// c0 = ((2-n)p - 1)/2 of the low-energy operator D*D + c0^2 x^{2-2p}.
Rational low_energy_c0(int n, const Rational& p);
/// Inverse-square coefficient obtained by conjugating the low-energy operator
/// into the r variable: (n-1)/4 * a * ((n-1) a + 2) with a = p/(1-p).
double inverse_square_coefficient(int n, const Rational& p);

struct ConjugationFit {
  /// r^2 V(r) for p < 1, V(r) itself for p = 1.
  double coefficient = 0.0;
  /// Largest deviation of the sampled values from their mean.
  double spread = 0.0;
  std::vector<double> radii;
  std::vector<double> samples;
};

/// Numerically pushes D*D + c0^2 x^{2-2p} on L^2(x^{np-2}dx) through
/// phi -> x^{(n-1)p/2} phi and r = L(x), then reads off the potential.
ConjugationFit derive_inverse_square_coefficient(int n, const Rational& p);

RadialModel make_radial_model(const ManifoldSpec& spec, std::optional<double> inverse_square_override = {});

struct RadialOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;
  Grid grid;
  double mode_mu = 0.0;
  int n = 2;
  Rational p{1};
  /// h^2 * max(diag - 2/h^2) > 1: the stencil under-resolves the potential.
  bool coarse_warning = false;
  /// sup over the grid of |L^{1+eps} W| for short-range perturbations.
  double short_range_sup = 0.0;

  std::size_t size() const { return diag.size(); }
};

RadialOperator assemble(const RadialModel& model, double mode_mu, const Grid& grid,
                        const Perturbation& pert = {});

/// Number of eigenvalues strictly below lambda (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(const RadialOperator& op, double lambda);
std::size_t sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag, double lambda);

/// Sturm counts of assemble(model, mode_mu, grid, pert) at every lambda,
/// streamed node by node without storing the matrix.
std::vector<std::size_t> streamed_counts(const RadialModel& model, double mode_mu, const Grid& grid,
                                         const Perturbation& pert, const std::vector<double>& lambdas,
                                         bool* coarse_warning = nullptr);

/// Eigenvalues below lambda_max by bisection, each to absolute tolerance tol.
std::vector<double> eigenvalues_below(const RadialOperator& op, double lambda_max, double tol);
/// The k lowest eigenvalues by bisection.
std::vector<double> lowest_eigenvalues(const RadialOperator& op, std::size_t k, double tol);

struct Eigensystem {
  std::vector<double> values;
  /// Column-major eigenvectors: vectors[j * size + i] is component i of vector j.
  std::vector<double> vectors;
  std::size_t size = 0;
};

/// Full diagonalization of the tridiagonal matrix.
Eigensystem diagonalize(const RadialOperator& op, bool with_vectors);

/// Unit eigenvector for an isolated eigenvalue by inverse iteration.
std::vector<double> eigenvector_near(const RadialOperator& op, double eigenvalue);

/// Grid selection as a function of the largest energy of interest.
struct GridPolicy {
  std::optional<double> h;
  std::optional<double> r_max;
  /// Truncate trapped modes a fixed tunnelling action past their turning point.
  bool truncate_trapped_modes = true;
  double tunnelling_action = 36.0;

  double spacing(double lambda_max) const;
  double default_r_max(const RadialModel& model, double lambda_max) const;
  Grid grid_for(const RadialModel& model, double mode_mu, double lambda_max) const;
};

struct ModeCount {
  std::string label;
  double mu = 0.0;
  std::size_t multiplicity = 0;
  std::vector<std::size_t> counts;  // one per requested lambda
};

struct CountingResult {
  std::vector<double> lambdas;
  std::vector<std::size_t> totals;
  std::vector<ModeCount> modes;
  /// h^2 * lambda_max > 1 somewhere in the classically allowed region.
  bool coarse_warning = false;
};

struct CountingOptions {
  GridPolicy grid;
  Perturbation perturbation;
  std::optional<double> inverse_square_override;
  bool continuum = false;
  unsigned threads = 1;
};

/// Eigenvalue counting N(lambda) for every lambda in `lambdas`, summed over
/// boundary components and transverse modes with multiplicity.
CountingResult counting_samples(const ManifoldSpec& spec, const PotentialSpec& potential,
                                const std::vector<double>& lambdas, const CountingOptions& options);
std::size_t counting_function(const ManifoldSpec& spec, const PotentialSpec& potential, double lambda,
                              const CountingOptions& options);

/// Complex tridiagonal solve (H - z) x = b with partial pivoting.
std::vector<std::complex<double>> resolvent_apply(const RadialOperator& op, std::complex<double> z,
                                                  const std::vector<std::complex<double>>& b);

/// Operator 2-norm of a linear map given by apply / apply_adjoint, via
/// Lanczos on A*A with full reorthogonalization.
double operator_norm(std::size_t size,
                     const std::function<std::vector<std::complex<double>>(const std::vector<std::complex<double>>&)>& apply,
                     const std::function<std::vector<std::complex<double>>(const std::vector<std::complex<double>>&)>& apply_adjoint,
                     double rel_tol = 1e-8);

/// Weight L(r)^{-s} with L(r) = max(r, 1).
std::vector<double> radial_weight(const Grid& grid, double s_weight);

/// ||L^{-s} (H - z)^{-1} L^{-s}||.
double weighted_resolvent_norm(const RadialOperator& op, std::complex<double> z, double s_weight);
/// ||L^{-s} ((H - z1)^{-1} - (H - z2)^{-1}) L^{-s}||.
double weighted_resolvent_difference(const RadialOperator& op, std::complex<double> z1,
                                     std::complex<double> z2, double s_weight);

/// Metric horn (p > 1): zero-mode operator on (0, eps] in the x variable,
/// quadratic form  int x^{(n-2)p+2} |u'|^2 dx  over  int x^{np-2} |u|^2 dx,
/// Dirichlet at eps. Cell-centred, symmetrized by the mass matrix.
RadialOperator assemble_horn(int n, const Rational& p, double eps, std::size_t cells);

}  // namespace cuspmag
