#include "cuspmag/analysis.hpp"

#include "cuspmag/error.hpp"
#include "cuspmag/parallel.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cuspmag {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_normalized(const ManifoldSpec& spec, const PotentialSpec& potential) {
  validate(spec, potential);
  for (std::size_t k = 0; k < spec.ends.size(); ++k)
    if (!potential.per_end[k].normalized())
      throw PreconditionError("end." + spec.ends[k].label +
                              ": spectral requests need phi0 constant and theta0 closed (normalize the gauge first)");
}

// Least squares y = a + b x.
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw PreconditionError("degenerate abscissae in fit");
  const double b = sxy / sxx;
  return {my - b * mx, b};
}

double lowest_eigenvalue(const RadialOperator& op, double tol) { return lowest_eigenvalues(op, 1, tol).front(); }

// Smallest nonzero-or-zero mode over all ends, for trapped ground states.
double smallest_mode(const ManifoldSpec& spec, const PotentialSpec& potential) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < spec.ends.size(); ++k) {
    for (double cap = 1.0;; cap *= 4.0) {
      const ModeSpectrum ms = mode_spectrum(spec.ends[k], potential.per_end[k].flux, cap);
      if (!ms.entries.empty()) {
        best = std::min(best, ms.entries.front().mu);
        break;
      }
    }
  }
  return best;
}

}  // namespace

std::string_view regime_name(WeylRegime regime) {
  switch (regime) {
    case WeylRegime::Above: return "above";
    case WeylRegime::Critical: return "critical";
    case WeylRegime::Below: return "below";
  }
  return "unknown";
}

double WeylPrediction::shape(double lambda) const {
  double v = std::pow(lambda, exponent);
  if (log_factor) v *= std::log(lambda);
  return v;
}

WeylPrediction weyl_constants(const ManifoldSpec& spec, const PotentialSpec& potential, double zeta_tol) {
  validate(spec, potential);
  if (kernel_dimension(spec, potential) > 0)
    throw PreconditionError("weyl constants need a trapping potential: a non-trapping end carries continuous spectrum");
  WeylPrediction w;
  const int n = spec.n;
  const Rational np = spec.p * n;
  w.regime = np > 1 ? WeylRegime::Above : (np == 1 ? WeylRegime::Critical : WeylRegime::Below);
  w.sphere_volume = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  for (const auto& c : spec.ends) w.boundary_volume += c.volume();
  w.total_volume = total_volume(spec);
  const double two_pi_n = std::pow(2.0 * kPi, n);
  switch (w.regime) {
    case WeylRegime::Above:
      if (!std::isfinite(w.total_volume)) throw PreconditionError("end volume diverges");
      w.constant = w.total_volume * w.sphere_volume / (n * two_pi_n);
      w.exponent = 0.5 * n;
      w.law = "lambda^(n/2)";
      break;
    case WeylRegime::Critical:
      w.constant = w.boundary_volume * w.sphere_volume / (2.0 * two_pi_n);
      w.exponent = 0.5 * n;
      w.log_factor = true;
      w.law = "lambda^(n/2)*log(lambda)";
      break;
    case WeylRegime::Below: {
      const Rational s_exact = (1 - spec.p) / (2 * spec.p);
      const double s = to_double(s_exact);
      const double half_inv_p = to_double(Rational(1) / (2 * spec.p));
      double zeta = 0.0;
      for (std::size_t k = 0; k < spec.ends.size(); ++k)
        zeta += spectral_zeta(spec.ends[k], potential.per_end[k].flux, s, zeta_tol);
      w.zeta_s = s;
      w.zeta_value = zeta;
      w.gamma_prefactor = std::tgamma(s) / (2.0 * std::sqrt(kPi) * std::tgamma(half_inv_p));
      w.constant = *w.gamma_prefactor * zeta;
      w.exponent = half_inv_p;
      w.law = "lambda^(1/(2p))";
      break;
    }
  }
  if (!(w.constant > 0)) throw NumericalError("non-positive Weyl constant");
  return w;
}

WeylFit weyl_fit(const std::vector<double>& lambdas, const std::vector<double>& counts, const WeylPrediction& prediction) {
  if (lambdas.size() != counts.size()) throw PreconditionError("weyl fit: lambda and count lengths differ");
  if (lambdas.size() < 5) throw PreconditionError("weyl fit needs at least 5 samples");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] > lambdas[i - 1])) throw PreconditionError("weyl fit needs strictly ascending lambda");
  if (!(lambdas.front() > 1.0) || lambdas.back() < 10.0 * lambdas.front())
    throw PreconditionError("weyl fit samples must span at least one decade above lambda = 1");
  if (std::all_of(counts.begin(), counts.end(), [&](double c) { return c == counts.front(); }))
    throw PreconditionError("degenerate samples: all counts equal");

  WeylFit fit;
  fit.predicted = prediction.constant;
  const double mid = 0.5 * (std::log(lambdas.front()) + std::log(lambdas.back()));
  fit.fitted_from = 0;
  while (std::log(lambdas[fit.fitted_from]) < mid) ++fit.fitted_from;
  double num = 0.0, den = 0.0;
  for (std::size_t i = fit.fitted_from; i < lambdas.size(); ++i) {
    const double s = prediction.shape(lambdas[i]);
    num += counts[i] * s;
    den += s * s;
  }
  fit.fitted = num / den;
  fit.relative_error = std::abs(fit.fitted - fit.predicted) / fit.predicted;
  for (std::size_t i = 0; i < lambdas.size(); ++i) fit.ratios.push_back(counts[i] / prediction.predict(lambdas[i]));
  fit.mean_ratio = std::accumulate(fit.ratios.begin(), fit.ratios.end(), 0.0) / fit.ratios.size();

  std::vector<double> x, y;
  for (std::size_t i = fit.fitted_from; i < lambdas.size(); ++i) {
    x.push_back(std::log(lambdas[i]));
    y.push_back(counts[i] / (fit.fitted * prediction.shape(lambdas[i])));
  }
  if (x.size() >= 2) {
    const auto [a, b] = line_fit(x, y);
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    fit.residual_trend = b * (x.back() - x.front()) / mean;
    (void)a;
  }
  fit.law_mismatch = std::abs(fit.residual_trend) > 0.1;
  return fit;
}

ThresholdEstimate threshold_estimate(const ManifoldSpec& spec, const PotentialSpec& potential,
                                     const std::vector<double>& schedule, const ThresholdOptions& options) {
  if (schedule.size() < 3) throw PreconditionError("threshold schedule needs at least 3 r_max values");
  if (!spec.complete()) throw PreconditionError("metric horn (p > 1): use the horn threshold path");
  require_normalized(spec, potential);
  const RadialModel model = make_radial_model(spec, options.inverse_square_override);
  ThresholdEstimate est;
  est.expected_kappa = model.threshold();
  est.r_max = schedule;
  for (double rm : schedule)
    if (!(rm > model.r0)) throw PreconditionError("r_max must exceed r0");

  if (kernel_dimension(spec, potential) > 0) {
    std::vector<double> x;
    for (double rm : schedule) {
      const RadialOperator op = assemble(model, 0.0, Grid::spanning(model.r0, rm, options.h));
      est.ground_states.push_back(lowest_eigenvalue(op, options.tol));
      const double L = rm - model.r0;
      x.push_back(1.0 / (L * L));
    }
    const auto [a, b] = line_fit(x, est.ground_states);
    est.kappa_hat = a;
    est.richardson_slope = b;
    return est;
  }

  est.discrete = true;
  const double v_min = model.p == 1 ? model.threshold() : 0.0;
  const double q0 = model.transverse_factor(model.r0);
  for (double rm : schedule) {
    const Grid grid = Grid::spanning(model.r0, rm, options.h);
    // Ground state of the smallest mode bounds which modes can undercut it.
    double best = lowest_eigenvalue(assemble(model, smallest_mode(spec, potential), grid), options.tol);
    const double cap = (best - v_min) / q0;
    for (std::size_t k = 0; k < spec.ends.size(); ++k) {
      const ModeSpectrum ms = mode_spectrum(spec.ends[k], potential.per_end[k].flux, cap);
      for (const auto& e : ms.entries) best = std::min(best, lowest_eigenvalue(assemble(model, e.mu, grid), options.tol));
    }
    est.ground_states.push_back(best);
  }
  for (double g : est.ground_states)
    est.stability = std::max(est.stability, std::abs(g - est.ground_states.front()) / std::abs(est.ground_states.front()));
  return est;
}

HornEstimate horn_threshold(const ManifoldSpec& spec, double eps0, int halvings, std::size_t cells) {
  validate(spec);
  if (spec.complete()) throw PreconditionError("horn threshold needs p > 1");
  if (halvings < 1) throw PreconditionError("horn threshold needs at least one halving");
  HornEstimate h;
  h.expected_growth = std::pow(2.0, 2.0 * to_double(spec.p) - 2.0);
  double eps = eps0;
  for (int k = 0; k <= halvings; ++k, eps *= 0.5) {
    const RadialOperator op = assemble_horn(spec.n, spec.p, eps, cells);
    const double scale = std::pow(eps, 2.0 - 2.0 * to_double(spec.p));
    h.eps.push_back(eps);
    h.ground_states.push_back(lowest_eigenvalue(op, 1e-11 * std::max(1.0, scale)));
  }
  for (std::size_t k = 1; k < h.ground_states.size(); ++k) h.growth.push_back(h.ground_states[k] / h.ground_states[k - 1]);
  return h;
}

namespace {

// Distinct eigenvalues below lambda_hi over all modes of one end.
std::vector<double> box_spectrum(const RadialModel& model, const BoundaryComponent& component, const RationalVector& flux,
                                 const Grid& grid, double lambda_hi) {
  const double v_min = model.p == 1 ? model.threshold() : 0.0;
  const double cap = (lambda_hi - v_min) / model.transverse_factor(model.r0);
  std::vector<double> values;
  if (cap >= 0) {
    const ModeSpectrum ms = mode_spectrum(component, flux, cap);
    for (const auto& e : ms.entries) {
      const auto ev = eigenvalues_below(assemble(model, e.mu, grid), lambda_hi, 1e-11);
      values.insert(values.end(), ev.begin(), ev.end());
    }
  }
  std::sort(values.begin(), values.end());
  std::vector<double> distinct;
  for (double v : values)
    if (distinct.empty() || v - distinct.back() > 1e-8 * std::max(1.0, std::abs(v))) distinct.push_back(v);
  return distinct;
}

struct SpacingSample {
  double spacing = 0.0;
  double ground = 0.0;
};

// Mean gap of the four distinct eigenvalues nearest lambda_star.
SpacingSample spacing_near(const RadialModel& model, const BoundaryComponent& component, const RationalVector& flux,
                           const Grid& grid, double lambda_star) {
  for (double reach = 1.0; reach < 1e8; reach *= 2.0) {
    const double hi = lambda_star + reach;
    const auto ev = box_spectrum(model, component, flux, grid, hi);
    if (ev.size() < 4) continue;
    std::vector<double> near(ev);
    std::sort(near.begin(), near.end(),
              [&](double a, double b) { return std::abs(a - lambda_star) < std::abs(b - lambda_star); });
    near.resize(4);
    // Anything unseen lies above hi, so the four are final once all are within reach.
    if (std::abs(near.back() - lambda_star) > reach) continue;
    std::sort(near.begin(), near.end());
    return {(near.back() - near.front()) / 3.0, ev.front()};
  }
  throw NumericalError("spacing statistic: could not bracket four eigenvalues");
}

}  // namespace

CouplingScan coupling_scan(const ManifoldSpec& spec, const RationalVector& base_flux, const std::vector<Rational>& g_grid,
                           const CouplingOptions& options) {
  validate(spec);
  if (spec.ends.size() != 1) throw PreconditionError("coupling scan needs a single boundary component");
  const BoundaryComponent& component = spec.ends.front();
  if (base_flux.size() != component.betti())
    throw PreconditionError("base flux length " + std::to_string(base_flux.size()) + " != b1 = " +
                            std::to_string(component.betti()));
  const RadialModel model = make_radial_model(spec, options.inverse_square_override);
  CouplingScan scan;
  scan.base_flux = base_flux;
  scan.group = coupling_group(base_flux);
  scan.lambda_star = std::isnan(options.lambda_star) ? model.threshold() + 1.0 : options.lambda_star;
  scan.box = options.box;
  if (!(scan.lambda_star > model.threshold())) throw PreconditionError("lambda_star must exceed the threshold kappa(p)");

  scan.rows.resize(g_grid.size());
  const Grid short_box = Grid::spanning(model.r0, model.r0 + options.box, options.h);
  const Grid long_box = Grid::spanning(model.r0, model.r0 + 2.0 * options.box, options.h);
  parallel_for(g_grid.size(), options.threads, [&](std::size_t i) {
    CouplingRow row;
    row.g = g_grid[i];
    for (const auto& b : base_flux) row.flux.push_back(g_grid[i] * b);
    row.non_trapping = is_integral(row.flux);
    row.zero_mode = mode_spectrum(component, row.flux, 0.0).count() > 0;
    const SpacingSample a = spacing_near(model, component, row.flux, short_box, scan.lambda_star);
    const SpacingSample b = spacing_near(model, component, row.flux, long_box, scan.lambda_star);
    row.ground_state = a.ground;
    row.spacing = a.spacing;
    row.spacing_long = b.spacing;
    row.spacing_ratio = a.spacing / b.spacing;
    scan.rows[i] = std::move(row);
  });
  return scan;
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double bump(double x) { return 1.0 - smoothstep(std::abs(x) - 1.0); }

std::vector<double> phi_operator(std::size_t n, double h, double R) {
  std::vector<double> G(n * n, 0.0);
  if (std::isinf(R)) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      G[i * n + i + 1] = 0.5 / h;
      G[(i + 1) * n + i] = -0.5 / h;
    }
    return G;
  }
  if (!(R >= 1.0)) throw PreconditionError("R must be >= 1 or infinite");
  // Symbol Phi_R(sigma(k)) with sigma(k) = sin(kh)/h the central-difference
  // symbol, so R -> infinity recovers the stencil exactly. The padded
  // periodic convolution restricted to n nodes is Toeplitz.
  std::size_t M = 1;
  while (M < 2 * n) M <<= 1;
  std::vector<std::complex<double>> symbol(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
    const double sigma = std::sin(theta) / h;
    symbol[j] = R * (sigma / R) * bump(sigma / R);
  }
  std::vector<std::complex<double>> kernel;
  Eigen::FFT<double> fft;
  fft.inv(kernel, symbol);
  // kernel[m] = i s(m); G = i Phi_R(-i d) has entries g(m) = -s(m).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t m = (i + M - j) % M;
      G[i * n + j] = -kernel[m].imag();
    }
  return G;
}

namespace {

struct Cutoffs {
  std::vector<double> xi, chi;
};

Cutoffs mourre_cutoffs(const Grid& grid) {
  Cutoffs c;
  for (std::size_t i = 0; i < grid.interior(); ++i) {
    const double r = grid.node(i);
    c.xi.push_back(r * smoothstep(r - (grid.r0 + 1.0)));
    c.chi.push_back(smoothstep(r - (grid.r0 + 0.5)));
  }
  return c;
}

}  // namespace

std::vector<double> commutator_matrix(const RadialOperator& op, double R) {
  const std::size_t N = op.size();
  const Cutoffs c = mourre_cutoffs(op.grid);
  std::vector<double> A = phi_operator(N, op.grid.h, R);
  // A = chi (G xi + xi G) chi, real antisymmetric.
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) A[i * N + j] *= c.chi[i] * c.chi[j] * (c.xi[i] + c.xi[j]);
  // K = H A - A H with H tridiagonal.
  std::vector<double> K(N * N);
  const auto& d = op.diag;
  const auto& e = op.offdiag;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double ha = d[i] * A[i * N + j];
      if (i > 0) ha += e[i - 1] * A[(i - 1) * N + j];
      if (i + 1 < N) ha += e[i] * A[(i + 1) * N + j];
      double ah = A[i * N + j] * d[j];
      if (j > 0) ah += A[i * N + j - 1] * e[j - 1];
      if (j + 1 < N) ah += A[i * N + j + 1] * e[j];
      K[i * N + j] = ha - ah;
    }
  return K;
}

double commutator_form_unbounded(const RadialOperator& op, const std::vector<double>& phi) {
  const std::size_t N = op.size();
  if (phi.size() != N) throw PreconditionError("commutator form: size mismatch");
  const Cutoffs c = mourre_cutoffs(op.grid);
  const double g = 0.5 / op.grid.h;
  auto applyA = [&](const std::vector<double>& v) {
    std::vector<double> out(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      if (i + 1 < N) acc += g * (c.xi[i] + c.xi[i + 1]) * c.chi[i + 1] * v[i + 1];
      if (i > 0) acc -= g * (c.xi[i] + c.xi[i - 1]) * c.chi[i - 1] * v[i - 1];
      out[i] = c.chi[i] * acc;
    }
    return out;
  };
  auto applyH = [&](const std::vector<double>& v) {
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
      double acc = op.diag[i] * v[i];
      if (i > 0) acc += op.offdiag[i - 1] * v[i - 1];
      if (i + 1 < N) acc += op.offdiag[i] * v[i + 1];
      out[i] = acc;
    }
    return out;
  };
  // <phi, (HA - AH) phi> = <H phi, A phi> - <A^T phi, H phi> = 2 <H phi, A phi>.
  const auto Hphi = applyH(phi);
  const auto Aphi = applyA(phi);
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += Hphi[i] * Aphi[i];
  return 2.0 * s;
}

MourreProbeReport mourre_probe(const ManifoldSpec& spec, const PotentialSpec& potential, double R, Interval window,
                               const MourreOptions& options) {
  require_normalized(spec, potential);
  if (!spec.complete()) throw PreconditionError("mourre probe needs p <= 1");
  if (kernel_dimension(spec, potential) == 0) throw PreconditionError("mourre probe needs a non-trapping zero mode");
  if (!(R >= 1.0)) throw PreconditionError("R must be >= 1 or infinite");
  const RadialModel model = make_radial_model(spec);
  MourreProbeReport rep;
  rep.R = R;
  rep.window = window;
  rep.kappa = model.threshold();
  if (!(window.lo > rep.kappa && window.hi > window.lo))
    throw PreconditionError("window J must satisfy kappa < inf J < sup J");
  const double far_lo = model.r0 + 2.0 + options.margin;
  const double far_hi = options.r_max - options.margin;
  if (!(far_hi - far_lo > 2.0 * options.margin)) throw PreconditionError("r_max too small for the far region");

  const RadialOperator op = assemble(model, 0.0, Grid::spanning(model.r0, options.r_max, options.h));
  const std::size_t N = op.size();
  std::vector<double> Kraw = commutator_matrix(op, R);
  Eigen::MatrixXd K = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(Kraw.data(), N, N);
  Kraw.clear();
  Kraw.shrink_to_fit();
  rep.asymmetry = (K - K.transpose()).cwiseAbs().maxCoeff();
  K = 0.5 * (K + K.transpose()).eval();

  // Spectral window by bisection plus inverse iteration.
  const std::size_t below_lo = sturm_count(op, window.lo);
  std::vector<double> ev = eigenvalues_below(op, window.hi, 1e-12);
  ev.erase(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(below_lo));
  rep.window_dimension = ev.size();
  if (ev.empty()) throw NumericalError("no eigenvalues in the window; widen J or enlarge r_max");
  std::vector<double> marks{window.lo};
  marks.insert(marks.end(), ev.begin(), ev.end());
  marks.push_back(window.hi);
  for (std::size_t i = 1; i < marks.size(); ++i)
    if (marks[i] - marks[i - 1] < 1e-6) rep.cluster_flag = true;

  const std::size_t m = ev.size();
  Eigen::MatrixXd V(N, m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto v = eigenvector_near(op, ev[j]);
    V.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(v.data(), N);
  }
  const Eigen::MatrixXd KV = K * V;
  const Eigen::MatrixXd P = V.transpose() * KV;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (P + P.transpose()));
  rep.min_projected_eigenvalue = es.eigenvalues()(0);

  const Eigen::VectorXd psi = V * es.eigenvectors().col(0);
  const Eigen::VectorXd Kpsi = KV * es.eigenvectors().col(0);
  double negative = 0.0, localized = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double rho = psi[i] * Kpsi[i];
    if (rho >= 0) continue;
    negative -= rho;
    const double r = op.grid.node(i);
    if (r <= far_lo || r >= far_hi) localized -= rho;
  }
  rep.localization_fraction = negative > 0 ? localized / negative : 0.0;

  // Far-supported window states: W V_J with W a smooth cutoff away from the
  // core and the wall.
  Eigen::VectorXd W(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double r = op.grid.node(i);
    W[i] = smoothstep((r - far_lo) / options.margin) * smoothstep((far_hi - r) / options.margin);
  }
  const Eigen::MatrixXd Y = W.asDiagonal() * V;
  const Eigen::MatrixXd A = Y.transpose() * K * Y;
  const Eigen::MatrixXd B = Y.transpose() * Y;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(0.5 * (A + A.transpose()), 0.5 * (B + B.transpose()));
  if (ges.info() != Eigen::Success) throw NumericalError("far-region generalized eigenproblem failed");
  rep.far_floor = ges.eigenvalues()(0);
  rep.epsilon_R = 4.0 * (window.lo - rep.kappa) - rep.far_floor;
  return rep;
}

namespace {

// Zero mode when present, otherwise the lowest transverse mode.
double probe_mode(const ManifoldSpec& spec, const PotentialSpec& potential) {
  return kernel_dimension(spec, potential) > 0 ? 0.0 : smallest_mode(spec, potential);
}

}  // namespace

HolderResult holder_probe(const ManifoldSpec& spec, const PotentialSpec& potential, double s_weight, Interval window,
                          std::vector<std::complex<double>> z_samples, const HolderOptions& options) {
  if (!(s_weight > 0.5 && s_weight < 1.5)) throw PreconditionError("weight exponent s must lie in (1/2, 3/2)");
  require_normalized(spec, potential);
  if (!(window.hi > window.lo)) throw PreconditionError("window J must have inf J < sup J");
  if (options.r_max.empty()) throw PreconditionError("holder probe needs at least one r_max");
  const RadialModel model = make_radial_model(spec, options.inverse_square_override);
  const double mu = probe_mode(spec, potential);
  HolderResult res;
  res.r_max = options.r_max;

  // epsilon_floor = 10 x mean level spacing in J at the first truncation.
  {
    const RadialOperator op = assemble(model, mu, Grid::spanning(model.r0, options.r_max.front(), options.h));
    const std::size_t lo = sturm_count(op, window.lo), hi = sturm_count(op, window.hi);
    double spacing = window.hi - window.lo;
    if (hi - lo >= 2) {
      const auto ev = eigenvalues_below(op, window.hi, 1e-12);
      spacing = (ev.back() - ev[lo]) / static_cast<double>(hi - lo - 1);
    }
    res.epsilon_floor = 10.0 * spacing;
  }
  if (z_samples.empty()) {
    const std::size_t n = std::max<std::size_t>(options.samples, 4);
    for (std::size_t k = 0; k < n; ++k)
      z_samples.emplace_back(window.lo + (window.hi - window.lo) * k / static_cast<double>(n - 1), res.epsilon_floor);
  }
  if (z_samples.size() < 4) throw PreconditionError("holder probe needs at least 4 z samples");
  for (const auto& z : z_samples)
    if (z.imag() < res.epsilon_floor)
      throw PreconditionError("Im z below epsilon_floor = " + std::to_string(res.epsilon_floor));
  res.z_samples = z_samples;

  for (std::size_t k = 0; k < options.r_max.size(); ++k) {
    const RadialOperator op = assemble(model, mu, Grid::spanning(model.r0, options.r_max[k], options.h));
    std::vector<double> x, y;
    for (std::size_t i = 0; i < z_samples.size(); ++i)
      for (std::size_t j = i + 1; j < z_samples.size(); ++j) {
        const double dist = std::abs(z_samples[i] - z_samples[j]);
        const double diff = weighted_resolvent_difference(op, z_samples[i], z_samples[j], s_weight);
        if (k == 0) {
          res.distances.push_back(dist);
          res.differences.push_back(diff);
        }
        x.push_back(std::log(dist));
        y.push_back(std::log(diff));
      }
    const auto [a, b] = line_fit(x, y);
    res.exponents.push_back(b);
    res.constants.push_back(std::exp(a));
  }
  res.exponent = res.exponents.front();
  res.constant = res.constants.front();
  res.stable = true;
  for (double c : res.constants)
    if (std::abs(c - res.constant) > 0.25 * res.constant) res.stable = false;
  return res;
}

ResolventGrowth resolvent_growth(const ManifoldSpec& spec, const PotentialSpec& potential, double s_weight,
                                 std::optional<double> center, const std::vector<double>& etas, const HolderOptions& options) {
  require_normalized(spec, potential);
  if (options.r_max.empty()) throw PreconditionError("resolvent growth needs an r_max");
  const RadialModel model = make_radial_model(spec, options.inverse_square_override);
  ResolventGrowth g;
  g.mu = probe_mode(spec, potential);
  const RadialOperator op = assemble(model, g.mu, Grid::spanning(model.r0, options.r_max.front(), options.h));
  g.center = center ? *center : lowest_eigenvalue(op, 1e-12);
  g.eta = etas;
  for (double eta : etas) g.norms.push_back(weighted_resolvent_norm(op, {g.center, eta}, s_weight));
  return g;
}

}  // namespace cuspmag
