#include "cuspmag/radial.hpp"

#include "cuspmag/error.hpp"
#include "cuspmag/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace cuspmag {

namespace {

using cvec = std::vector<std::complex<double>>;

double pd(const Rational& q) { return to_double(q); }

}  // namespace

double FunctionDescriptor::operator()(double r) const {
  const double c = pd(coefficient);
  switch (form) {
    case Form::Power:
      return c * std::pow(r, -pd(exponent));
    case Form::Exponential:
      return c * std::exp(-pd(exponent) * r);
    case Form::Gaussian: {
      const double t = (r - pd(center)) / pd(width);
      return c * std::exp(-t * t);
    }
  }
  return 0.0;
}

double RadialModel::potential(double r) const {
  if (p == 1) {
    const double a = 0.5 * (n - 1);
    return a * a;
  }
  return inverse_square / (r * r);
}

double RadialModel::transverse_factor(double r) const {
  if (p == 1) return std::exp(2.0 * r);
  const double q = pd(p);
  return std::pow((1.0 - q) * r, 2.0 * q / (1.0 - q));
}

double RadialModel::threshold() const {
  if (p == 1) return potential(0.0);
  return 0.0;
}

Rational low_energy_c0(int n, const Rational& p) { return (Rational(2 - n) * p - 1) / 2; }

double inverse_square_coefficient(int n, const Rational& p) {
  if (p >= 1) throw PreconditionError("inverse-square coefficient needs p < 1");
  const double a = pd(p / (1 - p));
  return 0.25 * (n - 1) * a * ((n - 1) * a + 2.0);
}

ConjugationFit derive_inverse_square_coefficient(int n, const Rational& p) {
  if (n < 2 || p <= 0 || p > 1) throw PreconditionError("conjugation needs n >= 2 and 0 < p <= 1");
  const double q = pd(p);
  const double c0 = pd(low_energy_c0(n, p));
  const double half = 0.5 * (n - 1) * q;
  const bool log_end = (p == 1);

  // Test profile u(r) in the r variable with closed-form second derivative.
  const double rc = log_end ? 3.0 : 10.0;
  const double sigma = log_end ? 0.5 : 2.0;
  auto u = [&](double r) { return std::exp(-(r - rc) * (r - rc) / (2 * sigma * sigma)); };
  auto u2 = [&](double r) {
    const double t = (r - rc) / (sigma * sigma);
    return (t * t - 1.0 / (sigma * sigma)) * u(r);
  };
  auto L = [&](double x) { return radial_coordinate(p, x); };

  auto phi = [&](double x) { return std::pow(x, -half) * u(L(x)); };
  auto deriv = [](const auto& f, double x) {
    const double d = 1e-4 * x;
    return (f(x + d) - f(x - d)) / (2 * d);
  };
  // D phi = x^{2-p} phi' - c0 x^{1-p} phi
  auto Dphi = [&](double x) { return std::pow(x, 2 - q) * deriv(phi, x) - c0 * std::pow(x, 1 - q) * phi(x); };
  // D* psi = -x^{2-np} (x^{np-2} x^{2-p} psi)' - c0 x^{1-p} psi
  auto flux = [&](double x) { return std::pow(x, n * q - 2) * std::pow(x, 2 - q) * Dphi(x); };
  auto T = [&](double x) {
    return -std::pow(x, 2 - n * q) * deriv(flux, x) - c0 * std::pow(x, 1 - q) * Dphi(x) +
           c0 * c0 * std::pow(x, 2 - 2 * q) * phi(x);
  };

  ConjugationFit fit;
  for (int k = -4; k <= 4; ++k) {
    const double r = rc + 0.5 * sigma * k;
    const double x = boundary_coordinate(p, r);
    const double lap = std::pow(x, half) * T(x);
    const double V = (lap + u2(r)) / u(r);
    fit.radii.push_back(r);
    fit.samples.push_back(log_end ? V : V * r * r);
  }
  fit.coefficient = std::accumulate(fit.samples.begin(), fit.samples.end(), 0.0) / fit.samples.size();
  for (double s : fit.samples) fit.spread = std::max(fit.spread, std::abs(s - fit.coefficient));
  return fit;
}

RadialModel make_radial_model(const ManifoldSpec& spec, std::optional<double> override_value) {
  if (!spec.complete()) throw PreconditionError("radial model needs p <= 1; p > 1 is a metric horn");
  RadialModel m;
  m.n = spec.n;
  m.p = spec.p;
  m.r0 = radial_origin(spec);
  if (spec.p < 1) m.inverse_square = override_value ? *override_value : inverse_square_coefficient(spec.n, spec.p);
  return m;
}

namespace {

double entry_potential(const RadialModel& model, double mu, double r, const Perturbation& pert) {
  double v = model.potential(r);
  if (mu != 0.0) v += mu * model.transverse_factor(r);
  if (pert.kind == Perturbation::Kind::ShortRangePotential) v += pert.profile(r);
  return v;
}

// (1+rho)^{-1/2}; the conformal change g -> (1+rho) g on the radial line
// acts on the discrete operator as S H S with S this diagonal.
double conformal_scale(const Perturbation& pert, double r) {
  if (pert.kind != Perturbation::Kind::RadialConformal) return 1.0;
  const double rho = pert.profile(r);
  if (!(1.0 + rho > 0)) throw PreconditionError("conformal factor 1 + rho must stay positive");
  return 1.0 / std::sqrt(1.0 + rho);
}

double short_range_sup(const Perturbation& pert, const Grid& grid) {
  if (pert.kind != Perturbation::Kind::ShortRangePotential) return 0.0;
  const double eps = pd(pert.epsilon);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.interior(); ++i) {
    const double r = grid.node(i);
    sup = std::max(sup, std::abs(pert.profile(r)) * std::pow(std::max(r, 1.0), 1.0 + eps));
  }
  // Boundedness is judged on the tail beyond the grid as well.
  const double far = grid.r_max() * 1e3;
  const double tail = std::abs(pert.profile(far)) * std::pow(far, 1.0 + eps);
  if (!std::isfinite(sup) || tail > std::max(1.0, 10.0 * sup))
    throw PreconditionError("perturbation is not short range: L^{1+eps}|W| is unbounded");
  return sup;
}

void check_grid(const Grid& grid) {
  if (grid.cells < 8) throw PreconditionError("grid needs at least 8 cells");
  if (!(grid.h > 0)) throw PreconditionError("grid spacing must be positive");
}

}  // namespace

RadialOperator assemble(const RadialModel& model, double mode_mu, const Grid& grid, const Perturbation& pert) {
  check_grid(grid);
  RadialOperator op;
  op.grid = grid;
  op.mode_mu = mode_mu;
  op.n = model.n;
  op.p = model.p;
  op.short_range_sup = short_range_sup(pert, grid);
  const std::size_t N = grid.interior();
  const double ih2 = 1.0 / (grid.h * grid.h);
  op.diag.resize(N);
  op.offdiag.resize(N - 1);
  double worst = 0.0, prev_scale = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double r = grid.node(i);
    const double v = entry_potential(model, mode_mu, r, pert);
    const double s = conformal_scale(pert, r);
    op.diag[i] = (2.0 * ih2 + v) * s * s;
    if (i > 0) op.offdiag[i - 1] = -ih2 * prev_scale * s;
    prev_scale = s;
    worst = std::max(worst, v);
  }
  op.coarse_warning = worst * grid.h * grid.h > 1.0;
  return op;
}

std::size_t sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag, double lambda) {
  const std::size_t N = diag.size();
  if (N == 0) return 0;
  double scale = 0.0;
  for (double e : offdiag) scale = std::max(scale, e * e);
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, scale);
  std::size_t count = 0;
  double d = diag[0] - lambda;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0) ++count;
  for (std::size_t i = 1; i < N; ++i) {
    d = diag[i] - lambda - offdiag[i - 1] * offdiag[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

std::size_t sturm_count(const RadialOperator& op, double lambda) { return sturm_count(op.diag, op.offdiag, lambda); }

std::vector<std::size_t> streamed_counts(const RadialModel& model, double mode_mu, const Grid& grid,
                                         const Perturbation& pert, const std::vector<double>& lambdas,
                                         bool* coarse_warning) {
  check_grid(grid);
  const std::size_t N = grid.interior(), L = lambdas.size();
  const double ih2 = 1.0 / (grid.h * grid.h);
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, ih2 * ih2);
  std::vector<double> d(L);
  std::vector<std::size_t> counts(L, 0);
  const double top = L ? *std::max_element(lambdas.begin(), lambdas.end()) : 0.0;
  double worst = 0.0, prev_scale = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double r = grid.node(i);
    const double v = entry_potential(model, mode_mu, r, pert);
    const double s = conformal_scale(pert, r);
    const double diag = (2.0 * ih2 + v) * s * s;
    const double off = -ih2 * prev_scale * s;
    prev_scale = s;
    // resolution only matters where the top eigenfunctions oscillate
    if (v <= top) worst = std::max(worst, top - std::min(v, 0.0));
    for (std::size_t k = 0; k < L; ++k) {
      double dk = diag - lambdas[k];
      if (i > 0) dk -= off * off / d[k];
      if (std::abs(dk) < pivmin) dk = -pivmin;
      if (dk < 0) ++counts[k];
      d[k] = dk;
    }
  }
  if (coarse_warning) *coarse_warning = worst * grid.h * grid.h > 1.0;
  return counts;
}

namespace {

std::pair<double, double> gershgorin(const RadialOperator& op) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const std::size_t N = op.size();
  for (std::size_t i = 0; i < N; ++i) {
    double rad = 0.0;
    if (i > 0) rad += std::abs(op.offdiag[i - 1]);
    if (i + 1 < N) rad += std::abs(op.offdiag[i]);
    lo = std::min(lo, op.diag[i] - rad);
    hi = std::max(hi, op.diag[i] + rad);
  }
  return {lo, hi};
}

// j-th eigenvalue (0-based) inside [lo, hi] by bisection on the Sturm count.
double bisect(const RadialOperator& op, std::size_t j, double lo, double hi, double tol) {
  for (int it = 0; it < 300 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(op, mid) > j)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> bisect_all(const RadialOperator& op, std::size_t m, double lo, double hi, double tol) {
  std::vector<double> out(m);
  double left = lo;
  for (std::size_t j = 0; j < m; ++j) {
    // Grow an upper bracket from the left end instead of starting at the
    // Gershgorin bound, which can be astronomically large for e^{2r}.
    double step = std::max(1.0, std::abs(left) * 1e-3), right = left + step;
    while (right < hi && sturm_count(op, right) <= j) {
      left = right;
      step *= 2.0;
      right = std::min(hi, left + step);
    }
    out[j] = bisect(op, j, left, std::min(right, hi), tol);
    left = std::max(lo, out[j] - tol);
  }
  return out;
}

}  // namespace

std::vector<double> eigenvalues_below(const RadialOperator& op, double lambda_max, double tol) {
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  const std::size_t m = sturm_count(op, lambda_max);
  if (m == 0) return {};
  const auto [lo, hi] = gershgorin(op);
  return bisect_all(op, m, lo, std::min(hi, lambda_max), tol);
}

std::vector<double> lowest_eigenvalues(const RadialOperator& op, std::size_t k, double tol) {
  k = std::min(k, op.size());
  const auto [lo, hi] = gershgorin(op);
  return bisect_all(op, k, lo, hi, tol);
}

Eigensystem diagonalize(const RadialOperator& op, bool with_vectors) {
  const std::size_t N = op.size();
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(op.diag.data(), N);
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(op.offdiag.data(), N - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver did not converge");
  Eigensystem out;
  out.size = N;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
  if (with_vectors) out.vectors.assign(es.eigenvectors().data(), es.eigenvectors().data() + N * N);
  return out;
}

std::vector<double> eigenvector_near(const RadialOperator& op, double eigenvalue) {
  const std::size_t N = op.size();
  // Shift slightly off the eigenvalue so the factorization stays regular.
  const double shift = eigenvalue + 1e-10 * std::max(1.0, std::abs(eigenvalue));
  cvec v(N);
  for (std::size_t i = 0; i < N; ++i) v[i] = 1.0 + 0.1 * std::sin(0.61 * i);
  for (int it = 0; it < 3; ++it) {
    v = resolvent_apply(op, shift, v);
    double nrm = 0.0;
    for (auto& c : v) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    for (auto& c : v) c /= nrm;
  }
  std::vector<double> out(N);
  double sign = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = v[i].real();
    if (sign == 0.0 && std::abs(out[i]) > 1e-8) sign = out[i] > 0 ? 1.0 : -1.0;
  }
  double nrm = 0.0;
  for (double x : out) nrm += x * x;
  nrm = std::sqrt(nrm) * (sign == 0.0 ? 1.0 : sign);
  for (double& x : out) x /= nrm;
  return out;
}

double GridPolicy::spacing(double lambda_max) const {
  if (h) return *h;
  return std::min(0.02, 0.5 / std::sqrt(std::max(lambda_max, 1.0)));
}

double GridPolicy::default_r_max(const RadialModel& model, double lambda_max) const {
  if (r_max) return *r_max;
  const double lam = std::max(lambda_max, 1.0);
  if (model.p == 1) return model.r0 + std::max(40.0, 4.0 * std::log(lam));
  const double q = pd(model.p);
  return model.r0 + std::max(40.0, 8.0 * std::pow(lam, (1.0 - q) / (2.0 * q)) / (1.0 - q));
}

Grid GridPolicy::grid_for(const RadialModel& model, double mode_mu, double lambda_max) const {
  const double hh = spacing(lambda_max);
  double rm = default_r_max(model, lambda_max);
  if (truncate_trapped_modes && mode_mu > 0 && !r_max) {
    // Walk outward accumulating the WKB action of sqrt(V - lambda) in the
    // forbidden region; beyond the chosen action the mode is numerically zero.
    const double step = std::min(hh, 0.01);
    double action = 0.0;
    for (double r = model.r0; r < rm; r += step) {
      const double excess = model.potential(r) + mode_mu * model.transverse_factor(r) - lambda_max;
      if (excess > 0) action += std::sqrt(excess) * step;
      if (action >= tunnelling_action) {
        rm = std::min(rm, r + 1.0);
        break;
      }
    }
  }
  rm = std::max(rm, model.r0 + 8 * hh + hh);
  return Grid::spanning(model.r0, rm, hh);
}

CountingResult counting_samples(const ManifoldSpec& spec, const PotentialSpec& potential,
                                const std::vector<double>& lambdas, const CountingOptions& options) {
  validate(spec, potential);
  if (lambdas.empty()) throw PreconditionError("no lambda samples");
  for (double lam : lambdas)
    if (!std::isfinite(lam)) throw PreconditionError("lambda must be finite");
  for (std::size_t k = 0; k < spec.ends.size(); ++k) {
    if (!potential.per_end[k].normalized())
      throw PreconditionError("end." + spec.ends[k].label +
                              ": spectral requests need phi0 constant and theta0 closed (normalize the gauge first)");
  }
  if (!options.continuum && kernel_dimension(spec, potential) > 0)
    throw PreconditionError("counting function diverges with r_max: potential is non-trapping (enable continuum to count the truncated box)");

  const RadialModel model = make_radial_model(spec, options.inverse_square_override);
  const double lam_max = *std::max_element(lambdas.begin(), lambdas.end());
  const Perturbation& pert = options.perturbation;

  // Lower bound V_min of the mode-free part and the smallest conformal
  // scale, so that mu Q(r0) s_min + V_min > lambda_max rules a mode out.
  double v_min = model.p == 1 ? model.threshold() : std::min(0.0, model.inverse_square / (model.r0 * model.r0));
  double s_min = 1.0;
  {
    const Grid g = options.grid.grid_for(model, 0.0, lam_max);
    short_range_sup(pert, g);
    double wmin = 0.0;
    for (std::size_t i = 0; i < g.interior(); ++i) {
      const double r = g.node(i);
      if (pert.kind == Perturbation::Kind::ShortRangePotential) wmin = std::min(wmin, pert.profile(r));
      const double s = conformal_scale(pert, r);
      s_min = std::min(s_min, s * s);
    }
    v_min += wmin;
    if (v_min < 0) v_min /= s_min;  // a negative floor can only deepen under scaling by 1/s_min
    else v_min *= s_min;
  }
  const double q0 = model.transverse_factor(model.r0);

  struct Job {
    std::string label;
    double mu;
    std::size_t mult;
  };
  std::vector<Job> jobs;
  const double mu_cap = (lam_max / s_min - v_min) / q0;
  for (std::size_t k = 0; k < spec.ends.size(); ++k) {
    if (mu_cap < 0) continue;
    const ModeSpectrum ms = mode_spectrum(spec.ends[k], potential.per_end[k].flux, mu_cap * (1 + 1e-12) + 1e-12);
    for (const auto& e : ms.entries) jobs.push_back({spec.ends[k].label, e.mu, e.multiplicity});
  }

  CountingResult result;
  result.lambdas = lambdas;
  result.modes.resize(jobs.size());
  std::vector<char> coarse(jobs.size(), 0);
  parallel_for(jobs.size(), options.threads, [&](std::size_t j) {
    const Grid g = options.grid.grid_for(model, jobs[j].mu, lam_max);
    bool warn = false;
    result.modes[j] = ModeCount{jobs[j].label, jobs[j].mu, jobs[j].mult,
                                streamed_counts(model, jobs[j].mu, g, pert, lambdas, &warn)};
    coarse[j] = warn && result.modes[j].counts.back() > 0;
  });
  result.totals.assign(lambdas.size(), 0);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      result.totals[i] += result.modes[j].counts[i] * result.modes[j].multiplicity;
    result.coarse_warning = result.coarse_warning || coarse[j];
  }
  std::erase_if(result.modes, [](const ModeCount& m) {
    return std::all_of(m.counts.begin(), m.counts.end(), [](std::size_t c) { return c == 0; });
  });
  return result;
}

std::size_t counting_function(const ManifoldSpec& spec, const PotentialSpec& potential, double lambda,
                              const CountingOptions& options) {
  return counting_samples(spec, potential, {lambda}, options).totals.front();
}

cvec resolvent_apply(const RadialOperator& op, std::complex<double> z, const cvec& b) {
  // Tridiagonal LU with partial pivoting (the gtsv scheme).
  const std::size_t N = op.size();
  if (b.size() != N) throw PreconditionError("resolvent_apply: size mismatch");
  cvec dl(op.offdiag.begin(), op.offdiag.end()), du(dl), du2(N, 0.0), d(N), x(b);
  for (std::size_t i = 0; i < N; ++i) d[i] = op.diag[i] - z;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) throw NumericalError("singular resolvent");
      const auto f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      x[i + 1] -= f * x[i];
      dl[i] = 0.0;
    } else {
      const auto f = d[i] / dl[i];
      d[i] = dl[i];
      const auto t = d[i + 1];
      d[i + 1] = du[i] - f * t;
      if (i + 2 < N) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      du[i] = t;
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= f * x[i];
    }
  }
  if (d[N - 1] == 0.0) throw NumericalError("singular resolvent");
  x[N - 1] /= d[N - 1];
  if (N > 1) x[N - 2] = (x[N - 2] - du[N - 2] * x[N - 1]) / d[N - 2];
  for (std::size_t k = N - 2; k-- > 0;) x[k] = (x[k] - du[k] * x[k + 1] - du2[k] * x[k + 2]) / d[k];
  return x;
}

double operator_norm(std::size_t size, const std::function<cvec(const cvec&)>& apply,
                     const std::function<cvec(const cvec&)>& apply_adjoint, double rel_tol) {
  if (size == 0) return 0.0;
  const std::size_t max_steps = std::min<std::size_t>(size, 300);
  std::vector<cvec> basis;
  std::vector<double> alpha, beta;
  // Deterministic start vector with full support.
  cvec v(size);
  double nrm = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    v[i] = {1.0 + 0.5 * std::sin(1.0 + 0.7 * i), 0.3 * std::cos(0.37 * i)};
    nrm += std::norm(v[i]);
  }
  for (auto& c : v) c /= std::sqrt(nrm);
  double previous = -1.0, estimate = 0.0;
  for (std::size_t k = 0; k < max_steps; ++k) {
    basis.push_back(v);
    cvec w = apply_adjoint(apply(v));
    std::complex<double> a = 0.0;
    for (std::size_t i = 0; i < size; ++i) a += std::conj(v[i]) * w[i];
    alpha.push_back(a.real());
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        std::complex<double> c = 0.0;
        for (std::size_t i = 0; i < size; ++i) c += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < size; ++i) w[i] -= c * q[i];
      }
    double bnorm = 0.0;
    for (const auto& c : w) bnorm += std::norm(c);
    bnorm = std::sqrt(bnorm);

    const std::size_t m = alpha.size();
    Eigen::VectorXd dd = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd ee(m > 1 ? m - 1 : 0);
    for (std::size_t i = 0; i + 1 < m; ++i) ee[i] = beta[i];
    if (m == 1) {
      estimate = alpha[0];
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(dd, ee, Eigen::EigenvaluesOnly);
      estimate = es.eigenvalues().maxCoeff();
    }
    if (bnorm <= 1e-14 * std::max(estimate, 1e-300)) break;
    if (previous >= 0 && std::abs(estimate - previous) <= rel_tol * estimate && k >= 4) break;
    previous = estimate;
    beta.push_back(bnorm);
    for (std::size_t i = 0; i < size; ++i) v[i] = w[i] / bnorm;
  }
  return std::sqrt(std::max(estimate, 0.0));
}

std::vector<double> radial_weight(const Grid& grid, double s_weight) {
  std::vector<double> w(grid.interior());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(std::max(grid.node(i), 1.0), -s_weight);
  return w;
}

namespace {

double weighted_norm(const RadialOperator& op, const std::function<cvec(const cvec&, bool)>& core, double s_weight) {
  const auto W = radial_weight(op.grid, s_weight);
  auto sandwich = [&](const cvec& x, bool adjoint) {
    cvec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = W[i] * x[i];
    y = core(y, adjoint);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] *= W[i];
    return y;
  };
  return operator_norm(
      op.size(), [&](const cvec& x) { return sandwich(x, false); }, [&](const cvec& x) { return sandwich(x, true); });
}

}  // namespace

namespace {

void check_resolvent_args(std::complex<double> z, double s_weight) {
  if (z.imag() == 0.0) throw PreconditionError("resolvent needs Im z != 0");
  if (!(s_weight > 0.5 && s_weight < 1.5)) throw PreconditionError("weight exponent s must lie in (1/2, 3/2)");
}

}  // namespace

double weighted_resolvent_norm(const RadialOperator& op, std::complex<double> z, double s_weight) {
  check_resolvent_args(z, s_weight);
  return weighted_norm(
      op, [&](const cvec& x, bool adj) { return resolvent_apply(op, adj ? std::conj(z) : z, x); }, s_weight);
}

double weighted_resolvent_difference(const RadialOperator& op, std::complex<double> z1, std::complex<double> z2,
                                     double s_weight) {
  check_resolvent_args(z1, s_weight);
  check_resolvent_args(z2, s_weight);
  return weighted_norm(
      op,
      [&](const cvec& x, bool adj) {
        auto a = resolvent_apply(op, adj ? std::conj(z1) : z1, x);
        const auto b = resolvent_apply(op, adj ? std::conj(z2) : z2, x);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        return a;
      },
      s_weight);
}

RadialOperator assemble_horn(int n, const Rational& p, double eps, std::size_t cells) {
  if (p <= 1) throw PreconditionError("horn model needs p > 1");
  if (!(eps > 0)) throw PreconditionError("horn cutoff eps must be positive");
  if (cells < 8) throw PreconditionError("horn grid needs at least 8 cells");
  const double q = pd(p);
  const double hh = eps / static_cast<double>(cells);
  auto a = [&](double x) { return std::pow(x, (n - 2) * q + 2.0); };
  auto w = [&](double x) { return std::pow(x, n * q - 2.0); };
  RadialOperator op;
  op.grid = Grid{0.0, hh, cells};
  op.n = n;
  op.p = p;
  op.diag.assign(cells, 0.0);
  op.offdiag.assign(cells - 1, 0.0);
  std::vector<double> mass(cells);
  for (std::size_t i = 0; i < cells; ++i) mass[i] = w((i + 0.5) * hh) * hh;
  // Interior faces couple neighbouring cells; the face at 0 carries no flux
  // and the face at eps holds u = 0 half a cell away.
  for (std::size_t i = 0; i + 1 < cells; ++i) {
    const double k = a((i + 1) * hh) / hh;
    op.diag[i] += k;
    op.diag[i + 1] += k;
    op.offdiag[i] = -k;
  }
  op.diag[cells - 1] += 2.0 * a(eps) / hh;
  for (std::size_t i = 0; i < cells; ++i) op.diag[i] /= mass[i];
  for (std::size_t i = 0; i + 1 < cells; ++i) op.offdiag[i] /= std::sqrt(mass[i] * mass[i + 1]);
  return op;
}

}  // namespace cuspmag
