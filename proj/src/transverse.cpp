#include "cuspmag/transverse.hpp"

#include "cuspmag/error.hpp"
#include "cuspmag/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace cuspmag {

std::size_t ModeSpectrum::count() const {
  std::size_t c = 0;
  for (const auto& e : entries) c += e.multiplicity;
  return c;
}

std::size_t ModeSpectrum::count_at_most(double mu) const {
  std::size_t c = 0;
  for (const auto& e : entries)
    if (e.mu <= mu) c += e.multiplicity;
  return c;
}

namespace {

// Visits every integer vector k with |k_i + a_i| <= bound_i.
void for_each_in_box(const std::vector<double>& shift, const std::vector<double>& bound,
                     const std::function<void(const std::vector<long>&)>& visit) {
  const std::size_t d = shift.size();
  std::vector<long> lo(d), hi(d), k(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = static_cast<long>(std::ceil(-bound[i] - shift[i]));
    hi[i] = static_cast<long>(std::floor(bound[i] - shift[i]));
    if (lo[i] > hi[i]) return;
  }
  k = lo;
  while (true) {
    visit(k);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (k[i] < hi[i]) {
        ++k[i];
        for (std::size_t j = i + 1; j < d; ++j) k[j] = lo[j];
        break;
      }
      if (i == 0) return;
    }
  }
}

std::vector<std::vector<double>> to_double(const RationalMatrix& m) {
  std::vector<std::vector<double>> out(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = cuspmag::to_double(m[i][j]);
  return out;
}

}  // namespace

ModeSpectrum mode_spectrum(const BoundaryComponent& component, const RationalVector& flux, double mu_max) {
  if (!(mu_max >= 0)) throw PreconditionError("mode_spectrum needs mu_max >= 0");
  if (flux.size() != component.betti()) throw PreconditionError("flux length ≠ b₁");
  const RationalMatrix gram = component.gram_coefficients();
  const RationalMatrix ginv = inverse(gram);
  const double scale = 4.0 * std::pow(M_PI, 2 - component.gram_pi_power());
  const std::size_t d = flux.size();

  std::vector<double> shift(d), bound(d);
  for (std::size_t i = 0; i < d; ++i) {
    shift[i] = cuspmag::to_double(flux[i]);
    // Ellipsoid x^T C^{-1} x <= T has |x_i| <= sqrt(T C_ii).
    bound[i] = std::sqrt(mu_max / scale * cuspmag::to_double(gram[i][i])) + 1e-9;
  }

  std::map<Rational, ModeEntry> grouped;
  RationalVector x(d);
  for_each_in_box(shift, bound, [&](const std::vector<long>& k) {
    for (std::size_t i = 0; i < d; ++i) x[i] = Rational(k[i]) + flux[i];
    Rational q{0};
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q += x[i] * ginv[i][j] * x[j];
    const double mu = scale * cuspmag::to_double(q);
    if (mu > mu_max * (1 + 1e-12)) return;
    auto& e = grouped[q];
    e.exact = q;
    e.mu = mu;
    ++e.multiplicity;
    e.lattice_indices.push_back(k);
  });

  ModeSpectrum out{component.label, flux, mu_max, {}};
  for (auto& [q, e] : grouped) {
    std::sort(e.lattice_indices.begin(), e.lattice_indices.end());
    out.entries.push_back(std::move(e));
  }
  return out;
}

std::size_t kernel_dimension(const ManifoldSpec& spec, const PotentialSpec& potential) {
  const Verdict v = classify_potential(spec, potential);
  return static_cast<std::size_t>(
      std::count_if(v.components.begin(), v.components.end(), [](const auto& c) { return !c.trapping; }));
}

namespace {

struct DualLattice {
  std::size_t d = 0;
  std::vector<std::vector<double>> metric;  // mu = x^T metric x
  std::vector<double> shift;
  double covolume = 0.0;
  double covering_radius = 0.0;
};

DualLattice dual_lattice(const BoundaryComponent& component, const RationalVector& flux) {
  DualLattice L;
  L.d = flux.size();
  const double scale = 4.0 * std::pow(M_PI, 2 - component.gram_pi_power());
  const RationalMatrix gram = component.gram_coefficients();
  L.metric = to_double(inverse(gram));
  for (auto& row : L.metric)
    for (auto& e : row) e *= scale;
  for (const auto& a : flux) L.shift.push_back(cuspmag::to_double(a));
  // The dual lattice has covolume (2 pi)^d / Vol(M); half the sum of its basis
  // lengths bounds the covering radius.
  L.covolume = std::pow(2.0 * M_PI, static_cast<double>(L.d)) / component.volume();
  for (std::size_t i = 0; i < L.d; ++i) L.covering_radius += 0.5 * std::sqrt(L.metric[i][i]);
  return L;
}

double unit_sphere_area(std::size_t d) {
  const double half = 0.5 * static_cast<double>(d);
  return 2.0 * std::pow(M_PI, half) / std::tgamma(half);
}

// Sum over |v| > R of |v|^{-2s} <= 2^{d-1} S_{d-1} / c * (R - 2 rho)^{d-2s} / (2s - d), R >= 3 rho.
double tail_bound(const DualLattice& L, double s, double radius) {
  const double d = static_cast<double>(L.d);
  if (radius < 3.0 * L.covering_radius) return std::numeric_limits<double>::infinity();
  return std::pow(2.0, d - 1.0) * unit_sphere_area(L.d) / L.covolume *
         std::pow(radius - 2.0 * L.covering_radius, d - 2.0 * s) / (2.0 * s - d);
}

void check_zeta_args(const BoundaryComponent& component, const RationalVector& flux, double s) {
  const double d = static_cast<double>(component.betti());
  if (flux.size() != component.betti()) throw PreconditionError("flux length ≠ b₁");
  if (!(s > 0.5 * d)) throw PreconditionError("spectral zeta diverges for s <= (n-1)/2");
  if (is_integral(flux) && s <= 0) throw PreconditionError("spectral zeta undefined for integer flux and s <= 0");
}

}  // namespace

ZetaResult spectral_zeta_truncated(const BoundaryComponent& component, const RationalVector& flux, double s,
                                   double radius) {
  check_zeta_args(component, flux, s);
  const DualLattice L = dual_lattice(component, flux);
  const RationalMatrix gram = component.gram_coefficients();
  const double scale = 4.0 * std::pow(M_PI, 2 - component.gram_pi_power());
  std::vector<double> bound(L.d);
  for (std::size_t i = 0; i < L.d; ++i)
    bound[i] = radius * std::sqrt(cuspmag::to_double(gram[i][i]) / scale) + 1e-9;

  double box = 1.0;
  for (double b : bound) box *= 2.0 * b + 1.0;
  if (box > 4e8) throw NumericalError("spectral zeta enumeration exceeds 4e8 lattice points");

  // Neumaier compensated summation in enumeration order.
  double sum = 0.0, comp = 0.0;
  std::size_t terms = 0;
  const double r2 = radius * radius;
  std::vector<double> x(L.d);
  for_each_in_box(L.shift, bound, [&](const std::vector<long>& k) {
    for (std::size_t i = 0; i < L.d; ++i) x[i] = static_cast<double>(k[i]) + L.shift[i];
    double mu = 0.0;
    for (std::size_t i = 0; i < L.d; ++i)
      for (std::size_t j = 0; j < L.d; ++j) mu += x[i] * L.metric[i][j] * x[j];
    if (mu > r2 || mu <= 1e-300) return;
    const double term = std::pow(mu, -s);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    ++terms;
  });
  return ZetaResult{sum + comp, tail_bound(L, s, radius), radius, terms};
}

namespace {

// Sum_{j >= 0} (y + j)^{-2s} by Euler-Maclaurin through B4; the B6 term bounds the remainder.
std::pair<double, double> power_tail(double y, double s) {
  const double t = 2.0 * s;
  const double value = std::pow(y, 1.0 - t) / (t - 1.0) + 0.5 * std::pow(y, -t) + t / 12.0 * std::pow(y, -t - 1.0) -
                       t * (t + 1.0) * (t + 2.0) / 720.0 * std::pow(y, -t - 3.0);
  const double err = t * (t + 1.0) * (t + 2.0) * (t + 3.0) * (t + 4.0) / 30240.0 * std::pow(y, -t - 5.0);
  return {value, err};
}

// Circles: mu_k = m (k + a)^2. Direct sum over |k + a| < X, closed-form tails on both sides.
ZetaResult circle_zeta(const DualLattice& L, double s, double tol) {
  const double m = L.metric[0][0], a = L.shift[0] - std::floor(L.shift[0]);
  const double ms = std::pow(m, -s);
  double X = 16.0, err = 0.0;
  for (;; X *= 2.0) {
    const double e = 2.0 * ms * power_tail(X, s).second;
    if (e < 0.1 * tol || X > 1e7) {
      err = e;
      break;
    }
  }
  const long K = static_cast<long>(X);
  double sum = 0.0, comp = 0.0;
  std::size_t terms = 0;
  auto add = [&](double term) {
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  };
  // x = k + a for k in [-K, K); both tails start one step past the window.
  for (long k = K - 1; k >= -K; --k) {
    const double x = static_cast<double>(k) + a;
    if (std::abs(x) <= 1e-300) continue;
    add(ms * std::pow(x * x, -s));
    ++terms;
  }
  add(ms * power_tail(static_cast<double>(K) + a, s).first);
  add(ms * power_tail(static_cast<double>(K) + 1.0 - a, s).first);
  return ZetaResult{sum + comp, err, std::sqrt(m) * static_cast<double>(K), terms};
}

}  // namespace

ZetaResult spectral_zeta_detail(const BoundaryComponent& component, const RationalVector& flux, double s,
                                double tol) {
  check_zeta_args(component, flux, s);
  if (!(tol > 0)) throw PreconditionError("spectral zeta needs tol > 0");
  const DualLattice L = dual_lattice(component, flux);
  if (L.d == 1) return circle_zeta(L, s, tol);
  const double d = static_cast<double>(L.d);
  const double k = std::pow(2.0, d - 1.0) * unit_sphere_area(L.d) / (L.covolume * (2.0 * s - d));
  double radius = 2.0 * L.covering_radius + std::pow(k / tol, 1.0 / (2.0 * s - d));
  radius = std::max(radius, 3.0 * L.covering_radius);
  while (tail_bound(L, s, radius) >= tol) radius *= 1.001;
  return spectral_zeta_truncated(component, flux, s, radius);
}

double spectral_zeta(const BoundaryComponent& component, const RationalVector& flux, double s, double tol) {
  return spectral_zeta_detail(component, flux, s, tol).value;
}

}  // namespace cuspmag
