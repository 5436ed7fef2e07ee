#include "cuspmag/analysis.hpp"
#include "cuspmag/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace cuspmag;

TEST_CASE("weyl constants by regime") {
  WeylPrediction w = weyl_constants(circle_config("2", "1", "1/2").spec, circle_config("2", "1", "1/2").potential);
  CHECK(w.regime == WeylRegime::Above);
  // Vol(S^1) Vol(X) / (2pi)^2 with Vol(X) = 2pi/10
  CHECK(w.constant == doctest::Approx(0.05));
  CHECK(w.exponent == 1.0);
  CHECK_FALSE(w.log_factor);

  const Config crit = circle_config("2", "1/2", "1/2", "1/4");
  w = weyl_constants(crit.spec, crit.potential);
  CHECK(w.regime == WeylRegime::Critical);
  CHECK(w.log_factor);
  CHECK(regime_name(w.regime) == "critical");

  const Config below = circle_config("2", "1/3", "1/2");
  w = weyl_constants(below.spec, below.potential);
  CHECK(w.regime == WeylRegime::Below);
  CHECK(w.exponent == doctest::Approx(1.5));
  CHECK(*w.zeta_s == doctest::Approx(1.0));
  CHECK(*w.zeta_value == doctest::Approx(M_PI * M_PI).epsilon(1e-10));
  CHECK(w.constant == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(std::isinf(w.total_volume));

  const Config open = circle_config("2", "1", "0");
  CHECK_THROWS_AS(weyl_constants(open.spec, open.potential), PreconditionError);
}

TEST_CASE("weyl fit on synthetic counts") {
  const Config c = circle_config("2", "1", "1/2");
  const WeylPrediction w = weyl_constants(c.spec, c.potential);
  std::vector<double> lambdas, exact, wrong;
  for (int i = 0; i < 10; ++i) {
    const double l = 1000.0 * std::pow(10.0, i / 9.0);
    lambdas.push_back(l);
    exact.push_back(std::floor(0.05 * l));
    wrong.push_back(0.05 * l * std::log(l));
  }
  const WeylFit good = weyl_fit(lambdas, exact, w);
  CHECK(good.relative_error < 0.01);
  CHECK(good.mean_ratio == doctest::Approx(1.0).epsilon(0.01));
  CHECK_FALSE(good.law_mismatch);
  CHECK(good.fitted_from == 5);
  CHECK(weyl_fit(lambdas, wrong, w).law_mismatch);

  CHECK_THROWS_AS(weyl_fit({2, 3, 4, 5}, {1, 2, 3, 4}, w), PreconditionError);
  CHECK_THROWS_AS(weyl_fit({2, 3, 4, 5, 6}, {1, 2, 3, 4, 5}, w), PreconditionError);  // under a decade
  std::vector<double> flat(lambdas.size(), 3.0);
  CHECK_THROWS_AS(weyl_fit(lambdas, flat, w), PreconditionError);
}

TEST_CASE("threshold estimate for an open end") {
  const Config c = circle_config("2", "1", "0");
  const double r0 = radial_origin(c.spec);
  ThresholdOptions o;
  o.h = 0.02;
  const ThresholdEstimate t = threshold_estimate(c.spec, c.potential, {r0 + 40, r0 + 60, r0 + 80}, o);
  CHECK_FALSE(t.discrete);
  CHECK(*t.kappa_hat == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(t.expected_kappa == 0.25);
  CHECK(t.ground_states[0] > t.ground_states[2]);
  CHECK_THROWS_AS(threshold_estimate(c.spec, c.potential, {r0 + 40, r0 + 60}, o), PreconditionError);
}

TEST_CASE("threshold estimate for a trapping end is stable") {
  const Config c = circle_config("2", "1", "1/2");
  const double r0 = radial_origin(c.spec);
  const ThresholdEstimate t = threshold_estimate(c.spec, c.potential, {r0 + 40, r0 + 60, r0 + 80}, {});
  CHECK(t.discrete);
  CHECK_FALSE(t.kappa_hat);
  CHECK(t.stability < 1e-8);
}

TEST_CASE("horn growth") {
  const Config c = circle_config("2", "2", "1/2");
  const HornEstimate h = horn_threshold(c.spec, 0.1, 3, 2000);
  CHECK(h.expected_growth == 4.0);
  for (double g : h.growth) CHECK(g == doctest::Approx(4.0).epsilon(0.01));
  const Config complete = circle_config("2", "1", "1/2");
  CHECK_THROWS_AS(horn_threshold(complete.spec, 0.1, 3, 2000), PreconditionError);
}

TEST_CASE("coupling scan follows the coupling group") {
  const Config c = circle_config("2", "1", "1/2");
  std::vector<Rational> g;
  for (int k = 0; k <= 12; ++k) g.push_back(Rational(k, 3));
  CouplingOptions o;
  o.box = 20;
  o.h = 0.04;
  const CouplingScan s = coupling_scan(c.spec, c.potential.per_end[0].flux, g, o);
  CHECK(s.group.generator == 2);
  for (const auto& row : s.rows) {
    const bool even = is_integral(Rational(row.g / 2));
    CHECK(row.non_trapping == even);
    CHECK(row.zero_mode == even);
  }
}

TEST_CASE("smoothing functions") {
  CHECK(smoothstep(-1) == 0.0);
  CHECK(smoothstep(2) == 1.0);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5));
  CHECK(bump(0.3) == 1.0);
  CHECK(bump(-1.0) == 1.0);
  CHECK(bump(2.5) == 0.0);
  CHECK(bump(1.5) == doctest::Approx(0.5));
}

TEST_CASE("discrete Phi_R") {
  const std::size_t n = 64;
  const double h = 0.1;
  const std::vector<double> inf = phi_operator(n, h, std::numeric_limits<double>::infinity());
  CHECK(inf[0 * n + 1] == doctest::Approx(1.0 / (2 * h)));
  CHECK(inf[1 * n + 0] == doctest::Approx(-1.0 / (2 * h)));
  CHECK(inf[0 * n + 2] == 0.0);
  const std::vector<double> big = phi_operator(n, h, 1e6);
  const std::vector<double> small = phi_operator(n, h, 2.0);
  double antisym = 0.0, dist_big = 0.0, dist_small = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      antisym = std::max(antisym, std::abs(small[i * n + j] + small[j * n + i]));
      dist_big = std::max(dist_big, std::abs(big[i * n + j] - inf[i * n + j]));
      dist_small = std::max(dist_small, std::abs(small[i * n + j] - inf[i * n + j]));
    }
  CHECK(antisym < 1e-12);
  CHECK(dist_big < 1e-6);
  CHECK(dist_small > 0.1);
}

TEST_CASE("mourre commutator for the free zero mode") {
  const Config c = circle_config("2", "1", "0");
  const RadialModel m = make_radial_model(c.spec);
  const RadialOperator op = assemble(m, 0.0, Grid::spanning(m.r0, m.r0 + 60, 0.05));
  const std::size_t n = op.size();
  for (double R : {2.0, std::numeric_limits<double>::infinity()}) {
    const std::vector<double> k = commutator_matrix(op, R);
    double asym = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        asym = std::max(asym, std::abs(k[i * n + j] - k[j * n + i]));
        scale = std::max(scale, std::abs(k[i * n + j]));
      }
    CHECK(asym < 1e-12 * std::max(1.0, scale));
  }
  // far from the cutoffs <phi, i[H, S_inf] phi> = 4 <phi, -phi''> (plain l2 pairing)
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = std::exp(-std::pow((op.grid.node(i) - (m.r0 + 30)) / 4.0, 2));
  double kinetic = 0.0;
  const double h = op.grid.h;
  for (std::size_t i = 0; i + 1 < n; ++i) kinetic += std::pow(phi[i + 1] - phi[i], 2) / h;
  kinetic += (phi[0] * phi[0] + phi[n - 1] * phi[n - 1]) / h;
  // O((h/sigma)^2) at this resolution
  CHECK(commutator_form_unbounded(op, phi) == doctest::Approx(4 * kinetic / h).epsilon(1e-3));
}

TEST_CASE("mourre probe preconditions and monotone epsilon") {
  const Config c = circle_config("2", "1", "0");
  MourreOptions o;
  o.r_max = radial_origin(c.spec) + 60;
  const Interval J{4.25, 6.25};
  const MourreProbeReport a = mourre_probe(c.spec, c.potential, 2.0, J, o);
  const MourreProbeReport b = mourre_probe(c.spec, c.potential, 4.0, J, o);
  CHECK(a.window_dimension > 0);
  CHECK(a.asymmetry < 1e-10);
  CHECK(a.epsilon_R > b.epsilon_R);
  const Config trap = circle_config("2", "1", "1/2");
  CHECK_THROWS_AS(mourre_probe(trap.spec, trap.potential, 2.0, J, o), PreconditionError);
  CHECK_THROWS_AS(mourre_probe(c.spec, c.potential, 2.0, Interval{1.0, 0.5}, o), PreconditionError);
}

TEST_CASE("holder probe") {
  const Config c = circle_config("2", "1", "0");
  HolderOptions o;
  o.r_max = {40, 80};
  o.h = 0.04;
  const HolderResult r = holder_probe(c.spec, c.potential, 1.0, {0.5, 1.0}, {}, o);
  CHECK(r.exponent >= 0.45);
  CHECK(r.stable);
  CHECK(r.distances.size() == r.differences.size());
  CHECK_THROWS_AS(holder_probe(c.spec, c.potential, 0.5, {0.5, 1.0}, {}, o), PreconditionError);

  const Config trap = circle_config("2", "1", "1/2");
  const ResolventGrowth g = resolvent_growth(trap.spec, trap.potential, 1.0, std::nullopt, {1e-1, 1e-2, 1e-3}, o);
  CHECK(g.norms[1] > 5 * g.norms[0]);
  CHECK(g.norms[2] > 5 * g.norms[1]);
}
