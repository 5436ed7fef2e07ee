#include "cuspmag/pipeline.hpp"

#include "cuspmag/analysis.hpp"
#include "cuspmag/error.hpp"
#include "cuspmag/topology.hpp"
#include "cuspmag/transverse.hpp"

#include <algorithm>
#include <cmath>

namespace cuspmag {

namespace {

std::string vec_text(const RationalVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

Json rationals_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json reals_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json group_json(const CyclicGroup& g) {
  return {{"all_reals", g.all_reals}, {"generator", g.all_reals ? Json(nullptr) : Json(to_string(g.generator))}};
}

void require_ends(const Config& c, const std::string& command) {
  if (c.spec.ends.empty()) throw ConfigError(command + " needs at least one [end.<label>] section", "end");
}

// Geometry echo shared by every spectral report.
Json geometry_json(const Config& c) {
  Json g;
  g["n"] = c.spec.n;
  g["p"] = to_string(c.spec.p);
  g["x0"] = to_string(c.spec.x0);
  g["core_volume"] = to_string(c.spec.core_volume);
  g["complete"] = c.spec.complete();
  g["r0"] = c.spec.complete() ? number(radial_origin(c.spec)) : Json(nullptr);
  Json ends = Json::array();
  for (std::size_t k = 0; k < c.spec.ends.size(); ++k) {
    const auto& e = c.spec.ends[k];
    ends.push_back({{"label", e.label},
                    {"kind", e.is_circle() ? "circle" : "torus"},
                    {"betti", e.betti()},
                    {"volume", number(e.volume())},
                    {"end_volume", number(end_volume(c.spec, e))},
                    {"flux", rationals_json(c.potential.per_end[k].flux)}});
  }
  g["ends"] = ends;
  return g;
}

void flag_horn(const Config& c, Report& r) {
  if (!c.spec.complete()) r.warnings.push_back("incomplete: p > 1 is a metric horn");
}

CountingOptions counting_options(const Config& c, unsigned threads) {
  CountingOptions o;
  o.grid.h = c.numerics.real("h");
  o.grid.r_max = c.numerics.real("r_max");
  o.perturbation = c.perturbation;
  o.inverse_square_override = c.numerics.real("c0_eff");
  o.continuum = c.numerics.flag("continuum", false);
  o.threads = threads;
  return o;
}

double threshold_of(const Config& c) {
  if (!c.spec.complete()) return 0.0;
  return make_radial_model(c.spec, c.numerics.real("c0_eff")).threshold();
}

Interval default_window(const Config& c) {
  if (auto w = c.numerics.interval("window")) return *w;
  const double k = threshold_of(c);
  return {k + 0.25, k + 0.75};
}

Report cmd_classify(const Config& c) {
  Report r;
  r.columns = {"label", "trapping", "reason"};
  if (!c.spec.ends.empty()) {
    const Verdict v = classify_potential(c.spec, c.potential);
    Json comps = Json::array();
    for (const auto& cv : v.components) {
      comps.push_back({{"label", cv.label}, {"trapping", cv.trapping}, {"reason", std::string(reason_code(cv.reason))}});
      r.add_row({cv.label, static_cast<long long>(cv.trapping), std::string(reason_code(cv.reason))});
    }
    r.results["potential"] = {{"components", comps},
                              {"trapping", v.trapping},
                              {"maximal_non_trapping", v.maximal_non_trapping},
                              {"kernel_dimension", kernel_dimension(c.spec, c.potential)}};
    r.inputs["geometry"] = geometry_json(c);
  }
  if (c.field) {
    Json f;
    f["h1_zero"] = c.field->h1_zero;
    if (c.field->h1_zero) {
      f["trapping"] = classify_field(*c.field);
      const GroupDescription g = coupling_group(*c.field);
      Json members = Json::array();
      for (const auto& [label, grp] : g.members) members.push_back({{"label", label}, {"group", group_json(grp)}});
      f["coupling_group"] = {{"members", members}, {"is_group", g.is_group()}};
    } else {
      f["trapping"] = nullptr;
      r.warnings.push_back("field: H^1(X) != 0, trapping is gauge-dependent; classify a potential instead");
    }
    r.results["field"] = f;
  }
  if (c.surface) {
    const SurfaceGaugeOptions o = surface_gauge_options(c.surface->cusps, c.surface->orientable, c.surface->b_class);
    r.results["surface"] = {{"cusps", c.surface->cusps},
                            {"orientable", c.surface->orientable},
                            {"b_class", to_string(c.surface->b_class)},
                            {"trapping_exists", o.trapping_exists},
                            {"non_trapping_exists", o.non_trapping_exists}};
  }
  if (c.three_manifold) {
    const ThreeManifoldGauge g = three_manifold_gauge(c.three_manifold->presentation, c.three_manifold->b);
    Json cusps = Json::array();
    for (const auto& cg : g.cusps) {
      Json dir = Json::array();
      for (const auto& d : cg.direction) dir.push_back(d.str());
      cusps.push_back({{"surjective", cg.surjective},
                       {"direction", dir},
                       {"generator", to_string(cg.generator)},
                       {"member", cg.member}});
    }
    r.results["three_manifold"] = {{"non_trapping_exists", g.non_trapping_exists}, {"q", g.q.str()}, {"cusps", cusps}};
  }
  if (r.results.empty()) throw ConfigError("classify needs ends, [field], [surface] or [three_manifold]", "");
  return r;
}

Report cmd_modes(const Config& c) {
  require_ends(c, "modes");
  Report r;
  const double mu_max = c.numerics.real("mu_max", 100.0);
  r.inputs["geometry"] = geometry_json(c);
  r.inputs["mu_max"] = number(mu_max);
  r.columns = {"label", "mu", "exact", "pi_power", "multiplicity"};
  Json spectra = Json::array();
  for (std::size_t k = 0; k < c.spec.ends.size(); ++k) {
    const auto& e = c.spec.ends[k];
    const ModeSpectrum ms = mode_spectrum(e, c.potential.per_end[k].flux, mu_max);
    const int pi_power = 2 - e.gram_pi_power();
    Json entries = Json::array();
    for (const auto& m : ms.entries) {
      // mu = 4 * exact * pi^pi_power
      const std::string exact = to_string(m.exact * 4);
      entries.push_back({{"mu", number(m.mu)}, {"exact", exact}, {"pi_power", pi_power}, {"multiplicity", m.multiplicity}});
      r.add_row({e.label, m.mu, exact, static_cast<long long>(pi_power), static_cast<long long>(m.multiplicity)});
    }
    spectra.push_back({{"label", e.label}, {"entries", entries}, {"count", ms.count()}});
  }
  r.results["spectra"] = spectra;
  r.results["kernel_dimension"] = kernel_dimension(c.spec, c.potential);
  return r;
}

Report cmd_spectrum(const Config& c, unsigned threads) {
  require_ends(c, "spectrum");
  Report r;
  flag_horn(c, r);
  const double lam = c.numerics.real("lambda_max", 100.0);
  const double tol = c.numerics.real("tol", 1e-10);
  const CountingOptions o = counting_options(c, threads);
  r.inputs["geometry"] = geometry_json(c);
  r.inputs["lambda_max"] = number(lam);
  r.inputs["tol"] = number(tol);
  const CountingResult cr = counting_samples(c.spec, c.potential, {lam}, o);
  const RadialModel model = make_radial_model(c.spec, o.inverse_square_override);
  struct Row {
    double value;
    std::string label;
    double mu;
    std::size_t mult;
  };
  std::vector<Row> rows;
  for (const auto& m : cr.modes) {
    const Grid g = o.grid.grid_for(model, m.mu, lam);
    for (double v : eigenvalues_below(assemble(model, m.mu, g, o.perturbation), lam, tol)) rows.push_back({v, m.label, m.mu, m.multiplicity});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.value, a.label, a.mu) < std::tie(b.value, b.label, b.mu);
  });
  r.columns = {"eigenvalue", "label", "mu", "multiplicity"};
  for (const auto& row : rows) r.add_row({row.value, row.label, row.mu, static_cast<long long>(row.mult)});
  r.results["count"] = cr.totals.front();
  r.results["coarse_grid"] = cr.coarse_warning;
  r.results["threshold"] = number(model.threshold());
  if (cr.coarse_warning) r.warnings.push_back("grid may be too coarse: h^2 * max potential > 1");
  if (kernel_dimension(c.spec, c.potential) > 0)
    r.warnings.push_back("continuum: non-trapping ends, eigenvalues above the threshold belong to the truncated box");
  return r;
}

Report cmd_weyl(const Config& c, unsigned threads) {
  require_ends(c, "weyl");
  Report r;
  flag_horn(c, r);
  const double lam_max = c.numerics.real("lambda_max", 1e4);
  const double lam_min = c.numerics.real("lambda_min", lam_max / 10.0);
  const std::size_t samples = c.numerics.count("samples", 10);
  const std::string spacing = c.numerics.ident("lambda_grid", "log");
  if (!(lam_min < lam_max)) throw ConfigError("lambda_min must be below lambda_max", "numerics.lambda_min");
  if (spacing != "log" && spacing != "linear") throw ConfigError("lambda_grid must be log or linear", "numerics.lambda_grid");
  if (samples < 5) throw ConfigError("weyl needs at least 5 samples", "numerics.samples");
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    lambdas.push_back(spacing == "log" ? lam_min * std::pow(lam_max / lam_min, t) : lam_min + (lam_max - lam_min) * t);
  }
  lambdas.back() = lam_max;
  const WeylPrediction w = weyl_constants(c.spec, c.potential, c.numerics.real("zeta_tol", 1e-10));
  const CountingResult cr = counting_samples(c.spec, c.potential, lambdas, counting_options(c, threads));
  std::vector<double> counts(cr.totals.begin(), cr.totals.end());
  const WeylFit fit = weyl_fit(lambdas, counts, w);

  r.inputs["geometry"] = geometry_json(c);
  r.inputs["lambdas"] = reals_json(lambdas);
  r.inputs["lambda_grid"] = spacing;
  Json pred = {{"regime", std::string(regime_name(w.regime))},
               {"constant", number(w.constant)},
               {"exponent", number(w.exponent)},
               {"log_factor", w.log_factor},
               {"law", w.law},
               {"total_volume", number(w.total_volume)},
               {"boundary_volume", number(w.boundary_volume)},
               {"sphere_volume", number(w.sphere_volume)}};
  if (w.zeta_s) {
    pred["zeta_s"] = number(*w.zeta_s);
    pred["zeta_value"] = number(*w.zeta_value);
    pred["gamma_prefactor"] = number(*w.gamma_prefactor);
  }
  r.results["prediction"] = pred;
  r.results["fit"] = {{"fitted", number(fit.fitted)},
                      {"predicted", number(fit.predicted)},
                      {"relative_error", number(fit.relative_error)},
                      {"mean_ratio", number(fit.mean_ratio)},
                      {"residual_trend", number(fit.residual_trend)},
                      {"law_mismatch", fit.law_mismatch},
                      {"fitted_from_lambda", number(lambdas[fit.fitted_from])}};
  r.results["coarse_grid"] = cr.coarse_warning;
  if (fit.law_mismatch) r.warnings.push_back("model mismatch: residual trend exceeds 10% over the fitted range");
  if (cr.coarse_warning) r.warnings.push_back("grid may be too coarse: h^2 * max potential > 1");
  r.columns = {"lambda", "count", "prediction", "ratio"};
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    r.add_row({lambdas[i], static_cast<long long>(cr.totals[i]), w.predict(lambdas[i]), fit.ratios[i]});
  return r;
}

Report cmd_threshold(const Config& c) {
  require_ends(c, "threshold");
  Report r;
  r.inputs["geometry"] = geometry_json(c);
  if (!c.spec.complete()) {
    flag_horn(c, r);
    const double eps0 = c.numerics.real("horn_eps", to_double(c.spec.x0));
    const int halvings = static_cast<int>(c.numerics.count("horn_halvings", 4));
    const std::size_t cells = c.numerics.count("horn_cells", 4000);
    const HornEstimate h = horn_threshold(c.spec, eps0, halvings, cells);
    r.inputs["horn_eps"] = number(eps0);
    r.inputs["horn_halvings"] = halvings;
    r.inputs["horn_cells"] = cells;
    r.results = {{"discrete", true},
                 {"kappa_hat", nullptr},
                 {"expected_growth", number(h.expected_growth)},
                 {"growth", reals_json(h.growth)}};
    r.columns = {"eps", "ground_state", "growth"};
    for (std::size_t k = 0; k < h.eps.size(); ++k)
      r.add_row({h.eps[k], h.ground_states[k], k == 0 ? std::numeric_limits<double>::quiet_NaN() : h.growth[k - 1]});
    return r;
  }
  const RadialModel model = make_radial_model(c.spec, c.numerics.real("c0_eff"));
  ThresholdOptions o;
  o.h = c.numerics.real("h", 0.01);
  o.tol = c.numerics.real("tol", 1e-10);
  o.inverse_square_override = c.numerics.real("c0_eff");
  std::vector<double> schedule;
  for (double L : c.numerics.reals("box_schedule", {40.0, 60.0, 80.0})) schedule.push_back(model.r0 + L);
  const ThresholdEstimate t = threshold_estimate(c.spec, c.potential, schedule, o);
  r.inputs["h"] = number(o.h);
  r.inputs["r_max"] = reals_json(schedule);
  r.results = {{"discrete", t.discrete},
               {"kappa_hat", t.kappa_hat ? number(*t.kappa_hat) : Json(nullptr)},
               {"richardson_slope", t.richardson_slope ? number(*t.richardson_slope) : Json(nullptr)},
               {"expected_kappa", number(t.expected_kappa)},
               {"stability", number(t.stability)}};
  r.columns = {"r_max", "ground_state"};
  for (std::size_t k = 0; k < schedule.size(); ++k) r.add_row({schedule[k], t.ground_states[k]});
  return r;
}

Report cmd_scan(const Config& c, unsigned threads) {
  require_ends(c, "scan-coupling");
  if (c.spec.ends.size() != 1) throw ConfigError("scan-coupling needs exactly one end; its flux is the base flux", "end");
  Report r;
  std::vector<Rational> g = c.numerics.rationals("g_grid");
  if (!c.numerics.has("g_grid"))
    for (int k = 0; k <= 8; ++k) g.push_back(Rational(k, 2));
  CouplingOptions o;
  if (auto v = c.numerics.real("spacing_lambda")) o.lambda_star = *v;
  o.box = c.numerics.real("box", 40.0);
  o.h = c.numerics.real("h", 0.02);
  o.inverse_square_override = c.numerics.real("c0_eff");
  o.threads = threads;
  const CouplingScan s = coupling_scan(c.spec, c.potential.per_end.front().flux, g, o);
  r.inputs["geometry"] = geometry_json(c);
  r.inputs["g_grid"] = rationals_json(g);
  r.inputs["box"] = number(o.box);
  r.inputs["h"] = number(o.h);
  r.results = {{"base_flux", rationals_json(s.base_flux)}, {"group", group_json(s.group)}, {"lambda_star", number(s.lambda_star)}};
  r.columns = {"g", "flux", "non_trapping", "zero_mode", "ground_state", "spacing", "spacing_long", "spacing_ratio"};
  for (const auto& row : s.rows)
    r.add_row({to_string(row.g), vec_text(row.flux), static_cast<long long>(row.non_trapping),
               static_cast<long long>(row.zero_mode), row.ground_state, row.spacing, row.spacing_long, row.spacing_ratio});
  return r;
}

Report cmd_mourre(const Config& c) {
  require_ends(c, "mourre");
  Report r;
  const Interval J = default_window(c);
  MourreOptions o;
  o.h = c.numerics.real("mourre_h", 0.05);
  o.margin = c.numerics.real("mourre_margin", 4.0);
  o.r_max = c.numerics.real("mourre_r_max", radial_origin(c.spec) + 100.0);
  const auto Rs = c.numerics.reals("mourre_R", {2.0, 4.0, 8.0, std::numeric_limits<double>::infinity()});
  r.inputs["geometry"] = geometry_json(c);
  r.inputs["window"] = {number(J.lo), number(J.hi)};
  r.inputs["h"] = number(o.h);
  r.inputs["margin"] = number(o.margin);
  r.inputs["r_max"] = number(o.r_max);
  r.inputs["R"] = reals_json(Rs);
  r.columns = {"R", "window_dimension", "min_projected_eigenvalue", "localization_fraction", "far_floor", "epsilon_R",
               "asymmetry", "cluster_flag"};
  Json probes = Json::array();
  for (double R : Rs) {
    const MourreProbeReport m = mourre_probe(c.spec, c.potential, R, J, o);
    probes.push_back({{"R", number(R)},
                      {"kappa", number(m.kappa)},
                      {"window_dimension", m.window_dimension},
                      {"min_projected_eigenvalue", number(m.min_projected_eigenvalue)},
                      {"localization_fraction", number(m.localization_fraction)},
                      {"far_floor", number(m.far_floor)},
                      {"epsilon_R", number(m.epsilon_R)},
                      {"asymmetry", number(m.asymmetry)},
                      {"cluster_flag", m.cluster_flag}});
    if (m.cluster_flag) r.warnings.push_back("window meets an eigenvalue cluster at R = " + format_number(R));
    r.add_row({R, static_cast<long long>(m.window_dimension), m.min_projected_eigenvalue, m.localization_fraction,
               m.far_floor, m.epsilon_R, m.asymmetry, static_cast<long long>(m.cluster_flag)});
  }
  r.results["probes"] = probes;
  return r;
}

Report cmd_holder(const Config& c) {
  require_ends(c, "holder");
  Report r;
  const Interval J = default_window(c);
  const double s = c.numerics.real("s_weight", 1.0);
  HolderOptions o;
  o.r_max = c.numerics.reals("holder_r_max", {40.0, 80.0, 160.0});
  o.h = c.numerics.real("h", 0.02);
  o.samples = c.numerics.count("holder_samples", 6);
  o.inverse_square_override = c.numerics.real("c0_eff");
  const HolderResult h = holder_probe(c.spec, c.potential, s, J, {}, o);
  r.inputs["geometry"] = geometry_json(c);
  r.inputs["window"] = {number(J.lo), number(J.hi)};
  r.inputs["s_weight"] = number(s);
  r.inputs["r_max"] = reals_json(o.r_max);
  r.inputs["h"] = number(o.h);
  Json zs = Json::array();
  for (const auto& z : h.z_samples) zs.push_back({number(z.real()), number(z.imag())});
  r.results = {{"exponent", number(h.exponent)},
               {"constant", number(h.constant)},
               {"stable", h.stable},
               {"epsilon_floor", number(h.epsilon_floor)},
               {"z_samples", zs},
               {"exponents", reals_json(h.exponents)},
               {"constants", reals_json(h.constants)}};
  if (kernel_dimension(c.spec, c.potential) == 0) {
    const ResolventGrowth g = resolvent_growth(c.spec, c.potential, s, std::nullopt,
                                               c.numerics.reals("growth_eta", {1e-1, 1e-2, 1e-3}), o);
    r.results["trapped_growth"] = {{"center", number(g.center)}, {"mu", number(g.mu)}, {"eta", reals_json(g.eta)}, {"norms", reals_json(g.norms)}};
    r.results["stable"] = false;
    r.warnings.push_back("trapping: no zero mode, weighted resolvent blows up at eigenvalues");
  }
  r.columns = {"distance", "difference"};
  for (std::size_t i = 0; i < h.distances.size(); ++i) r.add_row({h.distances[i], h.differences[i]});
  return r;
}

Report cmd_zeta(const Config& c) {
  require_ends(c, "zeta");
  Report r;
  double s;
  if (auto v = c.numerics.real("zeta_s")) s = *v;
  else if (c.spec.p < 1) s = to_double((1 - c.spec.p) / (2 * c.spec.p));
  else throw ConfigError("set zeta_s (no default exponent for p >= 1)", "numerics.zeta_s");
  const double tol = c.numerics.real("zeta_tol", 1e-10);
  r.inputs["geometry"] = geometry_json(c);
  r.inputs["s"] = number(s);
  r.inputs["tol"] = number(tol);
  r.columns = {"label", "s", "value", "tail_bound", "terms"};
  Json per = Json::array();
  double total = 0.0;
  for (std::size_t k = 0; k < c.spec.ends.size(); ++k) {
    const ZetaResult z = spectral_zeta_detail(c.spec.ends[k], c.potential.per_end[k].flux, s, tol);
    total += z.value;
    per.push_back({{"label", c.spec.ends[k].label}, {"value", number(z.value)}, {"tail_bound", number(z.tail_bound)},
                   {"radius", number(z.radius)}, {"terms", z.terms}});
    r.add_row({c.spec.ends[k].label, s, z.value, z.tail_bound, static_cast<long long>(z.terms)});
  }
  r.results = {{"components", per}, {"total", number(total)}};
  return r;
}

}  // namespace

const std::vector<std::string>& report_commands() {
  static const std::vector<std::string> names{"classify", "modes", "spectrum", "weyl", "threshold",
                                              "scan-coupling", "mourre", "holder", "zeta"};
  return names;
}

bool is_report_command(std::string_view name) {
  const auto& n = report_commands();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Report run_command(const Config& config, const std::string& command, const RunOptions& options) {
  const unsigned threads = options.threads ? options.threads : static_cast<unsigned>(config.numerics.count("threads", 1));
  Report r;
  if (command == "classify") r = cmd_classify(config);
  else if (command == "modes") r = cmd_modes(config);
  else if (command == "spectrum") r = cmd_spectrum(config, threads);
  else if (command == "weyl") r = cmd_weyl(config, threads);
  else if (command == "threshold") r = cmd_threshold(config);
  else if (command == "scan-coupling") r = cmd_scan(config, threads);
  else if (command == "mourre") r = cmd_mourre(config);
  else if (command == "holder") r = cmd_holder(config);
  else if (command == "zeta") r = cmd_zeta(config);
  else throw PreconditionError("unknown command '" + command + "'");
  r.command = command;
  r.inputs["config"] = canonical(config);
  return r;
}

}  // namespace cuspmag
