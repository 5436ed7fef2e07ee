#include "cuspmag/model.hpp"

#include "cuspmag/error.hpp"

#include <cmath>
#include <limits>

namespace cuspmag {

std::size_t BoundaryComponent::betti() const {
  if (const auto* t = std::get_if<FlatTorus>(&kind)) return t->gram.size();
  return 1;
}

RationalMatrix BoundaryComponent::gram_coefficients() const {
  if (const auto* c = std::get_if<Circle>(&kind))
    return {{c->length.coefficient * c->length.coefficient}};
  const auto& g = std::get<FlatTorus>(kind).gram;
  RationalMatrix out(g.size(), RationalVector(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i][j] = g[i][j].coefficient;
  return out;
}

int BoundaryComponent::gram_pi_power() const {
  if (const auto* c = std::get_if<Circle>(&kind)) return 2 * c->length.pi_power;
  for (const auto& row : std::get<FlatTorus>(kind).gram)
    for (const auto& e : row)
      if (e.coefficient != 0) return e.pi_power;
  return 0;
}

double BoundaryComponent::volume() const {
  if (const auto* c = std::get_if<Circle>(&kind)) return c->length.value();
  const double det = to_double(determinant(gram_coefficients()));
  return std::sqrt(det * std::pow(M_PI, gram_pi_power() * static_cast<int>(betti())));
}

const BoundaryComponent& ManifoldSpec::end(const std::string& label) const { return ends.at(end_index(label)); }

std::size_t ManifoldSpec::end_index(const std::string& label) const {
  for (std::size_t i = 0; i < ends.size(); ++i)
    if (ends[i].label == label) return i;
  throw PreconditionError("no boundary component labelled '" + label + "'");
}

bool Phi0::is_constant() const {
  for (const auto& s : samples)
    if (s != samples.front()) return false;
  return true;
}

Grid Grid::spanning(double r0, double r_max, double h) {
  if (!(h > 0) || !(r_max > r0)) throw PreconditionError("grid needs h > 0 and r_max > r0");
  const double cells = std::ceil((r_max - r0) / h - 1e-9);
  if (cells < 8) throw PreconditionError("grid needs at least 8 cells");
  return Grid{r0, h, static_cast<std::size_t>(cells)};
}

double end_volume(const ManifoldSpec& spec, const BoundaryComponent& component) {
  const Rational exponent = Rational(spec.n) * spec.p - 1;
  if (exponent <= 0) return std::numeric_limits<double>::infinity();
  const double e = to_double(exponent);
  return component.volume() * std::pow(to_double(spec.x0), e) / e;
}

double total_volume(const ManifoldSpec& spec) {
  double v = to_double(spec.core_volume);
  for (const auto& c : spec.ends) v += end_volume(spec, c);
  return v;
}

double radial_coordinate(const Rational& p, double x) {
  if (!(x > 0)) throw PreconditionError("radial_coordinate needs x > 0");
  if (p == 1) return -std::log(x);
  const double pd = to_double(p);
  return std::pow(x, pd - 1.0) / (1.0 - pd);
}

double radial_coordinate(const ManifoldSpec& spec, double x) {
  if (x > to_double(spec.x0) * (1 + 1e-15)) throw PreconditionError("radial_coordinate needs x <= x0");
  return radial_coordinate(spec.p, x);
}

double boundary_coordinate(const Rational& p, double r) {
  if (p == 1) return std::exp(-r);
  const double pd = to_double(p);
  return std::pow((1.0 - pd) * r, 1.0 / (pd - 1.0));
}

double radial_origin(const ManifoldSpec& spec) { return radial_coordinate(spec.p, to_double(spec.x0)); }

void validate(const ManifoldSpec& spec) {
  if (spec.n < 2) throw ConfigError("dimension must be >= 2", "n");
  if (spec.p <= 0) throw ConfigError("exponent must be positive", "p");
  if (spec.x0 <= 0) throw ConfigError("cutoff must be positive", "x0");
  if (spec.core_volume < 0) throw ConfigError("core volume must be non-negative", "core_volume");
  if (spec.ends.empty()) throw ConfigError("at least one [end.<label>] section is required", "end");
  for (std::size_t i = 0; i < spec.ends.size(); ++i) {
    const auto& c = spec.ends[i];
    const std::string path = "end." + c.label;
    for (std::size_t j = 0; j < i; ++j)
      if (spec.ends[j].label == c.label) throw ConfigError("duplicate label", path);
    if (const auto* circle = std::get_if<Circle>(&c.kind)) {
      if (spec.n != 2) throw ConfigError("circle cross-sections require n = 2", path + ".kind");
      if (circle->length.coefficient <= 0) throw ConfigError("length must be positive", path + ".length");
      continue;
    }
    const auto& gram = std::get<FlatTorus>(c.kind).gram;
    const std::size_t d = static_cast<std::size_t>(spec.n - 1);
    if (gram.size() != d) throw ConfigError("gram must be (n-1)x(n-1)", path + ".gram");
    const int power = c.gram_pi_power();
    for (std::size_t r = 0; r < d; ++r) {
      if (gram[r].size() != d) throw ConfigError("gram must be (n-1)x(n-1)", path + ".gram");
      for (std::size_t k = 0; k < d; ++k) {
        if (gram[r][k].coefficient != 0 && gram[r][k].pi_power != power)
          throw ConfigError("gram entries must share one power of pi", path + ".gram");
        if (gram[r][k].coefficient != gram[k][r].coefficient) throw ConfigError("gram is not symmetric", path + ".gram");
      }
    }
    const RationalMatrix g = c.gram_coefficients();
    for (std::size_t m = 1; m <= d; ++m) {
      RationalMatrix minor(m, RationalVector(m));
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k < m; ++k) minor[r][k] = g[r][k];
      if (determinant(minor) <= 0) throw ConfigError("gram is not positive definite", path + ".gram");
    }
  }
}

void validate(const ManifoldSpec& spec, const PotentialSpec& potential) {
  validate(spec);
  if (potential.per_end.size() != spec.ends.size())
    throw ConfigError("potential data must be given for every end", "end");
  for (std::size_t i = 0; i < spec.ends.size(); ++i) {
    const auto& pe = potential.per_end[i];
    const std::string path = "end." + spec.ends[i].label;
    if (pe.flux.size() != spec.ends[i].betti())
      throw ConfigError("flux length ≠ b₁ (expected " + std::to_string(spec.ends[i].betti()) + ")",
                        path + ".flux");
    if (pe.phi0.samples.empty()) throw ConfigError("phi0 samples must be non-empty", path + ".phi0_samples");
  }
}

}  // namespace cuspmag
