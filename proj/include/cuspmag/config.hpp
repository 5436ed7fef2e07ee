#pragma once

#include "cuspmag/analysis.hpp"
#include "cuspmag/model.hpp"
#include "cuspmag/radial.hpp"
#include "cuspmag/rational.hpp"
#include "cuspmag/topology.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cuspmag {

/// Parsed right-hand side of a `key = value` line.
struct ConfigValue {
  enum class Kind { Scalar, Infinity, Bool, Ident, List };
  Kind kind = Kind::Scalar;
  PiScalar scalar;
  bool boolean = false;
  std::string ident;
  std::vector<ConfigValue> items;
  int line = 0;
  int column = 0;

  double real() const;
};

std::string to_string(const ConfigValue& value);

struct SurfaceCase {
  int cusps = 1;
  bool orientable = true;
  Rational b_class{0};
};

struct ThreeManifoldCase {
  CohomologyPresentation presentation;
  RationalVector b;
};

/// Knobs of the numerical commands. Only explicitly set keys are stored;
/// getters apply the documented defaults.
class Numerics {
 public:
  static bool known(std::string_view key);
  void set(const std::string& key, ConfigValue value);  // validates type
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, ConfigValue>& values() const { return values_; }

  double real(const std::string& key, double fallback) const;
  std::optional<double> real(const std::string& key) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::string ident(const std::string& key, const std::string& fallback) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<Rational> rationals(const std::string& key) const;
  std::optional<Interval> interval(const std::string& key) const;

 private:
  std::map<std::string, ConfigValue> values_;
};

struct Config {
  ManifoldSpec spec;
  PotentialSpec potential;
  Perturbation perturbation;
  std::optional<FieldClass> field;
  std::optional<SurfaceCase> surface;
  std::optional<ThreeManifoldCase> three_manifold;
  Numerics numerics;
};

/// Parses and validates a config document. Throws ConfigError carrying the
/// line, column and field path of the first problem.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Canonical text: fixed section order, one key per line, exact scalars.
/// parse_config(canonical(c)) reproduces c.
std::string canonical(const Config& config);

/// Overrides a numerics scalar from text (CLI flags). Only the documented
/// scalar knobs are accepted.
void set_numeric_override(Config& config, const std::string& key, const std::string& text);

}  // namespace cuspmag
