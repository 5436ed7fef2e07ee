#include "cuspmag/config.hpp"

#include "cuspmag/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace cuspmag {

namespace {

using Section = std::map<std::string, ConfigValue>;

struct RawDocument {
  Section top;
  std::vector<std::pair<std::string, Section>> ends;  // in document order
  std::map<std::string, Section> named;
  std::map<std::string, int> section_lines;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

class ValueLexer {
 public:
  ValueLexer(std::string_view text, int line, int column0) : text_(text), line_(line), col0_(column0) {}

  ConfigValue parse() {
    ConfigValue v = value();
    skip();
    if (pos_ < text_.size()) fail("unexpected trailing text");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(msg, "", line_, col0_ + static_cast<int>(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  ConfigValue value() {
    skip();
    ConfigValue v;
    v.line = line_;
    v.column = col0_ + static_cast<int>(pos_);
    if (pos_ >= text_.size()) fail("missing value");
    if (text_[pos_] == '[') {
      ++pos_;
      v.kind = ConfigValue::Kind::List;
      skip();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        skip();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ']') {
          ++pos_;
          return v;
        }
        fail("expected ',' or ']'");
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '[') ++pos_;
    std::string token(text_.substr(start, pos_ - start));
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.pop_back();
    if (token.empty()) {
      pos_ = start;
      fail("missing value");
    }
    v.ident = token;
    if (token == "true" || token == "false") {
      v.kind = ConfigValue::Kind::Bool;
      v.boolean = token == "true";
    } else if (token == "inf" || token == "+inf") {
      v.kind = ConfigValue::Kind::Infinity;
    } else if (auto s = parse_pi_scalar(token)) {
      v.kind = ConfigValue::Kind::Scalar;
      v.scalar = *s;
    } else if (is_identifier(token)) {
      v.kind = ConfigValue::Kind::Ident;
    } else {
      pos_ = start;
      fail("invalid value '" + token + "'");
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

RawDocument lex_document(std::string_view text) {
  RawDocument doc;
  Section* current = &doc.top;
  std::string current_name;
  int line_no = 0;
  std::size_t at = 0;
  while (at <= text.size()) {
    std::size_t eol = text.find('\n', at);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(at, eol - at);
    at = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    std::size_t e = line.size();
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (b == e) {
      if (eol == text.size()) break;
      continue;
    }
    const std::string_view body = line.substr(b, e - b);
    const int col = static_cast<int>(b) + 1;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("unterminated section header", "", line_no, col);
      std::string name(body.substr(1, body.size() - 2));
      if (name.rfind("end.", 0) == 0) {
        const std::string label = name.substr(4);
        if (label.empty() || !std::all_of(label.begin(), label.end(), [](char c) {
              return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
            }))
          throw ConfigError("invalid end label '" + label + "'", name, line_no, col);
        for (const auto& [l, s] : doc.ends)
          if (l == label) throw ConfigError("duplicate section", name, line_no, col);
        doc.ends.emplace_back(label, Section{});
        current = &doc.ends.back().second;
      } else if (name == "perturbation" || name == "field" || name == "surface" || name == "three_manifold" ||
                 name == "numerics") {
        if (doc.named.count(name)) throw ConfigError("duplicate section", name, line_no, col);
        current = &doc.named[name];
      } else {
        throw ConfigError("unknown section '" + name + "'", name, line_no, col);
      }
      doc.section_lines[name] = line_no;
      current_name = name;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", current_name, line_no, col);
    std::string key(body.substr(0, eq));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    const std::string path = current_name.empty() ? key : current_name + "." + key;
    if (!is_identifier(key)) throw ConfigError("invalid key '" + key + "'", path, line_no, col);
    if (current->count(key)) throw ConfigError("duplicate key", path, line_no, col);
    const std::size_t vstart = eq + 1;
    ConfigValue v = ValueLexer(body.substr(vstart), line_no, col + static_cast<int>(vstart)).parse();
    (*current)[key] = std::move(v);
    if (eol == text.size()) break;
  }
  return doc;
}

[[noreturn]] void bad(const ConfigValue& v, const std::string& path, const std::string& msg) {
  throw ConfigError(msg, path, v.line, v.column);
}

Rational as_rational(const ConfigValue& v, const std::string& path) {
  if (v.kind != ConfigValue::Kind::Scalar || v.scalar.pi_power != 0) bad(v, path, "expected a rational number");
  return v.scalar.coefficient;
}

PiScalar as_pi_scalar(const ConfigValue& v, const std::string& path) {
  if (v.kind != ConfigValue::Kind::Scalar) bad(v, path, "expected a number");
  return v.scalar;
}

long as_int(const ConfigValue& v, const std::string& path) {
  const Rational q = as_rational(v, path);
  if (!is_integral(q) || abs(q) > Rational(1000000000)) bad(v, path, "expected an integer");
  return numerator_of(q).convert_to<long>();
}

bool as_bool(const ConfigValue& v, const std::string& path) {
  if (v.kind != ConfigValue::Kind::Bool) bad(v, path, "expected true or false");
  return v.boolean;
}

std::string as_ident(const ConfigValue& v, const std::string& path) {
  if (v.kind == ConfigValue::Kind::List || !is_identifier(v.ident)) bad(v, path, "expected an identifier");
  return v.ident;
}

const std::vector<ConfigValue>& as_list(const ConfigValue& v, const std::string& path) {
  if (v.kind != ConfigValue::Kind::List) bad(v, path, "expected a list");
  return v.items;
}

RationalVector as_rational_vector(const ConfigValue& v, const std::string& path) {
  RationalVector out;
  for (const auto& x : as_list(v, path)) out.push_back(as_rational(x, path));
  return out;
}

template <typename F>
auto as_matrix(const ConfigValue& v, const std::string& path, F&& entry) {
  std::vector<std::vector<decltype(entry(v))>> out;
  for (const auto& row : as_list(v, path)) {
    out.emplace_back();
    for (const auto& x : as_list(row, path)) out.back().push_back(entry(x));
  }
  return out;
}

void reject_unknown(const Section& s, const std::string& section, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : s) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) bad(v, section.empty() ? k : section + "." + k, "unknown key");
  }
}

const ConfigValue* find(const Section& s, const std::string& key) {
  auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

std::string join_path(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

void read_end(const std::string& label, const Section& s, int line, ManifoldSpec& spec, PotentialSpec& pot) {
  const std::string sec = "end." + label;
  reject_unknown(s, sec, {"kind", "length", "gram", "flux", "phi0", "closed"});
  std::string kind;
  if (auto v = find(s, "kind")) {
    kind = as_ident(*v, sec + ".kind");
    if (kind != "circle" && kind != "torus") bad(*v, sec + ".kind", "kind must be circle or torus");
  } else {
    kind = find(s, "gram") ? "torus" : "circle";
  }
  BoundaryComponent comp;
  comp.label = label;
  if (kind == "circle") {
    if (find(s, "gram")) bad(*find(s, "gram"), sec + ".gram", "gram given for a circle end");
    const ConfigValue* len = find(s, "length");
    if (!len) throw ConfigError("missing key", sec + ".length", line, 1);
    const PiScalar L = as_pi_scalar(*len, sec + ".length");
    if (L.coefficient <= 0) bad(*len, sec + ".length", "length must be positive");
    comp.kind = Circle{L};
  } else {
    if (find(s, "length")) bad(*find(s, "length"), sec + ".length", "length given for a torus end");
    const ConfigValue* g = find(s, "gram");
    if (!g) throw ConfigError("missing key", sec + ".gram", line, 1);
    comp.kind = FlatTorus{as_matrix(*g, sec + ".gram", [&](const ConfigValue& x) { return as_pi_scalar(x, sec + ".gram"); })};
  }
  ComponentPotential cp;
  if (auto v = find(s, "flux")) cp.flux = as_rational_vector(*v, sec + ".flux");
  else cp.flux.assign(comp.betti(), Rational(0));
  if (auto v = find(s, "phi0")) {
    if (v->kind == ConfigValue::Kind::List) {
      cp.phi0.samples = as_rational_vector(*v, sec + ".phi0");
      cp.phi0.sampled = true;
      if (cp.phi0.samples.empty()) bad(*v, sec + ".phi0", "phi0 sample list is empty");
    } else {
      cp.phi0.samples = {as_rational(*v, sec + ".phi0")};
    }
  }
  if (auto v = find(s, "closed")) cp.closed = as_bool(*v, sec + ".closed");
  spec.ends.push_back(std::move(comp));
  pot.per_end.push_back(std::move(cp));
}

Perturbation read_perturbation(const Section& s) {
  const std::string sec = "perturbation";
  reject_unknown(s, sec, {"kind", "profile", "coefficient", "exponent", "center", "width", "epsilon"});
  Perturbation p;
  std::string kind = "none";
  if (auto v = find(s, "kind")) kind = as_ident(*v, sec + ".kind");
  if (kind == "none") p.kind = Perturbation::Kind::None;
  else if (kind == "short_range") p.kind = Perturbation::Kind::ShortRangePotential;
  else if (kind == "conformal") p.kind = Perturbation::Kind::RadialConformal;
  else bad(*find(s, "kind"), sec + ".kind", "kind must be none, short_range or conformal");
  std::string profile = "power";
  if (auto v = find(s, "profile")) profile = as_ident(*v, sec + ".profile");
  if (profile == "power") p.profile.form = FunctionDescriptor::Form::Power;
  else if (profile == "exponential") p.profile.form = FunctionDescriptor::Form::Exponential;
  else if (profile == "gaussian") p.profile.form = FunctionDescriptor::Form::Gaussian;
  else bad(*find(s, "profile"), sec + ".profile", "profile must be power, exponential or gaussian");
  if (auto v = find(s, "coefficient")) p.profile.coefficient = as_rational(*v, sec + ".coefficient");
  if (auto v = find(s, "exponent")) p.profile.exponent = as_rational(*v, sec + ".exponent");
  if (auto v = find(s, "center")) p.profile.center = as_rational(*v, sec + ".center");
  if (auto v = find(s, "width")) {
    p.profile.width = as_rational(*v, sec + ".width");
    if (p.profile.width <= 0) bad(*v, sec + ".width", "width must be positive");
  }
  if (auto v = find(s, "epsilon")) {
    p.epsilon = as_rational(*v, sec + ".epsilon");
    if (p.epsilon <= 0) bad(*v, sec + ".epsilon", "epsilon must be positive");
  }
  return p;
}

FieldClass read_field(const Section& s) {
  const std::string sec = "field";
  FieldClass f;
  for (const auto& [k, v] : s) {
    const std::string path = sec + "." + k;
    if (k == "h1_zero") {
      f.h1_zero = as_bool(v, path);
    } else if (k == "vanishes_on") {
      for (const auto& x : as_list(v, path)) {
        if (!f.vanishes_on.insert(as_ident(x, path)).second) bad(x, path, "duplicate label");
      }
    } else if (k.rfind("class.", 0) == 0 && k.size() > 6) {
      f.class_components[k.substr(6)] = as_rational_vector(v, path);
    } else {
      bad(v, path, "unknown key");
    }
  }
  try {
    validate(f);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what(), sec);
  }
  return f;
}

SurfaceCase read_surface(const Section& s) {
  const std::string sec = "surface";
  reject_unknown(s, sec, {"cusps", "orientable", "b_class"});
  SurfaceCase c;
  if (auto v = find(s, "cusps")) {
    c.cusps = static_cast<int>(as_int(*v, sec + ".cusps"));
    if (c.cusps < 1) bad(*v, sec + ".cusps", "a cusped surface needs at least one cusp");
  }
  if (auto v = find(s, "orientable")) c.orientable = as_bool(*v, sec + ".orientable");
  if (auto v = find(s, "b_class")) c.b_class = as_rational(*v, sec + ".b_class");
  return c;
}

ThreeManifoldCase read_three_manifold(const Section& s) {
  const std::string sec = "three_manifold";
  reject_unknown(s, sec, {"dimension", "orientable", "boundary_rank", "l_basis", "b"});
  ThreeManifoldCase c;
  auto& pr = c.presentation;
  if (auto v = find(s, "dimension")) pr.dimension = static_cast<int>(as_int(*v, sec + ".dimension"));
  if (auto v = find(s, "orientable")) pr.orientable = as_bool(*v, sec + ".orientable");
  const ConfigValue* rk = find(s, "boundary_rank");
  const ConfigValue* lb = find(s, "l_basis");
  const ConfigValue* b = find(s, "b");
  if (!rk) throw ConfigError("missing key", sec + ".boundary_rank");
  if (!lb) throw ConfigError("missing key", sec + ".l_basis");
  if (!b) throw ConfigError("missing key", sec + ".b");
  for (const auto& x : as_list(*rk, sec + ".boundary_rank")) {
    const long r = as_int(x, sec + ".boundary_rank");
    if (r < 0) bad(x, sec + ".boundary_rank", "rank must be non-negative");
    pr.boundary_rank.push_back(static_cast<std::size_t>(r));
  }
  pr.l_basis = as_matrix(*lb, sec + ".l_basis", [&](const ConfigValue& x) { return Integer(as_int(x, sec + ".l_basis")); });
  c.b = as_rational_vector(*b, sec + ".b");
  try {
    validate(pr);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what(), sec + ".l_basis", lb->line, lb->column);
  }
  if (c.b.size() != pr.boundary_rank.size()) bad(*b, sec + ".b", "b needs one entry per cusp");
  return c;
}

}  // namespace

double ConfigValue::real() const {
  if (kind == Kind::Infinity) return std::numeric_limits<double>::infinity();
  return scalar.value();
}

std::string to_string(const ConfigValue& v) {
  switch (v.kind) {
    case ConfigValue::Kind::Scalar: return to_string(v.scalar);
    case ConfigValue::Kind::Infinity: return "inf";
    case ConfigValue::Kind::Bool: return v.boolean ? "true" : "false";
    case ConfigValue::Kind::Ident: return v.ident;
    case ConfigValue::Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.items.size(); ++i) out += (i ? ", " : "") + to_string(v.items[i]);
      return out + "]";
    }
  }
  return "";
}

// Numerics keys and their shapes.
namespace {

enum class Shape { Positive, Real, RealOrInf, Count, Bool, Ident, RealList, RealOrInfList, RationalList, Interval };

const std::map<std::string, Shape, std::less<>>& numerics_schema() {
  static const std::map<std::string, Shape, std::less<>> schema{
      {"lambda_min", Shape::Positive},    {"lambda_max", Shape::Positive},      {"samples", Shape::Count},
      {"lambda_grid", Shape::Ident},      {"h", Shape::Positive},               {"r_max", Shape::Positive},
      {"tol", Shape::Positive},           {"mu_max", Shape::Real},              {"zeta_s", Shape::Positive},
      {"zeta_tol", Shape::Positive},      {"c0_eff", Shape::Real},              {"window", Shape::Interval},
      {"mourre_R", Shape::RealOrInfList}, {"mourre_margin", Shape::Positive},   {"mourre_r_max", Shape::Positive},
      {"mourre_h", Shape::Positive},      {"box_schedule", Shape::RealList},    {"s_weight", Shape::Positive},
      {"holder_r_max", Shape::RealList},  {"holder_samples", Shape::Count},     {"growth_eta", Shape::RealList},
      {"g_grid", Shape::RationalList},    {"spacing_lambda", Shape::Positive},  {"box", Shape::Positive},
      {"horn_eps", Shape::Positive},      {"horn_halvings", Shape::Count},      {"horn_cells", Shape::Count},
      {"threads", Shape::Count},          {"continuum", Shape::Bool},
  };
  return schema;
}

void check_shape(const ConfigValue& v, Shape shape, const std::string& path) {
  auto real = [&](const ConfigValue& x) {
    if (x.kind != ConfigValue::Kind::Scalar) bad(x, path, "expected a number");
  };
  switch (shape) {
    case Shape::Positive:
      real(v);
      if (v.scalar.coefficient <= 0) bad(v, path, "must be positive");
      break;
    case Shape::Real: real(v); break;
    case Shape::RealOrInf:
      if (v.kind != ConfigValue::Kind::Infinity) real(v);
      break;
    case Shape::Count: {
      const long n = as_int(v, path);
      if (n < 1) bad(v, path, "must be a positive integer");
      break;
    }
    case Shape::Bool: as_bool(v, path); break;
    case Shape::Ident: as_ident(v, path); break;
    case Shape::RealList:
      if (as_list(v, path).empty()) bad(v, path, "list is empty");
      for (const auto& x : v.items) real(x);
      break;
    case Shape::RealOrInfList:
      if (as_list(v, path).empty()) bad(v, path, "list is empty");
      for (const auto& x : v.items)
        if (x.kind != ConfigValue::Kind::Infinity) real(x);
      break;
    case Shape::RationalList:
      for (const auto& x : as_list(v, path)) as_rational(x, path);
      break;
    case Shape::Interval:
      if (as_list(v, path).size() != 2) bad(v, path, "expected [lo, hi]");
      real(v.items[0]);
      real(v.items[1]);
      if (!(v.items[0].real() < v.items[1].real())) bad(v, path, "interval needs lo < hi");
      break;
  }
}

}  // namespace

bool Numerics::known(std::string_view key) { return numerics_schema().count(key) > 0; }

void Numerics::set(const std::string& key, ConfigValue value) {
  const auto it = numerics_schema().find(key);
  if (it == numerics_schema().end()) bad(value, "numerics." + key, "unknown key");
  check_shape(value, it->second, "numerics." + key);
  values_[key] = std::move(value);
}

std::optional<double> Numerics::real(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second.real();
}

double Numerics::real(const std::string& key, double fallback) const { return real(key).value_or(fallback); }

std::size_t Numerics::count(const std::string& key, std::size_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : static_cast<std::size_t>(as_int(it->second, "numerics." + key));
}

bool Numerics::flag(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.boolean;
}

std::string Numerics::ident(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.ident;
}

std::vector<double> Numerics::reals(const std::string& key, const std::vector<double>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& x : it->second.items) out.push_back(x.real());
  return out;
}

std::vector<Rational> Numerics::rationals(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return {};
  return as_rational_vector(it->second, "numerics." + key);
}

std::optional<Interval> Numerics::interval(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return Interval{it->second.items[0].real(), it->second.items[1].real()};
}

Config parse_config(std::string_view text) {
  RawDocument doc = lex_document(text);
  Config c;
  reject_unknown(doc.top, "", {"n", "p", "x0", "core_volume"});
  if (auto v = find(doc.top, "n")) c.spec.n = static_cast<int>(as_int(*v, "n"));
  if (auto v = find(doc.top, "p")) c.spec.p = as_rational(*v, "p");
  if (auto v = find(doc.top, "x0")) c.spec.x0 = as_rational(*v, "x0");
  if (auto v = find(doc.top, "core_volume")) {
    c.spec.core_volume = as_rational(*v, "core_volume");
    if (c.spec.core_volume < 0) bad(*v, "core_volume", "core_volume must be non-negative");
  }
  for (const auto& [label, sec] : doc.ends) read_end(label, sec, doc.section_lines["end." + label], c.spec, c.potential);
  if (doc.named.count("perturbation")) c.perturbation = read_perturbation(doc.named["perturbation"]);
  if (doc.named.count("field")) c.field = read_field(doc.named["field"]);
  if (doc.named.count("surface")) c.surface = read_surface(doc.named["surface"]);
  if (doc.named.count("three_manifold")) c.three_manifold = read_three_manifold(doc.named["three_manifold"]);
  if (doc.named.count("numerics"))
    for (auto& [k, v] : doc.named["numerics"]) c.numerics.set(k, v);

  const bool topology_only = c.field || c.surface || c.three_manifold;
  if (!c.spec.ends.empty() || !topology_only) {
    if (c.spec.ends.empty()) throw ConfigError("at least one [end.<label>] section is required", "end");
    validate(c.spec);
    validate(c.spec, c.potential);
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical(const Config& c) {
  std::ostringstream out;
  auto vec = [](const RationalVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "]";
  };
  out << "n = " << c.spec.n << "\n";
  out << "p = " << to_string(c.spec.p) << "\n";
  out << "x0 = " << to_string(c.spec.x0) << "\n";
  out << "core_volume = " << to_string(c.spec.core_volume) << "\n";
  for (std::size_t k = 0; k < c.spec.ends.size(); ++k) {
    const auto& e = c.spec.ends[k];
    const auto& cp = c.potential.per_end[k];
    out << "\n[end." << e.label << "]\n";
    if (e.is_circle()) {
      out << "kind = circle\nlength = " << to_string(std::get<Circle>(e.kind).length) << "\n";
    } else {
      out << "kind = torus\ngram = [";
      const auto& g = std::get<FlatTorus>(e.kind).gram;
      for (std::size_t i = 0; i < g.size(); ++i) {
        out << (i ? ", " : "") << "[";
        for (std::size_t j = 0; j < g[i].size(); ++j) out << (j ? ", " : "") << to_string(g[i][j]);
        out << "]";
      }
      out << "]\n";
    }
    out << "flux = " << vec(cp.flux) << "\n";
    out << "phi0 = " << (cp.phi0.sampled ? vec(cp.phi0.samples) : to_string(cp.phi0.samples.front())) << "\n";
    out << "closed = " << (cp.closed ? "true" : "false") << "\n";
  }
  if (c.perturbation.kind != Perturbation::Kind::None) {
    const auto& p = c.perturbation;
    out << "\n[perturbation]\nkind = "
        << (p.kind == Perturbation::Kind::ShortRangePotential ? "short_range" : "conformal") << "\n";
    const char* forms[] = {"power", "exponential", "gaussian"};
    out << "profile = " << forms[static_cast<int>(p.profile.form)] << "\n";
    out << "coefficient = " << to_string(p.profile.coefficient) << "\n";
    out << "exponent = " << to_string(p.profile.exponent) << "\n";
    out << "center = " << to_string(p.profile.center) << "\n";
    out << "width = " << to_string(p.profile.width) << "\n";
    out << "epsilon = " << to_string(p.epsilon) << "\n";
  }
  if (c.field) {
    out << "\n[field]\nh1_zero = " << (c.field->h1_zero ? "true" : "false") << "\nvanishes_on = [";
    std::size_t i = 0;
    for (const auto& l : c.field->vanishes_on) out << (i++ ? ", " : "") << l;
    out << "]\n";
    for (const auto& [l, v] : c.field->class_components) out << "class." << l << " = " << vec(v) << "\n";
  }
  if (c.surface) {
    out << "\n[surface]\ncusps = " << c.surface->cusps << "\norientable = " << (c.surface->orientable ? "true" : "false")
        << "\nb_class = " << to_string(c.surface->b_class) << "\n";
  }
  if (c.three_manifold) {
    const auto& pr = c.three_manifold->presentation;
    out << "\n[three_manifold]\ndimension = " << pr.dimension << "\norientable = " << (pr.orientable ? "true" : "false")
        << "\nboundary_rank = [";
    for (std::size_t i = 0; i < pr.boundary_rank.size(); ++i) out << (i ? ", " : "") << pr.boundary_rank[i];
    out << "]\nl_basis = [";
    for (std::size_t i = 0; i < pr.l_basis.size(); ++i) {
      out << (i ? ", " : "") << "[";
      for (std::size_t j = 0; j < pr.l_basis[i].size(); ++j) out << (j ? ", " : "") << pr.l_basis[i][j];
      out << "]";
    }
    out << "]\nb = " << vec(c.three_manifold->b) << "\n";
  }
  if (!c.numerics.values().empty()) {
    out << "\n[numerics]\n";
    for (const auto& [k, v] : c.numerics.values()) out << k << " = " << to_string(v) << "\n";
  }
  return out.str();
}

void set_numeric_override(Config& config, const std::string& key, const std::string& text) {
  if (key != "lambda_max" && key != "r_max" && key != "tol")
    throw ConfigError("only lambda_max, r_max and tol can be overridden", "numerics." + key);
  ConfigValue v = ValueLexer(text, 0, 1).parse();
  config.numerics.set(key, std::move(v));
}

}  // namespace cuspmag
