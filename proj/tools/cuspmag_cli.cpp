// cuspmag command-line front end. Talks to the library through the C API only.
#include "cuspmag/cuspmag.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kUsage = 2, kNumerical = 3, kInternal = 4 };

struct Freer {
  void operator()(cm_config* c) const { cm_config_free(c); }
  void operator()(cm_report* r) const { cm_report_free(r); }
  void operator()(char* s) const { cm_string_free(s); }
};
using ConfigPtr = std::unique_ptr<cm_config, Freer>;
using ReportPtr = std::unique_ptr<cm_report, Freer>;
using StringPtr = std::unique_ptr<char, Freer>;

struct Failure {
  int code;
  std::string message;
};

int exit_for(cm_status s) {
  switch (s) {
    case CM_OK: return kOk;
    case CM_ERR_CONFIG:
    case CM_ERR_PRECONDITION: return kConfig;
    case CM_ERR_NUMERICAL: return kNumerical;
    case CM_ERR_ARGUMENT: return kUsage;
    default: return kInternal;
  }
}

void check(cm_status s, const std::string& what) {
  if (s == CM_OK) return;
  std::string msg = what + ": " + cm_last_error();
  if (s == CM_ERR_NUMERICAL) msg += " (try a looser tol or a different r_max)";
  throw Failure{exit_for(s), msg};
}

std::string take(char* s) { return std::string(StringPtr(s).get()); }

// FNV-1a, 64 bit. Stable across platforms and runs.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !(out.flush())) throw Failure{kConfig, "cannot write " + p.string()};
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw Failure{kConfig, "cannot create directory " + p.string()};
}

struct Options {
  std::string command;
  std::string config;
  std::string out = "out";
  std::string format = "both";
  std::string cache_dir = ".cuspmag-cache";
  bool no_cache = false;
  unsigned threads = 0;
  std::optional<std::string> lambda_max, r_max, tol;
};

int run_examples(const Options& o) {
  ensure_dir(o.out);
  ordered_json files = ordered_json::array();
  for (std::size_t i = 0; i < cm_example_count(); ++i) {
    const fs::path p = fs::path(o.out) / (std::string(cm_example_name(i)) + ".cfg");
    spit(p, cm_example_text(i));
    files.push_back({{"path", p.string()}, {"description", cm_example_description(i)}});
    std::cout << p.string() << "\n";
  }
  spit(fs::path(o.out) / "examples.json", files.dump(2) + "\n");
  return kOk;
}

int run_report(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.config.empty()) throw Failure{kUsage, o.command + " needs --config"};
  cm_config* raw = nullptr;
  check(cm_config_load(o.config.c_str(), &raw), o.config);
  ConfigPtr config(raw);

  ordered_json overrides = ordered_json::object();
  auto apply = [&](const char* key, const std::optional<std::string>& v) {
    if (!v) return;
    check(cm_config_set_scalar(config.get(), key, v->c_str()), std::string("--") + key);
    overrides[key] = *v;
  };
  apply("lambda_max", o.lambda_max);
  apply("r_max", o.r_max);
  apply("tol", o.tol);

  char* canon_raw = nullptr;
  check(cm_config_canonical(config.get(), &canon_raw), "canonical config");
  const std::string canon = take(canon_raw);
  const std::string config_hash = digest(canon);
  const std::string key = digest(std::to_string(cm_schema_version()) + "\n" + config_hash + "\n" + o.command + "\n" +
                                 overrides.dump());

  // Cache entries are <key>.json and <key>.csv; a schema mismatch counts as a miss.
  const fs::path cache = fs::path(o.cache_dir);
  std::optional<std::string> json_text, csv_text;
  bool hit = false;
  if (!o.no_cache) {
    json_text = slurp(cache / (key + ".json"));
    csv_text = slurp(cache / (key + ".csv"));
    if (json_text && csv_text) {
      const auto doc = nlohmann::json::parse(*json_text, nullptr, false);
      hit = !doc.is_discarded() && doc.value("schema_version", -1) == cm_schema_version();
    }
  }
  std::size_t warnings = 0;
  if (hit) {
    const auto doc = nlohmann::json::parse(*json_text);
    warnings = doc.value("warnings", nlohmann::json::array()).size();
  } else {
    cm_report* rep_raw = nullptr;
    check(cm_run(config.get(), o.command.c_str(), o.threads, &rep_raw), o.command);
    ReportPtr report(rep_raw);
    char* s = nullptr;
    check(cm_report_json(report.get(), &s), "json");
    json_text = take(s);
    check(cm_report_csv(report.get(), &s), "csv");
    csv_text = take(s);
    warnings = cm_report_warning_count(report.get());
    if (!o.no_cache) {
      // A cache that cannot be written only costs time.
      std::error_code ec;
      fs::create_directories(cache, ec);
      if (!ec) {
        try {
          spit(cache / (key + ".json"), *json_text);
          spit(cache / (key + ".csv"), *csv_text);
        } catch (const Failure&) {
          std::cerr << "warning: cache not written to " << cache.string() << "\n";
        }
      }
    }
  }

  ensure_dir(o.out);
  ordered_json artifacts = ordered_json::array();
  if (o.format != "csv") {
    const fs::path p = fs::path(o.out) / (o.command + ".json");
    spit(p, *json_text);
    artifacts.push_back(p.string());
  }
  if (o.format != "json") {
    const fs::path p = fs::path(o.out) / (o.command + ".csv");
    spit(p, *csv_text);
    artifacts.push_back(p.string());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ordered_json manifest = {{"schema_version", cm_schema_version()},
                           {"command", o.command},
                           {"config_path", o.config},
                           {"config_hash", config_hash},
                           {"cache_key", key},
                           {"cache_hit", hit},
                           {"overrides", overrides},
                           {"artifacts", artifacts},
                           {"wall_time_s", wall},
                           {"version", cm_version()}};
  spit(fs::path(o.out) / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& a : artifacts) std::cout << a.get<std::string>() << "\n";
  if (warnings) std::cerr << warnings << " warning(s), see " << o.command << ".json\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"cuspmag: magnetic Laplacians on manifolds with cusps"};
  app.set_version_flag("--version", cm_version());
  std::string commands;
  for (std::size_t i = 0; i < cm_command_count(); ++i) commands += std::string(i ? ", " : "") + cm_command_name(i);
  app.add_option("command", o.command, "one of: " + commands + ", examples")->required();
  app.add_option("--config", o.config, "config file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "artifact directory")->capture_default_str();
  app.add_option("--format", o.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}))->capture_default_str();
  app.add_option("--cache-dir", o.cache_dir, "result cache directory")->capture_default_str();
  app.add_flag("--no-cache", o.no_cache, "always recompute; do not touch the cache");
  app.add_option("--threads", o.threads, "worker threads for scans (0: from config)");
  app.add_option("--lambda-max", o.lambda_max, "override numerics.lambda_max");
  app.add_option("--r-max", o.r_max, "override numerics.r_max");
  app.add_option("--tol", o.tol, "override numerics.tol");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // A missing --config file is a config error, not a usage error.
    if (dynamic_cast<const CLI::ValidationError*>(&e) && std::string(e.what()).find("--config") != std::string::npos) {
      std::cerr << "error: " << e.what() << "\n";
      return kConfig;
    }
    app.exit(e);
    return kUsage;
  }

  try {
    if (o.command == "examples") return run_examples(o);
    bool known = false;
    for (std::size_t i = 0; i < cm_command_count(); ++i) known = known || o.command == cm_command_name(i);
    if (!known) {
      std::cerr << "error: unknown command '" << o.command << "' (expected " << commands << ", examples)\n";
      return kUsage;
    }
    return run_report(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
