#include "cuspmag/cuspmag.h"

#include "cuspmag/config.hpp"
#include "cuspmag/error.hpp"
#include "cuspmag/pipeline.hpp"
#include "cuspmag/report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#ifndef CUSPMAG_VERSION
#define CUSPMAG_VERSION "unknown"
#endif

struct cm_config {
  cuspmag::Config value;
};

struct cm_report {
  cuspmag::Report value;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_path;

cm_status fail(cm_status code, std::string message, std::string path = {}) {
  last_error = std::move(message);
  last_path = std::move(path);
  return code;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
cm_status guarded(F&& body) {
  last_error.clear();
  last_path.clear();
  try {
    body();
    return CM_OK;
  } catch (const cuspmag::ConfigError& e) {
    return fail(CM_ERR_CONFIG, e.what(), e.field_path());
  } catch (const cuspmag::PreconditionError& e) {
    return fail(CM_ERR_PRECONDITION, e.what());
  } catch (const cuspmag::NumericalError& e) {
    return fail(CM_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CM_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* cm_version(void) { return CUSPMAG_VERSION; }
int cm_schema_version(void) { return cuspmag::kSchemaVersion; }
const char* cm_last_error(void) { return last_error.c_str(); }
const char* cm_last_error_path(void) { return last_path.c_str(); }

cm_status cm_config_parse(const char* text, cm_config** out) {
  if (!text || !out) return fail(CM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new cm_config{cuspmag::parse_config(text)}; });
}

cm_status cm_config_load(const char* path, cm_config** out) {
  if (!path || !out) return fail(CM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new cm_config{cuspmag::load_config(path)}; });
}

void cm_config_free(cm_config* config) { delete config; }

cm_status cm_config_canonical(const cm_config* config, char** out) {
  if (!config || !out) return fail(CM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = duplicate(cuspmag::canonical(config->value)); });
}

cm_status cm_config_set_scalar(cm_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(CM_ERR_ARGUMENT, "null argument");
  return guarded([&] { cuspmag::set_numeric_override(config->value, key, value); });
}

cm_status cm_run(const cm_config* config, const char* command, unsigned threads, cm_report** out) {
  if (!config || !command || !out) return fail(CM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  if (!cuspmag::is_report_command(command)) return fail(CM_ERR_ARGUMENT, std::string("unknown command '") + command + "'");
  return guarded([&] {
    cuspmag::RunOptions o;
    o.threads = threads;
    *out = new cm_report{cuspmag::run_command(config->value, command, o)};
  });
}

void cm_report_free(cm_report* report) { delete report; }

cm_status cm_report_json(const cm_report* report, char** out) {
  if (!report || !out) return fail(CM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = duplicate(cuspmag::to_json(report->value)); });
}

cm_status cm_report_csv(const cm_report* report, char** out) {
  if (!report || !out) return fail(CM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = duplicate(cuspmag::to_csv(report->value)); });
}

size_t cm_report_warning_count(const cm_report* report) { return report ? report->value.warnings.size() : 0; }

void cm_string_free(char* s) { std::free(s); }

size_t cm_command_count(void) { return cuspmag::report_commands().size(); }
const char* cm_command_name(size_t i) {
  const auto& c = cuspmag::report_commands();
  return i < c.size() ? c[i].c_str() : nullptr;
}

size_t cm_example_count(void) { return cuspmag::examples().size(); }
const char* cm_example_name(size_t i) {
  const auto& e = cuspmag::examples();
  return i < e.size() ? e[i].name.c_str() : nullptr;
}
const char* cm_example_description(size_t i) {
  const auto& e = cuspmag::examples();
  return i < e.size() ? e[i].description.c_str() : nullptr;
}
const char* cm_example_text(size_t i) {
  const auto& e = cuspmag::examples();
  return i < e.size() ? e[i].text.c_str() : nullptr;
}

}  // extern "C"
