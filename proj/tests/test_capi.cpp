// Exercises the shared library through its C header only.
#include "cuspmag/cuspmag.h"

#include <cstdio>
#include <cstring>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    std::printf("FAIL: %s (%s)\n", what, cm_last_error());
    ++failures;
  }
}

}  // namespace

int main() {
  expect(std::strlen(cm_version()) > 0, "version");
  expect(cm_schema_version() == 1, "schema version");

  cm_config* c = nullptr;
  expect(cm_config_parse("n = 2\np = 1\n[end.A]\nlength = 2pi\nflux = [1/2]\n", &c) == CM_OK, "parse");
  expect(cm_config_set_scalar(c, "lambda_max", "1e3") == CM_OK, "override");
  expect(cm_config_set_scalar(c, "samples", "3") == CM_ERR_CONFIG, "override rejects other keys");

  char* canon = nullptr;
  expect(cm_config_canonical(c, &canon) == CM_OK && std::strstr(canon, "lambda_max = 1000"), "canonical");
  cm_string_free(canon);

  cm_report* r = nullptr;
  expect(cm_run(c, "weyl", 0, &r) == CM_OK, "run weyl");
  char* json = nullptr;
  char* csv = nullptr;
  expect(cm_report_json(r, &json) == CM_OK && std::strstr(json, "\"schema_version\": 1"), "json");
  expect(cm_report_csv(r, &csv) == CM_OK && std::strncmp(csv, "lambda,count", 12) == 0, "csv");
  cm_string_free(json);
  cm_string_free(csv);
  cm_report_free(r);

  expect(cm_run(c, "frobnicate", 0, &r) == CM_ERR_ARGUMENT && r == nullptr, "unknown command");
  expect(cm_run(c, "mourre", 0, &r) == CM_ERR_PRECONDITION, "precondition maps");
  expect(std::strlen(cm_last_error()) > 0, "message kept");
  cm_config_free(c);

  cm_config* bad = nullptr;
  expect(cm_config_parse("n = 2\np = 1\n[end.A]\nlength = 2pi\nflux = [1, 2]\n", &bad) == CM_ERR_CONFIG && !bad,
         "config error");
  expect(std::string(cm_last_error_path()) == "end.A.flux", "error path");
  expect(cm_config_parse(nullptr, &bad) == CM_ERR_ARGUMENT, "null argument");
  expect(cm_config_load("/nonexistent/x.cfg", &bad) == CM_ERR_CONFIG, "missing file");

  expect(cm_example_count() > 5, "examples");
  for (size_t i = 0; i < cm_example_count(); ++i) {
    cm_config* e = nullptr;
    expect(cm_config_parse(cm_example_text(i), &e) == CM_OK, cm_example_name(i));
    cm_config_free(e);
  }
  expect(cm_example_name(cm_example_count()) == nullptr, "out of range");
  expect(cm_command_count() == 9, "commands");

  std::printf("%s\n", failures ? "capi: FAILED" : "capi: ok");
  return failures ? 1 : 0;
}
