/* cuspmag C interface.
 *
 * Handles are opaque. Every function that can fail returns a cm_status and
 * leaves a message for cm_last_error() on the calling thread. Strings handed
 * out through char** are owned by the caller and released with
 * cm_string_free(). */
#ifndef CUSPMAG_H
#define CUSPMAG_H

#include <stddef.h>

#if defined(_WIN32)
#define CM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CM_API __attribute__((visibility("default")))
#else
#define CM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
  CM_OK = 0,
  CM_ERR_CONFIG = 1,       /* unparseable or invalid config */
  CM_ERR_PRECONDITION = 2, /* operation not defined for this input */
  CM_ERR_NUMERICAL = 3,    /* solver did not reach tolerance */
  CM_ERR_ARGUMENT = 4,     /* null handle, unknown command or key */
  CM_ERR_INTERNAL = 5
} cm_status;

typedef struct cm_config cm_config;
typedef struct cm_report cm_report;

CM_API const char* cm_version(void);
CM_API int cm_schema_version(void);

/* Message for the last failing call on this thread, "" if none. Valid until
 * the next call into the library from the same thread. */
CM_API const char* cm_last_error(void);
/* Dotted field path of the last config error, "" if none. */
CM_API const char* cm_last_error_path(void);

CM_API cm_status cm_config_parse(const char* text, cm_config** out);
CM_API cm_status cm_config_load(const char* path, cm_config** out);
CM_API void cm_config_free(cm_config* config);
CM_API cm_status cm_config_canonical(const cm_config* config, char** out);
/* Numeric override, key one of lambda_max, r_max, tol. */
CM_API cm_status cm_config_set_scalar(cm_config* config, const char* key, const char* value);

/* threads = 0 takes numerics.threads from the config. */
CM_API cm_status cm_run(const cm_config* config, const char* command, unsigned threads, cm_report** out);
CM_API void cm_report_free(cm_report* report);
CM_API cm_status cm_report_json(const cm_report* report, char** out);
CM_API cm_status cm_report_csv(const cm_report* report, char** out);
CM_API size_t cm_report_warning_count(const cm_report* report);

CM_API void cm_string_free(char* s);

CM_API size_t cm_command_count(void);
CM_API const char* cm_command_name(size_t i);

CM_API size_t cm_example_count(void);
CM_API const char* cm_example_name(size_t i);
CM_API const char* cm_example_description(size_t i);
CM_API const char* cm_example_text(size_t i);

#ifdef __cplusplus
}
#endif

#endif
