#ifndef SNLS_H
#define SNLS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SNLS_BUILDING_LIBRARY)
#define SNLS_API __attribute__((visibility("default")))
#else
#define SNLS_API
#endif

typedef enum {
    SNLS_OK = 0,
    SNLS_ERR_VALIDATION = 1,
    SNLS_ERR_NUMERICAL = 2,
    SNLS_ERR_IO = 3,
    SNLS_ERR_INTERNAL = 4
} snls_status;

typedef struct snls_config snls_config;
typedef struct snls_report snls_report;
typedef struct snls_grid snls_grid;
typedef struct snls_field snls_field;

SNLS_API const char* snls_version(void);
/* Message of the last failed call on this thread; empty after success. */
SNLS_API const char* snls_last_error(void);

/* ---- configuration */
SNLS_API snls_status snls_config_load(const char* path, snls_config** out);
SNLS_API snls_status snls_config_parse(const char* text, snls_config** out);
SNLS_API void snls_config_free(snls_config* cfg);
SNLS_API snls_status snls_config_set_experiment(snls_config* cfg, const char* experiment);
/* Sets noise.seed and ensemble.base_seed. */
SNLS_API snls_status snls_config_set_seed(snls_config* cfg, uint64_t seed);
SNLS_API snls_status snls_config_set_workers(snls_config* cfg, int workers);
SNLS_API snls_status snls_config_set_output(snls_config* cfg, const char* dir);
SNLS_API snls_status snls_config_set_strict(snls_config* cfg, int strict);
/* Re-validates after overrides; hypothesis warnings become errors when strict. */
SNLS_API snls_status snls_config_finalize(snls_config* cfg);
/* Materialized "key = value" lines. The string lives until the next call on cfg. */
SNLS_API const char* snls_config_echo(snls_config* cfg);
SNLS_API uint64_t snls_config_hash(const snls_config* cfg);

/* ---- experiments */
SNLS_API snls_status snls_run(const snls_config* cfg, snls_report** out);
SNLS_API snls_status snls_selftest(const char* output_dir, int points, int flip_propagator, snls_report** out);
SNLS_API snls_status snls_regimes_default(const char* output_dir, snls_report** out);
SNLS_API snls_status snls_classify_regime(int n, double sigma, double alpha, snls_report** out);

SNLS_API const char* snls_report_text(const snls_report* r);
SNLS_API const char* snls_report_json(const snls_report* r);
SNLS_API size_t snls_report_warning_count(const snls_report* r);
SNLS_API const char* snls_report_warning(const snls_report* r, size_t i);
/* 1 unless a selftest check failed. */
SNLS_API int snls_report_passed(const snls_report* r);
SNLS_API void snls_report_free(snls_report* r);

/* ---- grids and fields */
SNLS_API snls_status snls_grid_create(int dim, int points, double box_length, snls_grid** out);
SNLS_API void snls_grid_free(snls_grid* g);
SNLS_API size_t snls_grid_size(const snls_grid* g);

/* values: interleaved re/im, 2*size doubles. */
SNLS_API snls_status snls_field_create(const snls_grid* g, const double* values, snls_field** out);
SNLS_API void snls_field_free(snls_field* f);
SNLS_API snls_status snls_field_values(const snls_field* f, double* values, size_t capacity);
SNLS_API snls_status snls_propagate(snls_field* f, double t);
SNLS_API snls_status snls_field_norm(const snls_field* f, double p, double* out);
SNLS_API snls_status snls_field_read(const char* path, snls_field** out);
SNLS_API snls_status snls_field_write(const snls_field* f, const char* path);

#ifdef __cplusplus
}
#endif

#endif
