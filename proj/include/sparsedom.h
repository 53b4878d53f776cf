/* C interface to the sparsedom shared library.
 *
 * All structured inputs and outputs are JSON strings; fields travel as opaque
 * handles.  Every function returns an sd_status; on failure a thread-local
 * message is available from sd_last_error().  Strings returned through char**
 * are owned by the caller and released with sd_free_string(); fields are
 * released with sd_field_free().
 */
#ifndef SPARSEDOM_H
#define SPARSEDOM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sd_status {
  SD_OK = 0,
  SD_ERR_INVALID_ARGUMENT = 1,
  SD_ERR_IO = 2,
  SD_ERR_INVARIANT = 3,
  SD_ERR_INTERNAL = 4
} sd_status;

typedef struct sd_field sd_field;

const char* sd_version(void);
const char* sd_status_name(sd_status status);
const char* sd_last_error(void);
void sd_free_string(char* s);

/* Fields: {grid, n, q, values} or {grid, n, q, generator:{kind,...}, seed}. */
sd_status sd_field_from_json(const char* json, sd_field** out);
sd_status sd_field_load(const char* header_path, sd_field** out);
sd_status sd_field_save(const sd_field* field, const char* header_path,
                        const char* payload_format /* "binary" | "csv" */);
sd_status sd_field_info(const sd_field* field, char** info_json);
sd_status sd_field_values(const sd_field* field, const double** data, size_t* count);
void sd_field_free(sd_field* field);

/* Stopping-time decomposition.  params: {"nu":"1/2", "base":<cube, optional>}.
 * Report: sparse collection JSON. */
sd_status sd_decompose(const sd_field* field, const char* params_json, char** report_json);

/* Structural + pointwise certificate checks of a collection against a field.
 * Report: {"sparse_ok", "violation", "holds", "max_violation", "worst_cell"}.
 * Returns SD_OK even when checks fail; inspect the report. */
sd_status sd_verify(const sd_field* field, const char* collection_json, char** report_json);

/* Positive dyadic shifts and the discretized singular integral. */
sd_status sd_shift_apply(const sd_field* field, const char* shift_spec_json, sd_field** out);
sd_status sd_apply_t(const sd_field* field, const char* kernel_json, sd_field** out);

/* Sparse domination pipeline.
 * params: {"kernel":..., "nu":"1/2", "K":8, "base":<cube, optional>}. */
sd_status sd_dominate(const sd_field* field, const char* params_json, char** report_json);

/* Weighted-norm experiment.
 * params: {"kernel":..., "grid":..., "p":2, "exponents":[...], "seed":1}. */
sd_status sd_a2_experiment(const char* params_json, char** report_json);

/* Muckenhoupt characteristics of a weight.
 * params: {"weight":<field json or {"generator":{"kind":"power","a":...}}>,
 *          "grid":..., "p":[2,3], "a_infty":false}. */
sd_status sd_weights_report(const char* params_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* SPARSEDOM_H */
