/* C API of the vibcool shared library.
 *
 * A session wraps one run configuration. Open it from a config file or an
 * in-memory config text, optionally override single entries, then run
 * stages; results land as CSV files in the output directory and headline
 * numbers are queryable as metrics. All functions are thread-compatible
 * (distinct sessions may be used from distinct threads). */

#ifndef VIBCOOL_H
#define VIBCOOL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vibcool_status {
  VIBCOOL_OK = 0,
  VIBCOOL_ERROR = 1,          /* unexpected failure */
  VIBCOOL_ERROR_CONFIG = 2,   /* invalid configuration or input file */
  VIBCOOL_ERROR_NUMERIC = 3   /* numerical failure during a run */
} vibcool_status;

typedef struct vibcool_session vibcool_session;

const char* vibcool_version(void);

/* On success *out_session owns the session; release with vibcool_close.
 * On failure *out_session is NULL and the (static) message is available
 * through vibcool_last_error(NULL). */
vibcool_status vibcool_open(const char* config_path, vibcool_session** out_session);
vibcool_status vibcool_open_text(const char* config_text, vibcool_session** out_session);
void vibcool_close(vibcool_session* session);

/* Overrides one config entry, e.g. ("krotov.max_iterations", "500") or
 * ("functional.variant", "symmetrized"). Takes effect for subsequent runs. */
vibcool_status vibcool_set(vibcool_session* session, const char* key, const char* value);

/* Progress lines (one per optimizer iteration plus stage notes). */
typedef void (*vibcool_progress_fn)(void* user, const char* line);
void vibcool_set_progress(vibcool_session* session, vibcool_progress_fn fn, void* user);

/* stage: solve | fcmap | optimize | cool | pipeline.
 * out_dir overrides the configured output directory when non-NULL. */
vibcool_status vibcool_run(vibcool_session* session, const char* stage,
                           const char* out_dir);

/* Numeric results of completed stages, e.g. "cooling.cycles_to_90pct",
 * "krotov.final_j_total", "pulse.energy_uj". */
vibcool_status vibcool_metric(vibcool_session* session, const char* name,
                              double* out_value);

/* Message of the last failure on this session (or of a failed open when
 * session is NULL). Valid until the next call on the same session. */
const char* vibcool_last_error(const vibcool_session* session);

#ifdef __cplusplus
}
#endif

#endif
