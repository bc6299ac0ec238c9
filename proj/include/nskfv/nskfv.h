/* C API for the nskfv solver library.
 *
 * All entry points return nsk_status; on failure nsk_last_error() gives a
 * human-readable message for the calling thread. Handles are opaque and
 * must be released with their matching *_free function.
 */
#ifndef NSKFV_NSKFV_H
#define NSKFV_NSKFV_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nsk_status {
    NSK_OK = 0,
    NSK_ERR_VALIDATION = 1, /* bad config/arguments, failed verification */
    NSK_ERR_RUNTIME = 2,    /* positivity loss, energy growth, step budget */
    NSK_ERR_IO = 3
} nsk_status;

typedef struct nsk_config nsk_config;

/* Parses a JSON configuration document ("kind": "run" or "study"). */
nsk_status nsk_config_parse(const char* json_text, nsk_config** out_config);

/* Reads and parses a configuration file. */
nsk_status nsk_config_read_file(const char* path, nsk_config** out_config);

void nsk_config_free(nsk_config* config);

/* 1 if the configuration is a study, 0 for a plain run, -1 on null input. */
int nsk_config_is_study(const nsk_config* config);

/* Overrides the configured output directory. */
nsk_status nsk_config_set_output_dir(nsk_config* config, const char* dir);

/* Serializes the configuration back to JSON. The returned string remains
 * valid until the next call on the same thread. */
const char* nsk_config_to_json(const nsk_config* config);

/* Integrates a run configuration, writing diagnostics.csv and snapshots. */
nsk_status nsk_run(const nsk_config* config);

/* Executes a refinement study, writing report.csv and report.json. */
nsk_status nsk_study(const nsk_config* config);

/* Per-suite verification callback: passed the suite name, 1/0 pass flag and
 * a short detail string. */
typedef void (*nsk_suite_report_fn)(const char* suite, int passed, const char* detail, void* user);

/* Runs the built-in property suites (quick != 0 restricts to 8x8 fixtures).
 * Returns NSK_ERR_VALIDATION if any suite fails. */
nsk_status nsk_verify(int quick, nsk_suite_report_fn report, void* user);

/* Message for the most recent failure on this thread ("" if none). */
const char* nsk_last_error(void);

const char* nsk_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif
