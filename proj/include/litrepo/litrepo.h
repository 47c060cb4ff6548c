/*
 * litrepo C API.
 *
 * Mines arXiv metadata for GitHub repository links, enriches them with
 * GitHub engagement metrics, grades maturity, and maintains an incremental
 * knowledge base. All functions return a litrepo_status; on failure
 * litrepo_last_error() describes the cause for the calling thread.
 *
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with litrepo_string_free().
 */
#ifndef LITREPO_H
#define LITREPO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LITREPO_BUILDING)
#define LITREPO_API __declspec(dllexport)
#else
#define LITREPO_API __declspec(dllimport)
#endif
#else
#define LITREPO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum litrepo_status {
  LITREPO_OK = 0,
  LITREPO_E_INVALID_ARGUMENT = 1, /* null handle, unknown key, unparseable value */
  LITREPO_E_VALIDATION = 2,       /* configuration violates an invariant */
  LITREPO_E_NETWORK = 3,          /* arXiv stage failed after retries */
  LITREPO_E_PARSE = 4,            /* malformed remote payload */
  LITREPO_E_IO = 5,               /* knowledge-base read or write failed */
  LITREPO_E_MISMATCH = 6,         /* selfcheck disagreement */
  LITREPO_E_NOT_A_REPOSITORY = 7, /* GitHub URL without owner/name */
  LITREPO_E_INTERNAL = 99
} litrepo_status;

typedef enum litrepo_tier { LITREPO_TIER_LOW = 0, LITREPO_TIER_MEDIUM = 1, LITREPO_TIER_HIGH = 2 } litrepo_tier;

typedef enum litrepo_stream { LITREPO_STDOUT = 1, LITREPO_STDERR = 2 } litrepo_stream;

/* Receives progress, report and log text. `text` is not NUL-terminated. */
typedef void (*litrepo_write_fn)(void *user, litrepo_stream stream, const char *text, size_t len);

typedef struct litrepo_config litrepo_config;
typedef struct litrepo_store litrepo_store;

LITREPO_API const char *litrepo_version(void);
LITREPO_API const char *litrepo_status_string(litrepo_status status);
LITREPO_API const char *litrepo_last_error(void);
LITREPO_API void litrepo_string_free(char *s);

/* ---- configuration ---------------------------------------------------- */

LITREPO_API litrepo_config *litrepo_config_new(void);
LITREPO_API void litrepo_config_free(litrepo_config *config);

/*
 * Sets one option by its command-line name without the leading dashes:
 * from-year, to-year, max-results, page-size, arxiv-base-url,
 * github-base-url, normalize-dates, arxiv-delay-ms, min-interval-ms,
 * max-retries, respect-server-hints, medium-stars, high-stars, out-dir,
 * serial, token-env, include-anonymous, history-cap, verbosity,
 * fixed-clock (UTC epoch seconds). Booleans accept true/false/1/0.
 */
LITREPO_API litrepo_status litrepo_config_set(litrepo_config *config, const char *key,
                                              const char *value);
/* Search terms; the first add after construction replaces the defaults. */
LITREPO_API litrepo_status litrepo_config_add_term(litrepo_config *config, const char *term);
LITREPO_API litrepo_status litrepo_config_validate(const litrepo_config *config);
LITREPO_API litrepo_status litrepo_build_query(const litrepo_config *config, char **out);

/* ---- pipeline ---------------------------------------------------------- */

LITREPO_API litrepo_status litrepo_run(const litrepo_config *config, litrepo_write_fn write,
                                       void *user);
LITREPO_API litrepo_status litrepo_monitor(const litrepo_config *config,
                                           const char *previous_store, litrepo_write_fn write,
                                           void *user);
/* tier_filter: NULL for all reference rows, or "Low"/"Medium"/"High". */
LITREPO_API litrepo_status litrepo_selfcheck(const litrepo_config *config,
                                             const char *tier_filter, litrepo_write_fn write,
                                             void *user);

/* ---- building blocks -------------------------------------------------- */

/* Newline-terminated canonical URLs of the distinct repositories in text. */
LITREPO_API litrepo_status litrepo_extract_repositories(const char *text, char **out);
LITREPO_API litrepo_status litrepo_canonicalize(const char *url, char **out);
LITREPO_API litrepo_status litrepo_classify(const litrepo_config *config, uint64_t stars,
                                            litrepo_tier *out);

/* ---- knowledge base --------------------------------------------------- */

LITREPO_API litrepo_status litrepo_store_load(const char *path, litrepo_store **out);
LITREPO_API void litrepo_store_free(litrepo_store *store);
LITREPO_API size_t litrepo_store_size(const litrepo_store *store);
/* format: "records", "table" or "report". */
LITREPO_API litrepo_status litrepo_store_export(const litrepo_store *store, const char *format,
                                                const char *path);
LITREPO_API litrepo_status litrepo_store_diff(const litrepo_store *before,
                                              const litrepo_store *after, char **out);

#ifdef __cplusplus
}
#endif

#endif /* LITREPO_H */
