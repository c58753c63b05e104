/* luwave — stochastic shallow-water wave tank.
 *
 * C interface to the simulation library: parse/override a configuration,
 * then dispatch one of the run modes. All functions are thread-safe as long
 * as each luwave_config object is used by one thread at a time. Errors are
 * reported through the status code plus a message copied into the caller's
 * buffer (always NUL-terminated when errlen > 0).
 */
#ifndef LUWAVE_H
#define LUWAVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct luwave_config luwave_config;

/* Status values double as CLI exit codes. */
typedef enum {
  LUWAVE_OK = 0,
  LUWAVE_ERR_CONFIG = 2,    /* bad config/arguments/output location */
  LUWAVE_ERR_NUMERICAL = 3  /* solver failure or invalid state mid-run */
} luwave_status;

const char* luwave_version(void);

/* Returns a config with all defaults (the reference tank setup). */
luwave_config* luwave_config_default(void);

/* Parse `key = value` configuration text or file; NULL on error with a
 * message in errbuf. The caller owns the result (luwave_config_free). */
luwave_config* luwave_config_parse_text(const char* text, char* errbuf,
                                        size_t errlen);
luwave_config* luwave_config_parse_file(const char* path, char* errbuf,
                                        size_t errlen);
void luwave_config_free(luwave_config* cfg);

/* Override a single key (same keys as the file format). */
luwave_status luwave_config_set(luwave_config* cfg, const char* key,
                                const char* value, char* errbuf,
                                size_t errlen);

/* Renders the fully resolved configuration; copies into buf, returns the
 * untruncated length (snprintf convention). */
size_t luwave_config_render(const luwave_config* cfg, char* buf, size_t len);

/* Run modes. out_dir, when non-NULL, overrides the config's out_dir. The
 * output directory must not already exist unless force is nonzero.
 * kinds_csv is a comma-separated list like "sv,boussinesq,sgn". */
luwave_status luwave_run_single(const luwave_config* cfg, const char* out_dir,
                                int force, char* errbuf, size_t errlen);
luwave_status luwave_run_ensemble(const luwave_config* cfg,
                                  const char* out_dir, int force, char* errbuf,
                                  size_t errlen);
luwave_status luwave_run_compare(const luwave_config* cfg,
                                 const char* kinds_csv, const char* out_dir,
                                 int force, char* errbuf, size_t errlen);
luwave_status luwave_run_kdv(const luwave_config* cfg, const char* out_dir,
                             int force, char* errbuf, size_t errlen);

#ifdef __cplusplus
}
#endif

#endif /* LUWAVE_H */
