/* C interface to the liftgeo tensor-calculus library.
 *
 * Every computation takes a session (probe settings) and returns a report
 * handle. Strings handed out by the library are released with
 * liftgeo_string_free; handles with their matching *_free function.
 */
#ifndef LIFTGEO_H
#define LIFTGEO_H

#include <stdint.h>

#if defined(_WIN32)
#define LIFTGEO_API __declspec(dllexport)
#else
#define LIFTGEO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum liftgeo_status {
  LIFTGEO_OK = 0,
  LIFTGEO_ERR_INVALID_ARGUMENT = 1,
  LIFTGEO_ERR_IO = 2,
  LIFTGEO_ERR_PARSE = 3,
  LIFTGEO_ERR_DEGENERATE_METRIC = 4,
  LIFTGEO_ERR_UNDECIDED = 5,
  LIFTGEO_ERR_EVALUATION = 6,
  LIFTGEO_ERR_INTERNAL = 7
} liftgeo_status;

typedef struct liftgeo_session liftgeo_session;
typedef struct liftgeo_report liftgeo_report;

LIFTGEO_API const char* liftgeo_version(void);
LIFTGEO_API const char* liftgeo_status_string(liftgeo_status status);
/* Message of the last failed call on this thread; "" if none. */
LIFTGEO_API const char* liftgeo_last_error(void);

LIFTGEO_API liftgeo_status liftgeo_session_new(liftgeo_session** out);
LIFTGEO_API void liftgeo_session_free(liftgeo_session* session);
/* probes >= 1, tolerance > 0. */
LIFTGEO_API liftgeo_status liftgeo_session_configure(liftgeo_session* session, uint64_t seed, int probes,
                                                     double tolerance);

LIFTGEO_API liftgeo_status liftgeo_christoffel(liftgeo_session* session, const char* metric_path,
                                               liftgeo_report** out);
LIFTGEO_API liftgeo_status liftgeo_curvature(liftgeo_session* session, const char* metric_path, int fiber_contract,
                                             liftgeo_report** out);
/* kind: "sasaki", "horizontal" or "complete". */
LIFTGEO_API liftgeo_status liftgeo_lift(liftgeo_session* session, const char* metric_path, const char* kind,
                                        int with_connection, liftgeo_report** out);
/* lift may be NULL for the base comparison. */
LIFTGEO_API liftgeo_status liftgeo_harmonic(liftgeo_session* session, const char* g_path, const char* d_path,
                                            const char* lift, liftgeo_report** out);
LIFTGEO_API liftgeo_status liftgeo_verify(liftgeo_session* session, const char* metric_path, liftgeo_report** out);
LIFTGEO_API liftgeo_status liftgeo_paper_check(liftgeo_session* session, const char* scenario,
                                               liftgeo_report** out);

LIFTGEO_API void liftgeo_report_free(liftgeo_report* report);
/* 0 ok, 1 check failure, 3 inconclusive. */
LIFTGEO_API int liftgeo_report_exit_code(const liftgeo_report* report);
LIFTGEO_API liftgeo_status liftgeo_report_json(const liftgeo_report* report, char** out);
LIFTGEO_API liftgeo_status liftgeo_report_text(const liftgeo_report* report, char** out);

/* Text form of a JSON report produced by liftgeo_report_json. */
LIFTGEO_API liftgeo_status liftgeo_render_json(const char* json, char** out);
/* Canonical form of an expression in the expression grammar. */
LIFTGEO_API liftgeo_status liftgeo_expr_simplify(const char* expr, char** out);

LIFTGEO_API void liftgeo_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LIFTGEO_H */
