/* C interface to the insulair shared library.
 *
 * All functions return a status code; numeric and string outputs go through
 * out-parameters. Strings returned via char** are heap-allocated and must be
 * released with insulair_string_free(). Shape handles are opaque and freed
 * with insulair_shape_free(). On any non-OK status a thread-local message is
 * available from insulair_last_error().
 *
 * The Dirichlet (beta -> infinity) outer condition is requested by passing
 * INSULAIR_BETA_DIRICHLET (positive infinity) as beta.
 */

#ifndef INSULAIR_H
#define INSULAIR_H

#include <math.h>

#ifdef __cplusplus
extern "C" {
#endif

#define INSULAIR_BETA_DIRICHLET HUGE_VAL

typedef enum {
    INSULAIR_OK = 0,
    INSULAIR_ERR_INVALID = 1,  /* bad argument, malformed spec, precondition */
    INSULAIR_ERR_FAILED = 2    /* internal failure (e.g. solver divergence) */
} insulair_status;

typedef struct insulair_shape insulair_shape;

const char* insulair_version(void);

/* Last error message of the calling thread; empty string when none. */
const char* insulair_last_error(void);

void insulair_string_free(char* s);

/* Shapes ------------------------------------------------------------------ */

/* Parses a shape spec document:
 *   {"type":"polygon","vertices":[[x,y],...]} | {"type":"disk","radius":R} |
 *   {"type":"regular_ngon","sides":m,"perimeter":P} | {"type":"box","sides":[...]}
 */
insulair_status insulair_shape_from_json(const char* json, insulair_shape** out);
void insulair_shape_free(insulair_shape* shape);
insulair_status insulair_shape_to_json(const insulair_shape* shape, char** out);
insulair_status insulair_shape_area(const insulair_shape* shape, double* out);
insulair_status insulair_shape_perimeter(const insulair_shape* shape, double* out);
/* 1 when the shape has a 2D realization (FEM-capable), 0 otherwise. */
insulair_status insulair_shape_is_planar(const insulair_shape* shape, int* out);

/* Radial oracle ------------------------------------------------------------ */

insulair_status insulair_radial_dispersion(int n, double R, double beta, double delta,
                                           double* out);
insulair_status insulair_monotonicity_threshold(int n, double beta, double R, double* out);
/* JSON record {n, R, beta, delta, I, c, threshold}. */
insulair_status insulair_radial_record(int n, double R, double beta, double delta,
                                       char** json_out);

/* FEM ---------------------------------------------------------------------- */

insulair_status insulair_dispersion(const insulair_shape* shape, double beta, double delta,
                                    int n_theta, int n_s, double* out);
/* JSON record with the dispersion and its a-priori bound margins. */
insulair_status insulair_compute_record(const insulair_shape* shape, double beta,
                                        double delta, int n_theta, int n_s,
                                        char** json_out);

/* Verification and search -------------------------------------------------- */

/* Runs a verification suite; config_json may be "{}" or NULL for defaults.
 * The report (JSON) carries "pass"; the status is OK even for failing checks,
 * non-OK only for invalid input. */
insulair_status insulair_verify(const char* suite, const char* config_json,
                                char** report_json);

/* Derivative-free shape search. config_json keys: constraint ("perimeter" |
 * "area"), value, m, beta, delta, seed, restarts, max_iters, resolution
 * "NTxNS". Returns a JSON document with the trace and the best shape spec. */
insulair_status insulair_optimize(const char* config_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* INSULAIR_H */
