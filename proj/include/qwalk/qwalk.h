/* C interface to the quarter-plane walk solver.
 *
 * Every operation returns a status code (QWALK_OK on success) and, on
 * success, stores an opaque result handle holding the serialized output.
 * Handles must be released with qwalk_result_free. On failure the handle is
 * left null; qwalk_status_name gives the stable name of the error and
 * qwalk_last_error_message the human-readable detail for the calling thread.
 */
#ifndef QWALK_QWALK_H
#define QWALK_QWALK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qwalk_status {
    QWALK_OK = 0,
    QWALK_ERR_NON_MONOMIAL_LEADING_TERM = 1,
    QWALK_ERR_NON_SQUARE_LEADING_TERM = 2,
    QWALK_ERR_INDISTINCT_LEADING_TERMS = 3,
    QWALK_ERR_NON_RATIONAL_LEADING_COEFFICIENT = 4,
    QWALK_ERR_PRECISION_EXHAUSTED = 5,
    QWALK_ERR_SELECTOR_OUT_OF_RANGE = 6,
    QWALK_ERR_UNBOUNDED_SUPPORT = 7,
    QWALK_ERR_NOT_ELIMINABLE = 8,
    QWALK_ERR_KERNEL_NOT_CANCELLED = 9,
    QWALK_ERR_SINGULAR_SYSTEM = 10,
    QWALK_ERR_NULLVECTOR_CHECK_FAILED = 11,
    QWALK_ERR_UNKNOWN_SET_MISMATCH = 12,
    QWALK_ERR_UNKNOWN_MODEL = 13,
    QWALK_ERR_DEGENERATE_REGIME = 14,
    QWALK_ERR_ALL_SYSTEMS_SINGULAR = 15,
    QWALK_ERR_DIVISIBILITY_FAILURE = 16,
    QWALK_ERR_MALFORMED_DOCUMENT = 17,
    QWALK_ERR_USAGE = 18,
    QWALK_ERR_INTERNAL = 99
} qwalk_status;

typedef struct qwalk_result qwalk_result;

/* Stable name of a status code ("ok", "UsageError", ...). */
const char* qwalk_status_name(int status);

/* Detail message of the most recent failure on this thread ("" if none). */
const char* qwalk_last_error_message(void);

/* Brute-force enumeration of the selected series.
 *   model:    "kreweras" or "reverse-kreweras"
 *   a, b, c:  positive rationals as strings ("2", "1/2"); NULL means "1"
 *   order:    highest t-order to enumerate (>= 0)
 *   selector: "full", "line_y(i)", "line_x(i)", "diag(j)", "point(i,j)";
 *             NULL means "full"
 *   format:   "json" or "csv"; NULL means "json"
 */
int qwalk_enumerate(const char* model, const char* a, const char* b, const char* c,
                    int order, const char* selector, const char* format,
                    qwalk_result** out);

/* Kernel-method solve; the result is a JSON document bundling all solved
 * series plus determinant diagnostics. working_order < 0 selects the
 * automatic default (at least twice the order). */
int qwalk_solve(const char* model, const char* a, const char* b, const char* c,
                int order, int working_order, qwalk_result** out);

/* Solve, enumerate, and compare coefficient for coefficient; the result is a
 * JSON verification report. Query the outcome with
 * qwalk_result_verify_passed. */
int qwalk_verify(const char* model, const char* a, const char* b, const char* c,
                 int order, int working_order, qwalk_result** out);

/* Intermediate objects of the solving pipeline as JSON.
 *   what: "delta-roots", "factorization", "kernel-roots", or "determinants"
 */
int qwalk_expand(const char* model, const char* a, const char* b, const char* c,
                 int order, int working_order, const char* what, qwalk_result** out);

/* Writes bytes to a file atomically (temp file + rename); path "-" or NULL
 * writes to standard output. */
int qwalk_write_output(const char* path, const char* bytes, size_t size);

/* Serialized bytes of a result (NUL-terminated; size excludes the NUL). */
const char* qwalk_result_bytes(const qwalk_result* result);
size_t qwalk_result_size(const qwalk_result* result);

/* 1 if a verification result passed, 0 if it found a mismatch, -1 if the
 * result is not a verification report. */
int qwalk_result_verify_passed(const qwalk_result* result);

/* Wall-clock seconds the operation took (diagnostic only). */
double qwalk_result_runtime_seconds(const qwalk_result* result);

void qwalk_result_free(qwalk_result* result);

#ifdef __cplusplus
}
#endif

#endif /* QWALK_QWALK_H */
