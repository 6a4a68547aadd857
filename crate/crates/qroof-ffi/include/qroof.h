#ifndef QROOF_H
#define QROOF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call. `qroof_last_error`
// holds the matching message.
typedef enum QroofStatus {
  QROOF_STATUS_OK = 0,
  // A required pointer argument was null.
  QROOF_STATUS_NULL_ARGUMENT = 1,
  // The channel description could not be parsed.
  QROOF_STATUS_PARSE_ERROR = 2,
  // The map is not positive, so roof quantities are undefined.
  QROOF_STATUS_NOT_POSITIVE = 3,
  // A numeric argument was outside its domain (state outside the
  // Bloch ball, log base <= 1, ...).
  QROOF_STATUS_DOMAIN_ERROR = 4,
  // An unexpected internal failure; the message has details.
  QROOF_STATUS_INTERNAL_ERROR = 5,
} QroofStatus;

// Positivity class of a map, mirroring the library's classification.
typedef enum QroofPositivity {
  QROOF_POSITIVITY_COMPLETELY_POSITIVE = 0,
  QROOF_POSITIVITY_POSITIVE_NOT_CP = 1,
  QROOF_POSITIVITY_NOT_POSITIVE = 2,
} QroofPositivity;

// Opaque handle for a trace-preserving 1-qubit map.
typedef struct QroofMap QroofMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent non-`Ok` status on this thread. The
// pointer stays valid until the next failing call on the same thread.
const char *qroof_last_error(void);

// Builds a map from a JSON channel description (the same format the
// CLI accepts: kinds `general`, `axial`, `named`). On success `*out`
// owns the handle; release it with `qroof_map_free`.
//
// # Safety
// `json` must be a valid NUL-terminated string.
enum QroofStatus qroof_map_from_json(const char *json, struct QroofMap **out);

// Builds the axial map `Lambda = diag(beta, beta, alpha + gamma - 1)`,
// `t = (0, 0, alpha - gamma)`.
//
// # Safety
// `out` must be a valid pointer.
enum QroofStatus qroof_map_axial(double alpha, double beta, double gamma, struct QroofMap **out);

// Builds the unital map `Lambda = diag(l1, l2, l3)`, `t = 0`.
//
// # Safety
// `out` must be a valid pointer.
enum QroofStatus qroof_map_unital(double l1, double l2, double l3, struct QroofMap **out);

// Releases a handle returned by one of the constructors. Null is a
// no-op.
//
// # Safety
// `map` must be null or a handle not yet freed.
void qroof_map_free(struct QroofMap *map);

// Classifies the map: completely positive, positive but not CP, or
// not positive.
//
// # Safety
// `map` and `out` must be valid pointers.
enum QroofStatus qroof_map_positivity(const struct QroofMap *map, enum QroofPositivity *out);

// Critical parameter `w` of the concurrence form: the second largest
// eigenvalue of the flow.
//
// # Safety
// `map` and `out` must be valid pointers.
enum QroofStatus qroof_critical_w(const struct QroofMap *map, double *out);

// Concurrence of the map's output for the input state with Bloch
// vector `(x, y, z)`.
//
// # Safety
// `map` and `out` must be valid pointers.
enum QroofStatus qroof_concurrence(const struct QroofMap *map,
                                   double x,
                                   double y,
                                   double z,
                                   double *out);

// Entanglement entropy of the output for the input state with Bloch
// vector `(x, y, z)`, in logarithms of the given `base` (> 1). `seed`
// fixes the numerical search.
//
// # Safety
// `map` and `out` must be valid pointers.
enum QroofStatus qroof_entanglement(const struct QroofMap *map,
                                    double x,
                                    double y,
                                    double z,
                                    double base,
                                    uint64_t seed,
                                    double *out);

// One-shot classical capacity in bits. Writes the optimizing input
// state's Bloch vector to `argmax` (length 3) when it is non-null.
// `seed` fixes the numerical search.
//
// # Safety
// `map` and `out_chi` must be valid; `argmax` must be null or point
// to at least 3 doubles.
enum QroofStatus qroof_capacity(const struct QroofMap *map,
                                uint64_t seed,
                                double *out_chi,
                                double *argmax);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QROOF_H */
