#ifndef HODGEMC_H
#define HODGEMC_H

/* Generated by cbindgen from the hodgemc-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every fallible call.
 */
typedef enum HodgemcStatus {
  HODGEMC_STATUS_OK = 0,
  HODGEMC_STATUS_INVALID_ARGUMENT = 1,
  HODGEMC_STATUS_PARSE_ERROR = 2,
  HODGEMC_STATUS_INCONSISTENT_DATA = 3,
  HODGEMC_STATUS_UNAVAILABLE_INVARIANT = 4,
  HODGEMC_STATUS_DEGENERATE_CONVOLUTION = 5,
  HODGEMC_STATUS_STUCK_CHAIN = 6,
  HODGEMC_STATUS_NOT_RIGID = 7,
  HODGEMC_STATUS_PRECONDITION_VIOLATED = 8,
  HODGEMC_STATUS_UNSUPPORTED_EIGENVALUE = 9,
  HODGEMC_STATUS_DIVISION_BY_ZERO = 10,
  HODGEMC_STATUS_ORACLE_MISMATCH = 11,
  HODGEMC_STATUS_IO_ERROR = 12,
  HODGEMC_STATUS_NULL_POINTER = 13,
} HodgemcStatus;

/**
 * Opaque handle to one module-data package.
 */
typedef struct HodgemcData HodgemcData;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; owned by the library and
 * valid until the next failing call.
 */
const char *hodgemc_last_error(void);

/**
 * Releases a string returned by this library.
 */
void hodgemc_string_free(char *s);

/**
 * Releases a data handle.
 */
void hodgemc_data_free(struct HodgemcData *data);

/**
 * Parses a JSON data document into a handle.
 */
enum HodgemcStatus hodgemc_data_parse(const char *json, struct HodgemcData **out);

/**
 * Serializes a handle to the canonical JSON document; `anchor` shifts the
 * smallest populated Hodge index to zero first.
 */
enum HodgemcStatus hodgemc_data_serialize(const struct HodgemcData *data, bool anchor, char **out);

enum HodgemcStatus hodgemc_data_clone(const struct HodgemcData *data, struct HodgemcData **out);

/**
 * Total rank Σ_p h^p; zero on a null handle.
 */
uint64_t hodgemc_data_rank(const struct HodgemcData *data);

/**
 * Katz rigidity index (2 for rigid irreducible data).
 */
enum HodgemcStatus hodgemc_rigidity_index(const struct HodgemcData *data, int64_t *out);

/**
 * Rank-consistency and invariant report as JSON; `out_clean` says whether
 * the report is empty.
 */
enum HodgemcStatus hodgemc_check(const struct HodgemcData *data,
                                 char **out_report,
                                 bool *out_clean);

/**
 * Middle convolution MC_{λ₀} with γ₀ = gamma0_num/gamma0_den.
 */
enum HodgemcStatus hodgemc_middle_convolve(const struct HodgemcData *data,
                                           int64_t gamma0_num,
                                           int64_t gamma0_den,
                                           struct HodgemcData **out);

/**
 * Rank-one twist; `exponents` is a comma-separated list of LOC=A/B pairs,
 * e.g. `0=1/3,1=2/3`.
 */
enum HodgemcStatus hodgemc_twist(const struct HodgemcData *data,
                                 const char *exponents,
                                 struct HodgemcData **out);

/**
 * Hypergeometric data from comma-separated angle lists.
 */
enum HodgemcStatus hodgemc_hypergeometric(const char *alpha_csv,
                                          const char *beta_csv,
                                          struct HodgemcData **out);

/**
 * Katz reduction; the chain document is returned as JSON.
 */
enum HodgemcStatus hodgemc_reduce(const struct HodgemcData *data, char **out_chain);

/**
 * Reduces the data and replays the chain through the matrix oracle.
 * `out_clean` reports whether every snapshot matched.
 */
enum HodgemcStatus hodgemc_verify(const struct HodgemcData *data,
                                  uint64_t seed,
                                  uint64_t max_order,
                                  char **out_report,
                                  bool *out_clean);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HODGEMC_H */
