#ifndef TROPOS_H
#define TROPOS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TroposStatus {
  TROPOS_STATUS_OK = 0,
  TROPOS_STATUS_NULL_POINTER = 1,
  TROPOS_STATUS_INVALID_UTF8 = 2,
  TROPOS_STATUS_PARSE = 3,
  TROPOS_STATUS_INVALID_GRAPH = 4,
  TROPOS_STATUS_INVALID_DIVISOR = 5,
  TROPOS_STATUS_NOT_EFFECTIVE = 6,
  TROPOS_STATUS_NOT_IN_CANONICAL_SYSTEM = 7,
  TROPOS_STATUS_BUDGET_EXCEEDED = 8,
  TROPOS_STATUS_INVALID_ARGUMENT = 9,
  TROPOS_STATUS_COMPUTATION = 10,
  TROPOS_STATUS_PANIC = 99,
} TroposStatus;

/*
 Opaque divisor on a graph.
 */
typedef struct TroposDivisor TroposDivisor;

/*
 Opaque metric graph.
 */
typedef struct TroposGraph TroposGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread. Empty after a success.
 The pointer stays valid until the next call on this thread.
 */
const char *tropos_last_error(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void tropos_string_free(char *s);

/*
 Builds a graph from the JSON graph format.

 # Safety
 `json` must be a NUL-terminated string and `graph` a valid output pointer.
 */
enum TroposStatus tropos_graph_from_json(const char *json, struct TroposGraph **graph);

/*
 Builds a named graph from the built-in catalog.

 # Safety
 `name` must be a NUL-terminated string and `graph` a valid output pointer.
 */
enum TroposStatus tropos_graph_from_catalog(const char *name, struct TroposGraph **graph);

/*
 # Safety
 `graph` must be null or a handle from this library, not yet freed.
 */
void tropos_graph_free(struct TroposGraph *graph);

/*
 Arithmetic genus (first Betti number plus vertex weights).

 # Safety
 `graph` must be a live handle and `genus` a valid output pointer.
 */
enum TroposStatus tropos_graph_genus(const struct TroposGraph *graph, int64_t *genus);

/*
 The graph in the JSON graph format.

 # Safety
 `graph` must be a live handle and `json` a valid output pointer.
 */
enum TroposStatus tropos_graph_to_json(const struct TroposGraph *graph, char **json);

/*
 Parses a divisor (list of `{"at", "mult"}`) and checks it against `graph`.

 # Safety
 Pointers must be valid; `json` NUL-terminated.
 */
enum TroposStatus tropos_divisor_from_json(const struct TroposGraph *graph,
                                           const char *json,
                                           struct TroposDivisor **divisor);

/*
 The canonical divisor of `graph`.

 # Safety
 `graph` must be a live handle and `divisor` a valid output pointer.
 */
enum TroposStatus tropos_divisor_canonical(const struct TroposGraph *graph,
                                           struct TroposDivisor **divisor);

/*
 # Safety
 `divisor` must be null or a handle from this library, not yet freed.
 */
void tropos_divisor_free(struct TroposDivisor *divisor);

/*
 # Safety
 `divisor` must be a live handle and `degree` a valid output pointer.
 */
enum TroposStatus tropos_divisor_degree(const struct TroposDivisor *divisor, int64_t *degree);

/*
 # Safety
 `divisor` must be a live handle and `json` a valid output pointer.
 */
enum TroposStatus tropos_divisor_to_json(const struct TroposDivisor *divisor, char **json);

/*
 Rank of `divisor` on the unit model subdivided `subdivision` times.

 # Safety
 Handles must be live and `rank` a valid output pointer.
 */
enum TroposStatus tropos_rank(const struct TroposGraph *graph,
                              const struct TroposDivisor *divisor,
                              uint32_t subdivision,
                              int64_t *rank);

/*
 Linearly equivalent divisor reduced at host vertex `base`, on the unit
 model subdivided `subdivision` times. Returns a new divisor handle.

 # Safety
 Handles must be live, `base` NUL-terminated and `reduced` a valid output pointer.
 */
enum TroposStatus tropos_reduce(const struct TroposGraph *graph,
                                const struct TroposDivisor *divisor,
                                const char *base,
                                uint32_t subdivision,
                                struct TroposDivisor **reduced);

/*
 Members of |D| on the grid, as JSON. `state_cap` 0 means the default cap.

 # Safety
 Handles must be live and `json` a valid output pointer.
 */
enum TroposStatus tropos_linear_system(const struct TroposGraph *graph,
                                       const struct TroposDivisor *divisor,
                                       uint32_t subdivision,
                                       uintptr_t state_cap,
                                       char **json);

/*
 Extremal members of |D| on the grid, as JSON.

 # Safety
 Handles must be live and `json` a valid output pointer.
 */
enum TroposStatus tropos_extremals(const struct TroposGraph *graph,
                                   const struct TroposDivisor *divisor,
                                   uint32_t subdivision,
                                   uintptr_t state_cap,
                                   char **json);

/*
 Grid survey of the cells of |D|, as JSON.

 # Safety
 Handles must be live and `json` a valid output pointer.
 */
enum TroposStatus tropos_cells(const struct TroposGraph *graph,
                               const struct TroposDivisor *divisor,
                               uint32_t subdivision,
                               uintptr_t state_cap,
                               char **json);

/*
 Realizability of an effective canonical divisor. `report` may be null.

 # Safety
 Handles must be live and `realizable` a valid output pointer.
 */
enum TroposStatus tropos_is_realizable(const struct TroposGraph *graph,
                                       const struct TroposDivisor *divisor,
                                       bool *realizable,
                                       char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TROPOS_H */
