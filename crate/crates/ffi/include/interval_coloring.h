#ifndef INTERVAL_COLORING_H
#define INTERVAL_COLORING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Non-negative values are answers, negative values errors.
typedef enum IcStatus {
  IC_STATUS_OK = 0,
  // A definite negative answer, such as "no coloring with t colors".
  IC_STATUS_NONE = 1,
  // The budget ran out before an answer.
  IC_STATUS_TIMEOUT = 2,
  IC_STATUS_NULL_POINTER = -1,
  IC_STATUS_INVALID_UTF8 = -2,
  IC_STATUS_PARSE_ERROR = -3,
  IC_STATUS_INVALID_ARGUMENT = -4,
  IC_STATUS_NOT_IN_SPECTRUM = -5,
  IC_STATUS_WRONG_GRAPH = -6,
  IC_STATUS_PANIC = -99,
} IcStatus;

// An edge coloring indexed by the edges of the graph it was made for.
typedef struct IcColoring IcColoring;

// A graph, possibly remembering the gadget it was built as.
typedef struct IcGraph IcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent error on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *ic_last_error(void);

// # Safety
// `s` must come from this library or be null.
void ic_string_free(char *s);

// Parses graph JSON (`{"vertices": [...], "edges": [[u, v], ...]}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum IcStatus ic_graph_from_json(const char *json, struct IcGraph **out);

// # Safety
// `g` must be a live graph handle and `out` writable.
enum IcStatus ic_graph_to_json(const struct IcGraph *g, char **out);

// # Safety
// `g` must be a graph handle from this library or null.
void ic_graph_free(struct IcGraph *g);

// # Safety
// `g` must be a live graph handle or null (which yields 0).
size_t ic_graph_vertex_count(const struct IcGraph *g);

// # Safety
// `g` must be a live graph handle or null (which yields 0).
size_t ic_graph_edge_count(const struct IcGraph *g);

// Builds `F(b, T)`. If `coloring_out` is non-null it receives the explicit
// coloring with `T + 1` colors.
//
// # Safety
// `graph_out` must be writable; `coloring_out` writable or null.
enum IcStatus ic_gadget_f(size_t b,
                          size_t top,
                          struct IcGraph **graph_out,
                          struct IcColoring **coloring_out);

// Builds the glued gadget with `k` gaps of size at least `d`.
//
// # Safety
// `out` must be writable.
enum IcStatus ic_gadget_boldf(size_t k, size_t d, struct IcGraph **out);

// Coloring with exactly `t` colors of a graph made by `ic_gadget_boldf`.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum IcStatus ic_realize_t(const struct IcGraph *g, size_t t, struct IcColoring **out);

// Parses coloring JSON (`{"colors": {"u--v": 3, ...}}`) for graph `g`.
//
// # Safety
// `g` must be a live graph handle, `json` NUL-terminated, `out` writable.
enum IcStatus ic_coloring_from_json(const struct IcGraph *g,
                                    const char *json,
                                    struct IcColoring **out);

// # Safety
// `g` and `c` must be live handles and `out` writable.
enum IcStatus ic_coloring_to_json(const struct IcGraph *g, const struct IcColoring *c, char **out);

// # Safety
// `c` must be a coloring handle from this library or null.
void ic_coloring_free(struct IcColoring *c);

// Number of distinct colors used.
//
// # Safety
// `c` must be a live coloring handle or null (which yields 0).
size_t ic_coloring_color_count(const struct IcColoring *c);

// Color of edge `e` (in the graph's sorted edge order), or 0 when out of
// range.
//
// # Safety
// `c` must be a live coloring handle or null.
int64_t ic_coloring_get(const struct IcColoring *c, size_t e);

// `IC_STATUS_OK` if `c` is an interval coloring of `g`, `IC_STATUS_NONE`
// if not.
//
// # Safety
// `g` and `c` must be live handles.
enum IcStatus ic_verify_interval(const struct IcGraph *g, const struct IcColoring *c);

// Searches for an interval coloring with exactly `t` colors within
// `budget_ms` milliseconds (0 means no limit). Writes `out` only on
// `IC_STATUS_OK`.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum IcStatus ic_find_coloring(const struct IcGraph *g,
                               size_t t,
                               uint64_t budget_ms,
                               struct IcColoring **out);

// Interval spectrum report as JSON. `t_max = 0` searches up to the edge
// count. Returns `IC_STATUS_TIMEOUT` (with the partial report written) when
// some values were left undecided.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum IcStatus ic_spectrum_json(const struct IcGraph *g,
                               size_t t_max,
                               uint64_t budget_ms,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERVAL_COLORING_H */
