/* match1d -- minimum-weight perfect matching of points on the real line
 * under concave shift-invariant distances d(x, y) = g(|x - y|).
 *
 * The solver fills a triangular table of partial matching weights bottom-up
 * through a two-alternative recursion and reconstructs the optimal matching
 * by reduction steps, in O(n^2) for 2n points. Two reference solvers
 * (exhaustive enumeration and a cubic nested-interval DP) are exposed for
 * verification.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning m1d_status never throw or abort; on failure they
 * return a nonzero status and leave a human-readable message in
 * m1d_last_error() (thread-local). Handles are immutable after creation and
 * may be shared across threads; distinct solves run concurrently.
 */
#ifndef MATCH1D_H
#define MATCH1D_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MATCH1D_BUILD)
#    define M1D_API __declspec(dllexport)
#  else
#    define M1D_API __declspec(dllimport)
#  endif
#else
#  define M1D_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum m1d_status {
  M1D_OK = 0,
  M1D_ERR_ARGUMENT = 1,   /* out-of-range or malformed call parameters */
  M1D_ERR_PARSE = 2,      /* unreadable text input */
  M1D_ERR_INPUT = 3,      /* structurally invalid instance data */
  M1D_ERR_VALIDATION = 4, /* cost function violates its invariants */
  M1D_ERR_SIZE = 5,       /* size cap exceeded */
  M1D_ERR_INTERNAL = 6,   /* broken solver invariant */
  M1D_ERR_IO = 7          /* file system failure */
} m1d_status;

/* Which alternative of the recursion produced a table cell. */
typedef enum m1d_winner {
  M1D_WINNER_FIRST = 0,  /* covering arc (x_i, x_j) plus inner matching */
  M1D_WINNER_SECOND = 1, /* inclusion-exclusion of the two sub-spans */
  M1D_WINNER_TIE = 2
} m1d_winner;

typedef enum m1d_mode {
  M1D_MODE_REDUCTION = 0,  /* default: reduction procedure */
  M1D_MODE_FULL_TABLE = 1  /* compute every cell, no reductions */
} m1d_mode;

typedef enum m1d_distribution {
  M1D_DIST_UNIFORM = 0,
  M1D_DIST_CLUSTERED = 1
} m1d_distribution;

typedef struct m1d_cost m1d_cost;
typedef struct m1d_points m1d_points;
typedef struct m1d_solution m1d_solution;
typedef struct m1d_table m1d_table;
typedef struct m1d_oracle m1d_oracle;
typedef struct m1d_validation m1d_validation;

M1D_API const char* m1d_version(void);
M1D_API const char* m1d_status_name(m1d_status status);

/* Message describing the most recent failure on this thread. Valid until the
 * next failing call on the same thread. */
M1D_API const char* m1d_last_error(void);

/* Frees strings returned through char** out-parameters. */
M1D_API void m1d_string_free(char* s);

/* ---- cost functions ---------------------------------------------------- */

/* d(x, y) = |x - y|^alpha, 0 < alpha <= 1. */
M1D_API m1d_status m1d_cost_power(double alpha, m1d_cost** out);
/* d(x, y) = scale * log(1 + |x - y|), scale > 0. */
M1D_API m1d_status m1d_cost_log1p(double scale, m1d_cost** out);
/* Piecewise-linear concave generator through (t[k], v[k]); breakpoints must
 * start at (0, 0) with strictly increasing t and non-increasing, nonnegative
 * slopes (the first strictly positive). Past the last breakpoint the final
 * slope continues. */
M1D_API m1d_status m1d_cost_piecewise(const double* t, const double* v,
                                      size_t count, m1d_cost** out);
/* Text forms: "power:<alpha>", "log1p:<scale>", "pwl:<path>" where the file
 * holds whitespace-separated "t v" pairs. */
M1D_API m1d_status m1d_cost_parse(const char* text, m1d_cost** out);
M1D_API m1d_status m1d_cost_text(const m1d_cost* cost, char** out);
M1D_API m1d_status m1d_cost_eval(const m1d_cost* cost, double x, double y,
                                 double* out);
/* Probes concavity, positivity and monotonicity on probe_count grid points
 * over [0, t_max]. Violations are reported, not raised. */
M1D_API m1d_status m1d_cost_validate(const m1d_cost* cost, int probe_count,
                                     double t_max, m1d_validation** out);
M1D_API void m1d_cost_free(m1d_cost* cost);

M1D_API int m1d_validation_ok(const m1d_validation* report);
/* 1 when strict concavity was detected on the probe grid. Merely concave
 * generators (alpha = 1, piecewise-linear) report 0; the solver still
 * produces an optimal weight for them, but optimal matchings need not be
 * unique. */
M1D_API int m1d_validation_strict(const m1d_validation* report);
M1D_API size_t m1d_validation_violations(const m1d_validation* report);
M1D_API m1d_status m1d_validation_violation(const m1d_validation* report,
                                            size_t index, double* t1,
                                            double* t2, double* lambda,
                                            double* lhs, double* rhs);
M1D_API m1d_status m1d_validation_summary(const m1d_validation* report,
                                          char** out);
M1D_API void m1d_validation_free(m1d_validation* report);

/* ---- point sets -------------------------------------------------------- */

/* Values are sorted internally; even nonzero count, finite and pairwise
 * distinct values required. */
M1D_API m1d_status m1d_points_create(const double* xs, size_t count,
                                     m1d_points** out);
/* Whitespace-separated decimal numbers. */
M1D_API m1d_status m1d_points_parse(const char* text, m1d_points** out);
M1D_API m1d_status m1d_points_read_file(const char* path, m1d_points** out);

typedef struct m1d_gen_spec {
  size_t size;                    /* even, positive */
  m1d_distribution distribution;
  size_t cluster_count;           /* clustered only, at most size / 2 */
  uint64_t seed;
  double span;                    /* uniform draws land in [0, span) */
} m1d_gen_spec;

M1D_API void m1d_gen_spec_init(m1d_gen_spec* spec);
/* Deterministic for a given spec (seeded mt19937_64; algorithm documented in
 * the project README). */
M1D_API m1d_status m1d_points_generate(const m1d_gen_spec* spec,
                                       m1d_points** out);
M1D_API size_t m1d_points_count(const m1d_points* ps);
/* Sorted coordinates; owned by the handle. */
M1D_API const double* m1d_points_data(const m1d_points* ps);
/* Writes up to cap entries mapping sorted position -> input position and
 * returns the permutation length, which is 0 when the input was already
 * sorted. Call with cap = 0 to query the length. */
M1D_API size_t m1d_points_permutation(const m1d_points* ps, uint32_t* buf,
                                      size_t cap);
/* One coordinate per line, shortest round-trip decimal form. */
M1D_API m1d_status m1d_points_text(const m1d_points* ps, char** out);
M1D_API void m1d_points_free(m1d_points* ps);

/* ---- matchings as flat arc arrays -------------------------------------- */
/* A matching is passed as arc_count pairs: arcs[2k] < arcs[2k+1] are the
 * endpoint indices of arc k into the sorted point set. */

M1D_API m1d_status m1d_matching_weight(const m1d_points* ps,
                                       const m1d_cost* cost,
                                       const uint32_t* arcs, size_t arc_count,
                                       double* out);
/* Number of interleaved arc pairs a < c < b < d. */
M1D_API m1d_status m1d_matching_crossings(const uint32_t* arcs,
                                          size_t arc_count, uint64_t* out);
M1D_API m1d_status m1d_matching_is_nested(const uint32_t* arcs,
                                          size_t arc_count, int* out);
/* 1 when every arc joins an even index to an odd index. */
M1D_API m1d_status m1d_matching_parity_ok(const uint32_t* arcs,
                                          size_t arc_count, int* out);
/* For a nested matching, writes hidden_flags[k] = 1 when arc k lies strictly
 * inside another arc and 0 when it is exposed. */
M1D_API m1d_status m1d_matching_classify(const uint32_t* arcs,
                                         size_t arc_count,
                                         uint8_t* hidden_flags);

/* ---- solver ------------------------------------------------------------ */

M1D_API m1d_status m1d_solve(const m1d_points* ps, const m1d_cost* cost,
                             m1d_mode mode, m1d_solution** out);
M1D_API double m1d_solution_weight(const m1d_solution* sol);
M1D_API m1d_mode m1d_solution_mode(const m1d_solution* sol);
M1D_API size_t m1d_solution_arc_count(const m1d_solution* sol);
M1D_API m1d_status m1d_solution_arc(const m1d_solution* sol, size_t index,
                                    uint32_t* i, uint32_t* j);
M1D_API size_t m1d_solution_event_count(const m1d_solution* sol);
M1D_API m1d_status m1d_solution_event(const m1d_solution* sol, size_t index,
                                      uint32_t* i0, uint32_t* j0,
                                      double* inner_weight);
/* Borrowed pointer to the ascending indices removed by event `index`. */
M1D_API m1d_status m1d_solution_event_removed(const m1d_solution* sol,
                                              size_t index,
                                              const uint32_t** removed,
                                              size_t* count);
M1D_API uint64_t m1d_solution_cells(const m1d_solution* sol);
/* Smallest |first - second| over cells with a real decision; infinity when
 * none. Gaps under ~1e-7 flag near-tie instances. */
M1D_API double m1d_solution_min_gap(const m1d_solution* sol);
/* Surviving table cells as "i,j,value,winner" CSV lines (reduced pyramid in
 * reduction mode, every cell in full-table mode). */
M1D_API m1d_status m1d_solution_table_csv(const m1d_solution* sol, char** out);
/* Result document; pass has_seed = 0 to omit the seed field. */
M1D_API m1d_status m1d_solution_json(const m1d_solution* sol,
                                     const m1d_points* ps,
                                     const m1d_cost* cost, int has_seed,
                                     uint64_t seed, char** out);
M1D_API void m1d_solution_free(m1d_solution* sol);

/* ---- full pyramid table ------------------------------------------------ */

M1D_API m1d_status m1d_table_build(const m1d_points* ps, const m1d_cost* cost,
                                   m1d_table** out);
M1D_API size_t m1d_table_cell_count(const m1d_table* table);
/* Cells enumerate rows of increasing span j - i, left to right. */
M1D_API m1d_status m1d_table_cell(const m1d_table* table, size_t index,
                                  uint32_t* i, uint32_t* j, double* value,
                                  m1d_winner* winner);
M1D_API m1d_status m1d_table_lookup(const m1d_table* table, uint32_t i,
                                    uint32_t j, double* value,
                                    m1d_winner* winner);
M1D_API double m1d_table_top(const m1d_table* table);
M1D_API m1d_status m1d_table_csv(const m1d_table* table, char** out);
M1D_API void m1d_table_free(m1d_table* table);

/* ---- reference solvers ------------------------------------------------- */

/* Exhaustive enumeration; M1D_ERR_SIZE beyond 14 points. */
M1D_API m1d_status m1d_brute_force(const m1d_points* ps, const m1d_cost* cost,
                                   m1d_oracle** out);
/* Cubic nested-interval DP. */
M1D_API m1d_status m1d_nested_dp(const m1d_points* ps, const m1d_cost* cost,
                                 m1d_oracle** out);
M1D_API double m1d_oracle_weight(const m1d_oracle* oracle);
M1D_API uint64_t m1d_oracle_explored(const m1d_oracle* oracle);
M1D_API size_t m1d_oracle_arc_count(const m1d_oracle* oracle);
M1D_API m1d_status m1d_oracle_arc(const m1d_oracle* oracle, size_t index,
                                  uint32_t* i, uint32_t* j);
/* Optimal weight of the contiguous block [i, j]; nested-DP handles only. */
M1D_API m1d_status m1d_oracle_interval(const m1d_oracle* oracle, uint32_t i,
                                       uint32_t j, double* out);
M1D_API void m1d_oracle_free(m1d_oracle* oracle);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MATCH1D_H */
