#define MATCH1D_BUILD
#include "match1d.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "core/cost.hpp"
#include "core/io.hpp"
#include "core/matching.hpp"
#include "core/oracles.hpp"
#include "core/solver.hpp"

struct m1d_cost {
  match1d::cost_spec spec;
};
struct m1d_points {
  match1d::point_set ps;
};
struct m1d_solution {
  match1d::solve_result result;
};
struct m1d_table {
  match1d::pyramid_table table;
  std::vector<match1d::pyramid_table::cell> cells;
};
struct m1d_oracle {
  match1d::oracle_result result;
  std::optional<match1d::interval_table> intervals;
};
struct m1d_validation {
  match1d::validation_report report;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

m1d_status map_kind(match1d::error_kind kind) {
  switch (kind) {
    case match1d::error_kind::argument: return M1D_ERR_ARGUMENT;
    case match1d::error_kind::parse: return M1D_ERR_PARSE;
    case match1d::error_kind::input: return M1D_ERR_INPUT;
    case match1d::error_kind::validation: return M1D_ERR_VALIDATION;
    case match1d::error_kind::size: return M1D_ERR_SIZE;
    case match1d::error_kind::internal: return M1D_ERR_INTERNAL;
    case match1d::error_kind::io: return M1D_ERR_IO;
  }
  return M1D_ERR_INTERNAL;
}

template <typename F>
m1d_status guarded(F&& body) noexcept {
  try {
    return body();
  } catch (const match1d::error& e) {
    set_error(e.what());
    return map_kind(e.kind());
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return M1D_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return M1D_ERR_INTERNAL;
  }
}

m1d_status argument_error(const char* message) {
  set_error(message);
  return M1D_ERR_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

match1d::matching matching_from_flat(const uint32_t* arcs, size_t arc_count) {
  std::vector<match1d::arc> list;
  list.reserve(arc_count);
  for (size_t k = 0; k < arc_count; ++k) {
    list.emplace_back(arcs[2 * k], arcs[2 * k + 1]);
  }
  return match1d::matching(std::move(list));
}

}  // namespace

extern "C" {

const char* m1d_version(void) { return "0.1.0"; }

const char* m1d_status_name(m1d_status status) {
  switch (status) {
    case M1D_OK: return "ok";
    case M1D_ERR_ARGUMENT: return "argument";
    case M1D_ERR_PARSE: return "parse";
    case M1D_ERR_INPUT: return "input";
    case M1D_ERR_VALIDATION: return "validation";
    case M1D_ERR_SIZE: return "size";
    case M1D_ERR_INTERNAL: return "internal";
    case M1D_ERR_IO: return "io";
  }
  return "unknown";
}

const char* m1d_last_error(void) { return g_last_error.c_str(); }

void m1d_string_free(char* s) { delete[] s; }

/* ---- cost functions ---- */

m1d_status m1d_cost_power(double alpha, m1d_cost** out) {
  if (!out) return argument_error("null output pointer");
  return guarded([&] {
    *out = new m1d_cost{match1d::cost_spec::power(alpha)};
    return M1D_OK;
  });
}

m1d_status m1d_cost_log1p(double scale, m1d_cost** out) {
  if (!out) return argument_error("null output pointer");
  return guarded([&] {
    *out = new m1d_cost{match1d::cost_spec::log1p_cost(scale)};
    return M1D_OK;
  });
}

m1d_status m1d_cost_piecewise(const double* t, const double* v, size_t count,
                              m1d_cost** out) {
  if (!out || !t || !v) return argument_error("null pointer argument");
  return guarded([&] {
    std::vector<match1d::breakpoint> pts(count);
    for (size_t k = 0; k < count; ++k) pts[k] = {t[k], v[k]};
    *out = new m1d_cost{match1d::cost_spec::piecewise(std::move(pts))};
    return M1D_OK;
  });
}

m1d_status m1d_cost_parse(const char* text, m1d_cost** out) {
  if (!out || !text) return argument_error("null pointer argument");
  return guarded([&] {
    *out = new m1d_cost{match1d::cost_spec::parse(text)};
    return M1D_OK;
  });
}

m1d_status m1d_cost_text(const m1d_cost* cost, char** out) {
  if (!cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = copy_string(cost->spec.text());
    return M1D_OK;
  });
}

m1d_status m1d_cost_eval(const m1d_cost* cost, double x, double y,
                         double* out) {
  if (!cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = cost->spec.eval(x, y);
    return M1D_OK;
  });
}

m1d_status m1d_cost_validate(const m1d_cost* cost, int probe_count,
                             double t_max, m1d_validation** out) {
  if (!cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = new m1d_validation{cost->spec.validate(probe_count, t_max)};
    return M1D_OK;
  });
}

void m1d_cost_free(m1d_cost* cost) { delete cost; }

int m1d_validation_ok(const m1d_validation* report) {
  return report && report->report.valid ? 1 : 0;
}

int m1d_validation_strict(const m1d_validation* report) {
  return report && report->report.strict_concavity ? 1 : 0;
}

size_t m1d_validation_violations(const m1d_validation* report) {
  return report ? report->report.violations.size() : 0;
}

m1d_status m1d_validation_violation(const m1d_validation* report, size_t index,
                                    double* t1, double* t2, double* lambda,
                                    double* lhs, double* rhs) {
  if (!report) return argument_error("null report");
  if (index >= report->report.violations.size()) {
    return argument_error("violation index out of range");
  }
  const match1d::violation& v = report->report.violations[index];
  if (t1) *t1 = v.t1;
  if (t2) *t2 = v.t2;
  if (lambda) *lambda = v.lambda;
  if (lhs) *lhs = v.lhs;
  if (rhs) *rhs = v.rhs;
  return M1D_OK;
}

m1d_status m1d_validation_summary(const m1d_validation* report, char** out) {
  if (!report || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = copy_string(report->report.summary());
    return M1D_OK;
  });
}

void m1d_validation_free(m1d_validation* report) { delete report; }

/* ---- point sets ---- */

m1d_status m1d_points_create(const double* xs, size_t count,
                             m1d_points** out) {
  if (!out || !xs) return argument_error("null pointer argument");
  return guarded([&] {
    *out = new m1d_points{
        match1d::point_set(std::vector<double>(xs, xs + count))};
    return M1D_OK;
  });
}

m1d_status m1d_points_parse(const char* text, m1d_points** out) {
  if (!out || !text) return argument_error("null pointer argument");
  return guarded([&] {
    *out = new m1d_points{match1d::parse_points(text)};
    return M1D_OK;
  });
}

m1d_status m1d_points_read_file(const char* path, m1d_points** out) {
  if (!out || !path) return argument_error("null pointer argument");
  return guarded([&] {
    *out = new m1d_points{match1d::read_points_file(path)};
    return M1D_OK;
  });
}

void m1d_gen_spec_init(m1d_gen_spec* spec) {
  if (!spec) return;
  spec->size = 0;
  spec->distribution = M1D_DIST_UNIFORM;
  spec->cluster_count = 1;
  spec->seed = 0;
  spec->span = 100.0;
}

m1d_status m1d_points_generate(const m1d_gen_spec* spec, m1d_points** out) {
  if (!out || !spec) return argument_error("null pointer argument");
  return guarded([&] {
    match1d::instance_spec core;
    core.size = spec->size;
    core.distribution = spec->distribution == M1D_DIST_CLUSTERED
                            ? match1d::point_distribution::clustered
                            : match1d::point_distribution::uniform;
    core.cluster_count = spec->cluster_count;
    core.seed = spec->seed;
    core.span = spec->span;
    *out = new m1d_points{match1d::gen_instance(core)};
    return M1D_OK;
  });
}

size_t m1d_points_count(const m1d_points* ps) {
  return ps ? ps->ps.size() : 0;
}

const double* m1d_points_data(const m1d_points* ps) {
  return ps ? ps->ps.coords().data() : nullptr;
}

size_t m1d_points_permutation(const m1d_points* ps, uint32_t* buf,
                              size_t cap) {
  if (!ps) return 0;
  const auto& perm = ps->ps.input_permutation();
  if (buf) {
    const size_t n = perm.size() < cap ? perm.size() : cap;
    for (size_t k = 0; k < n; ++k) buf[k] = perm[k];
  }
  return perm.size();
}

m1d_status m1d_points_text(const m1d_points* ps, char** out) {
  if (!ps || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = copy_string(match1d::points_to_text(ps->ps));
    return M1D_OK;
  });
}

void m1d_points_free(m1d_points* ps) { delete ps; }

/* ---- matchings as flat arc arrays ---- */

m1d_status m1d_matching_weight(const m1d_points* ps, const m1d_cost* cost,
                               const uint32_t* arcs, size_t arc_count,
                               double* out) {
  if (!ps || !cost || !out || (!arcs && arc_count > 0)) {
    return argument_error("null pointer argument");
  }
  return guarded([&] {
    *out = match1d::matching_weight(ps->ps, cost->spec,
                                    matching_from_flat(arcs, arc_count));
    return M1D_OK;
  });
}

m1d_status m1d_matching_crossings(const uint32_t* arcs, size_t arc_count,
                                  uint64_t* out) {
  if (!out || (!arcs && arc_count > 0)) {
    return argument_error("null pointer argument");
  }
  return guarded([&] {
    *out = match1d::count_crossings(matching_from_flat(arcs, arc_count));
    return M1D_OK;
  });
}

m1d_status m1d_matching_is_nested(const uint32_t* arcs, size_t arc_count,
                                  int* out) {
  if (!out || (!arcs && arc_count > 0)) {
    return argument_error("null pointer argument");
  }
  return guarded([&] {
    *out = match1d::is_nested(matching_from_flat(arcs, arc_count)) ? 1 : 0;
    return M1D_OK;
  });
}

m1d_status m1d_matching_parity_ok(const uint32_t* arcs, size_t arc_count,
                                  int* out) {
  if (!out || (!arcs && arc_count > 0)) {
    return argument_error("null pointer argument");
  }
  return guarded([&] {
    *out = match1d::check_parity(matching_from_flat(arcs, arc_count)) ? 1 : 0;
    return M1D_OK;
  });
}

m1d_status m1d_matching_classify(const uint32_t* arcs, size_t arc_count,
                                 uint8_t* hidden_flags) {
  if (!hidden_flags || (!arcs && arc_count > 0)) {
    return argument_error("null pointer argument");
  }
  return guarded([&] {
    const match1d::matching m = matching_from_flat(arcs, arc_count);
    const match1d::arc_classification split = match1d::classify_arcs(m);
    for (size_t k = 0; k < arc_count; ++k) {
      const match1d::arc a(arcs[2 * k], arcs[2 * k + 1]);
      hidden_flags[k] = 0;
      for (const match1d::arc& h : split.hidden) {
        if (h == a) {
          hidden_flags[k] = 1;
          break;
        }
      }
    }
    return M1D_OK;
  });
}

/* ---- solver ---- */

m1d_status m1d_solve(const m1d_points* ps, const m1d_cost* cost,
                     m1d_mode mode, m1d_solution** out) {
  if (!ps || !cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    match1d::solver_options opts;
    opts.mode = mode == M1D_MODE_FULL_TABLE ? match1d::solve_mode::full_table
                                            : match1d::solve_mode::reduction;
    *out = new m1d_solution{match1d::solve_matching(ps->ps, cost->spec, opts)};
    return M1D_OK;
  });
}

double m1d_solution_weight(const m1d_solution* sol) {
  return sol ? sol->result.total_weight : 0.0;
}

m1d_mode m1d_solution_mode(const m1d_solution* sol) {
  return sol && sol->result.mode == match1d::solve_mode::full_table
             ? M1D_MODE_FULL_TABLE
             : M1D_MODE_REDUCTION;
}

size_t m1d_solution_arc_count(const m1d_solution* sol) {
  return sol ? sol->result.match.size() : 0;
}

m1d_status m1d_solution_arc(const m1d_solution* sol, size_t index, uint32_t* i,
                            uint32_t* j) {
  if (!sol) return argument_error("null solution");
  if (index >= sol->result.match.size()) {
    return argument_error("arc index out of range");
  }
  const match1d::arc& a = sol->result.match.arcs()[index];
  if (i) *i = a.i;
  if (j) *j = a.j;
  return M1D_OK;
}

size_t m1d_solution_event_count(const m1d_solution* sol) {
  return sol ? sol->result.events.size() : 0;
}

m1d_status m1d_solution_event(const m1d_solution* sol, size_t index,
                              uint32_t* i0, uint32_t* j0,
                              double* inner_weight) {
  if (!sol) return argument_error("null solution");
  if (index >= sol->result.events.size()) {
    return argument_error("event index out of range");
  }
  const match1d::reduction_event& ev = sol->result.events[index];
  if (i0) *i0 = ev.i0;
  if (j0) *j0 = ev.j0;
  if (inner_weight) *inner_weight = ev.inner_weight;
  return M1D_OK;
}

m1d_status m1d_solution_event_removed(const m1d_solution* sol, size_t index,
                                      const uint32_t** removed,
                                      size_t* count) {
  if (!sol || !removed || !count) return argument_error("null pointer argument");
  if (index >= sol->result.events.size()) {
    return argument_error("event index out of range");
  }
  const match1d::reduction_event& ev = sol->result.events[index];
  *removed = ev.removed.data();
  *count = ev.removed.size();
  return M1D_OK;
}

uint64_t m1d_solution_cells(const m1d_solution* sol) {
  return sol ? sol->result.stats.cells_computed : 0;
}

double m1d_solution_min_gap(const m1d_solution* sol) {
  return sol ? sol->result.stats.min_decision_gap : 0.0;
}

m1d_status m1d_solution_table_csv(const m1d_solution* sol, char** out) {
  if (!sol || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = copy_string(sol->result.table.to_csv());
    return M1D_OK;
  });
}

m1d_status m1d_solution_json(const m1d_solution* sol, const m1d_points* ps,
                             const m1d_cost* cost, int has_seed, uint64_t seed,
                             char** out) {
  if (!sol || !ps || !cost || !out) {
    return argument_error("null pointer argument");
  }
  return guarded([&] {
    std::optional<uint64_t> s;
    if (has_seed) s = seed;
    *out = copy_string(
        match1d::result_to_json(sol->result, ps->ps, cost->spec, s));
    return M1D_OK;
  });
}

void m1d_solution_free(m1d_solution* sol) { delete sol; }

/* ---- full pyramid table ---- */

m1d_status m1d_table_build(const m1d_points* ps, const m1d_cost* cost,
                           m1d_table** out) {
  if (!ps || !cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    auto table = match1d::solve_full_table(ps->ps, cost->spec);
    auto cells = table.cells();
    *out = new m1d_table{std::move(table), std::move(cells)};
    return M1D_OK;
  });
}

size_t m1d_table_cell_count(const m1d_table* table) {
  return table ? table->cells.size() : 0;
}

m1d_status m1d_table_cell(const m1d_table* table, size_t index, uint32_t* i,
                          uint32_t* j, double* value, m1d_winner* winner) {
  if (!table) return argument_error("null table");
  if (index >= table->cells.size()) {
    return argument_error("cell index out of range");
  }
  const auto& c = table->cells[index];
  if (i) *i = c.i;
  if (j) *j = c.j;
  if (value) *value = c.value;
  if (winner) *winner = static_cast<m1d_winner>(c.winner);
  return M1D_OK;
}

m1d_status m1d_table_lookup(const m1d_table* table, uint32_t i, uint32_t j,
                            double* value, m1d_winner* winner) {
  if (!table) return argument_error("null table");
  return guarded([&] {
    if (!(i < j) || j >= table->table.point_count() || (j - i) % 2 == 0) {
      return argument_error("not a table pair: indices must satisfy i < j "
                            "with opposite parity");
    }
    if (value) *value = table->table.value(i, j);
    if (winner) {
      *winner = static_cast<m1d_winner>(table->table.winner(i, j));
    }
    return M1D_OK;
  });
}

double m1d_table_top(const m1d_table* table) {
  if (!table) return 0.0;
  const auto count = static_cast<uint32_t>(table->table.point_count());
  return table->table.value(0, count - 1);
}

m1d_status m1d_table_csv(const m1d_table* table, char** out) {
  if (!table || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = copy_string(table->table.to_csv());
    return M1D_OK;
  });
}

void m1d_table_free(m1d_table* table) { delete table; }

/* ---- reference solvers ---- */

m1d_status m1d_brute_force(const m1d_points* ps, const m1d_cost* cost,
                           m1d_oracle** out) {
  if (!ps || !cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    *out = new m1d_oracle{
        match1d::brute_force_min_matching(ps->ps, cost->spec), std::nullopt};
    return M1D_OK;
  });
}

m1d_status m1d_nested_dp(const m1d_points* ps, const m1d_cost* cost,
                         m1d_oracle** out) {
  if (!ps || !cost || !out) return argument_error("null pointer argument");
  return guarded([&] {
    auto dp = match1d::nested_dp(ps->ps, cost->spec);
    *out = new m1d_oracle{std::move(dp.result), std::move(dp.intervals)};
    return M1D_OK;
  });
}

double m1d_oracle_weight(const m1d_oracle* oracle) {
  return oracle ? oracle->result.weight : 0.0;
}

uint64_t m1d_oracle_explored(const m1d_oracle* oracle) {
  return oracle ? oracle->result.explored : 0;
}

size_t m1d_oracle_arc_count(const m1d_oracle* oracle) {
  return oracle ? oracle->result.match.size() : 0;
}

m1d_status m1d_oracle_arc(const m1d_oracle* oracle, size_t index, uint32_t* i,
                          uint32_t* j) {
  if (!oracle) return argument_error("null oracle");
  if (index >= oracle->result.match.size()) {
    return argument_error("arc index out of range");
  }
  const match1d::arc& a = oracle->result.match.arcs()[index];
  if (i) *i = a.i;
  if (j) *j = a.j;
  return M1D_OK;
}

m1d_status m1d_oracle_interval(const m1d_oracle* oracle, uint32_t i,
                               uint32_t j, double* out) {
  if (!oracle || !out) return argument_error("null pointer argument");
  if (!oracle->intervals) {
    return argument_error("interval weights exist only for the nested DP");
  }
  return guarded([&] {
    if (!(i < j) || j >= oracle->intervals->point_count() ||
        (j - i) % 2 == 0) {
      return argument_error("not an interval pair: indices must satisfy "
                            "i < j with opposite parity");
    }
    *out = oracle->intervals->value(i, j);
    return M1D_OK;
  });
}

void m1d_oracle_free(m1d_oracle* oracle) { delete oracle; }

} /* extern "C" */
