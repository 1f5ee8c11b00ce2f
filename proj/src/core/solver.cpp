#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "core/text.hpp"

namespace match1d {

namespace {

constexpr double kWeightTolerance = 1e-9;

bool weights_agree(double a, double b) {
  const double tol = std::max(1e-12, kWeightTolerance * std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) <= tol;
}

const char* winner_name(alt_winner w) {
  switch (w) {
    case alt_winner::first_alt: return "first";
    case alt_winner::second_alt: return "second";
    case alt_winner::tie: return "tie";
  }
  return "?";
}

}  // namespace

pyramid_table::pyramid_table(std::size_t point_count)
    : point_count_(point_count) {
  const std::size_t n = point_count / 2;
  value_.assign(n * (point_count - n), 0.0);
  state_.assign(value_.size(), 0);
}

std::size_t pyramid_table::index(std::uint32_t i, std::uint32_t j) const {
  // Row r holds pairs with span j - i == 2r + 1; row r starts at r(2n - r).
  const std::size_t r = (j - i - 1) / 2;
  return r * (point_count_ - r) + i;
}

std::vector<pyramid_table::cell> pyramid_table::cells() const {
  std::vector<cell> out;
  for (std::size_t s = 1; s < point_count_; s += 2) {
    for (std::uint32_t i = 0; i + s < point_count_; ++i) {
      const std::uint32_t j = i + static_cast<std::uint32_t>(s);
      if (computed(i, j)) {
        out.push_back({i, j, value(i, j), winner(i, j)});
      }
    }
  }
  return out;
}

std::string pyramid_table::to_csv() const {
  std::string out;
  for (const cell& c : cells()) {
    out += std::to_string(c.i);
    out += ',';
    out += std::to_string(c.j);
    out += ',';
    out += format_double(c.value);
    out += ',';
    out += winner_name(c.winner);
    out += '\n';
  }
  return out;
}

double boundary_value(const point_set& ps, const cost_spec& cost,
                      std::int64_t i, std::int64_t j) {
  if (j == i - 1) {
    return 0.0;
  }
  if (j == i - 3) {
    if (i - 2 < 0 || i - 1 >= static_cast<std::int64_t>(ps.size())) {
      fail(error_kind::argument, "boundary pair out of range");
    }
    return -cost.eval(ps[static_cast<std::size_t>(i - 2)],
                      ps[static_cast<std::size_t>(i - 1)]);
  }
  fail(error_kind::argument,
       "(" + std::to_string(i) + ", " + std::to_string(j) +
           ") is not a boundary pair (expected j == i - 1 or j == i - 3)");
}

namespace {

// Recursion over one row cell given lookups by active position. The span-1
// case reduces to a tie at d(x_i, x_j) through the boundary values, which is
// exercised here rather than special-cased.
struct cell_eval {
  double first = 0.0;
  double second = 0.0;
  double value = 0.0;
  alt_winner winner = alt_winner::tie;
};

template <typename Lookup, typename Dist>
cell_eval evaluate_cell(std::size_t p, std::size_t q, Lookup&& at, Dist&& dist) {
  cell_eval out;
  out.first = dist(p, q) + at(p + 1, q - 1);
  out.second = at(p, q - 2) + at(p + 2, q) - at(p + 2, q - 2);
  if (out.first < out.second) {
    out.value = out.first;
    out.winner = alt_winner::first_alt;
  } else if (out.second < out.first) {
    out.value = out.second;
    out.winner = alt_winner::second_alt;
  } else {
    out.value = out.first;
    out.winner = alt_winner::tie;
  }
  return out;
}

matching reconstruct_from_table(const point_set& ps, const cost_spec& cost,
                                const pyramid_table& table) {
  // The finished table holds optimal sub-interval weights, so the partner of
  // the leftmost point of any interval is an argmin over the usual interval
  // split. Ties resolve to the smallest partner.
  std::vector<arc> arcs;
  auto value_or_zero = [&](std::uint32_t a, std::uint32_t b) {
    return b < a ? 0.0 : table.value(a, b);
  };
  struct span { std::uint32_t i, j; };
  std::vector<span> work{{0, static_cast<std::uint32_t>(ps.size() - 1)}};
  while (!work.empty()) {
    const span s = work.back();
    work.pop_back();
    if (s.j <= s.i) continue;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_k = s.i + 1;
    for (std::uint32_t k = s.i + 1; k <= s.j; k += 2) {
      const double v = cost.eval(ps[s.i], ps[k]) +
                       value_or_zero(s.i + 1, k - 1) + value_or_zero(k + 1, s.j);
      if (v < best) {
        best = v;
        best_k = k;
      }
    }
    arcs.emplace_back(s.i, best_k);
    if (best_k + 1 <= s.j) work.push_back({best_k + 1, s.j});
    if (s.i + 1 <= best_k - 1) work.push_back({s.i + 1, best_k - 1});
  }
  return matching(std::move(arcs));
}

void check_result_invariants(const point_set& ps, const cost_spec& cost,
                             solve_result& result) {
  const double rebuilt = matching_weight(ps, cost, result.match);
  if (!weights_agree(rebuilt, result.total_weight)) {
    fail(error_kind::internal,
         "solver bookkeeping mismatch: table accounting gives " +
             format_double(result.total_weight) + " but the matching weighs " +
             format_double(rebuilt));
  }
  if (!is_perfect(result.match, ps)) {
    fail(error_kind::internal, "solver produced a non-perfect matching");
  }
  if (!is_nested(result.match)) {
    fail(error_kind::internal, "solver produced a crossing matching");
  }
  if (!check_parity(result.match)) {
    fail(error_kind::internal, "solver matched indices of equal parity");
  }
}

}  // namespace

pyramid_table solve_full_table(const point_set& ps, const cost_spec& cost) {
  const std::size_t count = ps.size();
  pyramid_table table(count);
  auto dist = [&](std::size_t a, std::size_t b) {
    return cost.eval(ps[a], ps[b]);
  };
  auto at = [&](std::size_t a, std::size_t b) -> double {
    if (b + 1 == a) return 0.0;
    if (b + 3 == a) return -dist(a - 2, a - 1);
    return table.value(static_cast<std::uint32_t>(a),
                       static_cast<std::uint32_t>(b));
  };
  for (std::size_t s = 1; s < count; s += 2) {
    for (std::size_t p = 0; p + s < count; ++p) {
      const cell_eval c = evaluate_cell(p, p + s, at, dist);
      table.set(static_cast<std::uint32_t>(p),
                static_cast<std::uint32_t>(p + s), c.value, c.winner);
    }
  }
  return table;
}

namespace {

solve_result solve_by_reduction(const point_set& ps, const cost_spec& cost) {
  const std::size_t count = ps.size();
  solve_result result{.match = {},
                      .total_weight = 0.0,
                      .events = {},
                      .stats = {},
                      .mode = solve_mode::reduction,
                      .table = pyramid_table(count),
                      .final_active = {}};
  pyramid_table& table = result.table;

  std::vector<std::uint32_t> active(count);
  std::iota(active.begin(), active.end(), 0u);
  std::vector<bool> removed(count, false);
  // next_pos[s]: every row-s cell left of this active position is computed.
  std::vector<std::size_t> next_pos(count, 0);

  auto dist = [&](std::uint32_t a, std::uint32_t b) {
    return cost.eval(ps[a], ps[b]);
  };
  auto at = [&](std::size_t a, std::size_t b) -> double {
    if (b + 1 == a) return 0.0;
    if (b + 3 == a) return -dist(active[a - 2], active[a - 1]);
    return table.value(active[a], active[b]);
  };
  auto cell_dist = [&](std::size_t p, std::size_t q) {
    return dist(active[p], active[q]);
  };

  std::size_t s = 1;
  while (s < active.size()) {
    const std::size_t p = next_pos[s];
    if (p + s >= active.size()) {
      s += 2;
      continue;
    }
    const std::uint32_t i = active[p];
    const std::uint32_t j = active[p + s];
    if (table.computed(i, j)) {
      next_pos[s] = p + 1;
      continue;
    }
    const cell_eval c = evaluate_cell(p, p + s, at, cell_dist);
    table.set(i, j, c.value, c.winner);
    ++result.stats.cells_computed;
    if (s >= 3) {
      result.stats.min_decision_gap =
          std::min(result.stats.min_decision_gap, std::abs(c.first - c.second));
      if (c.first <= c.second) {
        // Reduction: freeze the interior of (i, j) as consecutive pairs,
        // drop those points from the active list, and put d(x_i, x_j) in the
        // new bottom row. Cells touching a removed point are discarded (the
        // scan never looks them up again; the table is purged at the end).
        const std::size_t q = p + s;
        reduction_event ev;
        ev.i0 = i;
        ev.j0 = j;
        ev.removed.assign(active.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                          active.begin() + static_cast<std::ptrdiff_t>(q));
        for (std::size_t t = 0; t + 1 < ev.removed.size(); t += 2) {
          const arc a(ev.removed[t], ev.removed[t + 1]);
          ev.recorded_arcs.push_back(a);
          ev.inner_weight += dist(a.i, a.j);
        }
        for (std::uint32_t r : ev.removed) removed[r] = true;
        table.set(i, j, dist(i, j), alt_winner::tie);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                     active.begin() + static_cast<std::ptrdiff_t>(q));
        const std::size_t gone = ev.removed.size();
        // Pull every row cursor back to the first position whose cell can
        // span the collapsed junction; positions right of it shift down.
        for (std::size_t sp = 1; sp < next_pos.size(); sp += 2) {
          const std::size_t old = next_pos[sp];
          const std::size_t shifted = old <= p ? old : std::max(p, old - gone);
          const std::size_t junction = p + 1 > sp ? p + 1 - sp : 0;
          next_pos[sp] = std::min(shifted, junction);
        }
        result.events.push_back(std::move(ev));
        s = 1;  // resume at the smallest incomplete row
        continue;
      }
    }
    next_pos[s] = p + 1;
  }

  const double top = table.value(active.front(), active.back());
  result.total_weight = top;
  for (const reduction_event& ev : result.events) {
    result.total_weight += ev.inner_weight;
  }
  result.stats.reductions = result.events.size();
  result.final_active = active;
  result.match = assemble_matching(result.events, active, count);

  // Purge discarded cells so the surviving table matches the reduced
  // pyramid exactly.
  if (!result.events.empty()) {
    for (std::size_t span = 1; span < count; span += 2) {
      for (std::uint32_t a = 0; a + span < count; ++a) {
        const std::uint32_t b = a + static_cast<std::uint32_t>(span);
        if (table.computed(a, b) && (removed[a] || removed[b])) {
          table.clear(a, b);
        }
      }
    }
  }
  return result;
}

}  // namespace

solve_result solve_matching(const point_set& ps, const cost_spec& cost,
                            const solver_options& opts) {
  if (opts.mode == solve_mode::reduction) {
    solve_result result = solve_by_reduction(ps, cost);
    check_result_invariants(ps, cost, result);
    return result;
  }

  // Full-table mode: compute every cell, then read the matching back out of
  // the finished table.
  solve_result result{.match = {},
                      .total_weight = 0.0,
                      .events = {},
                      .stats = {},
                      .mode = solve_mode::full_table,
                      .table = solve_full_table(ps, cost),
                      .final_active = {}};
  result.stats.cells_computed = result.table.capacity();
  const std::size_t count = ps.size();
  result.total_weight =
      result.table.value(0, static_cast<std::uint32_t>(count - 1));
  // Both alternatives of every decision cell are recomputable from the
  // finished table, which yields the same gap the scan would have seen.
  auto at = [&](std::size_t a, std::size_t b) -> double {
    if (b + 1 == a) return 0.0;
    if (b + 3 == a) return -cost.eval(ps[a - 2], ps[a - 1]);
    return result.table.value(static_cast<std::uint32_t>(a),
                              static_cast<std::uint32_t>(b));
  };
  for (std::size_t s = 3; s < count; s += 2) {
    for (std::size_t p = 0; p + s < count; ++p) {
      const double first = cost.eval(ps[p], ps[p + s]) + at(p + 1, p + s - 1);
      const double second = at(p, p + s - 2) + at(p + 2, p + s) - at(p + 2, p + s - 2);
      result.stats.min_decision_gap =
          std::min(result.stats.min_decision_gap, std::abs(first - second));
    }
  }
  result.match = reconstruct_from_table(ps, cost, result.table);
  check_result_invariants(ps, cost, result);
  return result;
}

matching assemble_matching(const std::vector<reduction_event>& events,
                           const std::vector<std::uint32_t>& final_active,
                           std::size_t point_count) {
  if (final_active.size() % 2 != 0) {
    fail(error_kind::internal, "odd number of surviving active points");
  }
  std::vector<std::uint8_t> covered(point_count, 0);
  auto mark = [&](std::uint32_t idx) {
    if (idx >= point_count || covered[idx]) {
      fail(error_kind::internal,
           "removed points and survivors do not partition the point set");
    }
    covered[idx] = 1;
  };
  std::vector<arc> arcs;
  for (const reduction_event& ev : events) {
    for (std::uint32_t r : ev.removed) mark(r);
    arcs.insert(arcs.end(), ev.recorded_arcs.begin(), ev.recorded_arcs.end());
  }
  for (std::uint32_t a : final_active) mark(a);
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    fail(error_kind::internal,
         "removed points and survivors do not partition the point set");
  }
  for (std::size_t t = 0; t + 1 < final_active.size(); t += 2) {
    arcs.emplace_back(final_active[t], final_active[t + 1]);
  }
  return matching(std::move(arcs));
}

}  // namespace match1d
