#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "core/matching.hpp"

namespace match1d {

enum class alt_winner : std::uint8_t { first_alt, second_alt, tie };

enum class solve_mode { reduction, full_table };

struct solver_options {
  solve_mode mode = solve_mode::reduction;
};

// Triangular array of partial matching weights, one cell per index pair
// (i, j) with i < j of opposite parity. Cells are keyed by original point
// indices so values survive reductions untouched.
class pyramid_table {
 public:
  explicit pyramid_table(std::size_t point_count);

  std::size_t point_count() const noexcept { return point_count_; }
  // Number of index pairs the table can hold: n * (2n - n) = n^2.
  std::size_t capacity() const noexcept { return value_.size(); }

  bool computed(std::uint32_t i, std::uint32_t j) const {
    return state_[index(i, j)] != 0;
  }
  double value(std::uint32_t i, std::uint32_t j) const {
    return value_[index(i, j)];
  }
  alt_winner winner(std::uint32_t i, std::uint32_t j) const {
    return static_cast<alt_winner>(state_[index(i, j)] - 1);
  }

  void set(std::uint32_t i, std::uint32_t j, double value, alt_winner winner) {
    const std::size_t k = index(i, j);
    value_[k] = value;
    state_[k] = static_cast<std::uint8_t>(winner) + 1;
  }
  void clear(std::uint32_t i, std::uint32_t j) { state_[index(i, j)] = 0; }

  struct cell {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double value = 0.0;
    alt_winner winner = alt_winner::tie;
  };

  // Computed cells, rows of increasing span j - i, left to right.
  std::vector<cell> cells() const;

  // One "i,j,value,winner" line per computed cell in cells() order.
  std::string to_csv() const;

 private:
  std::size_t index(std::uint32_t i, std::uint32_t j) const;

  std::size_t point_count_ = 0;
  std::vector<double> value_;
  std::vector<std::uint8_t> state_;  // 0 = absent, else winner + 1
};

// One reduction: the covering pair (i0, j0) froze the matching of the points
// strictly between them as consecutive pairs and removed them from play.
struct reduction_event {
  std::uint32_t i0 = 0;
  std::uint32_t j0 = 0;
  std::vector<std::uint32_t> removed;  // ascending original indices
  std::vector<arc> recorded_arcs;      // consecutive pairs over removed
  double inner_weight = 0.0;           // sum of recorded arc costs
};

struct solve_stats {
  std::uint64_t cells_computed = 0;
  std::size_t reductions = 0;
  // Smallest |first - second| seen over cells with a real decision (span >=
  // 3). Infinity when no such cell exists. A tiny gap flags near-tie
  // instances whose optimal matching is not unique in any practical sense.
  double min_decision_gap = std::numeric_limits<double>::infinity();
};

struct solve_result {
  matching match;            // perfect matching over original indices
  double total_weight = 0.0; // pyramid top plus recorded inner weights
  std::vector<reduction_event> events;
  solve_stats stats;
  solve_mode mode = solve_mode::reduction;
  pyramid_table table;       // final table: survivors only in reduction mode
  std::vector<std::uint32_t> final_active;
};

// Values the recursion uses below the bottom row, with signed indices:
// j == i - 1 is the empty span (0); j == i - 3 yields -d(x_{i-2}, x_{i-1}).
double boundary_value(const point_set& ps, const cost_spec& cost,
                      std::int64_t i, std::int64_t j);

// Fills every cell bottom-up (rows of increasing span, left to right)
// through the two-alternative recursion
//   W(i,j) = min[ d(x_i,x_j) + W(i+1,j-1),  W(i,j-2) + W(i+2,j) - W(i+2,j-2) ]
// recording which alternative won. No reductions are performed.
pyramid_table solve_full_table(const point_set& ps, const cost_spec& cost);

// Reduction mode (default): scans the pyramid bottom-up and, whenever the
// first alternative attains the minimum on a cell spanning at least two
// interior points (ties included), freezes the interior as consecutive-pair
// arcs, shrinks the active list, and resumes at the smallest incomplete row.
// Full-table mode computes every cell and reconstructs the matching from the
// finished table. Either way the result is checked to be perfect, nested,
// parity-correct and weight-consistent; a violation raises
// error_kind::internal.
solve_result solve_matching(const point_set& ps, const cost_spec& cost,
                            const solver_options& opts = {});

// Union of all recorded arcs plus consecutive pairs of the surviving active
// list. The removed sets and final_active must partition 0..point_count-1.
matching assemble_matching(const std::vector<reduction_event>& events,
                           const std::vector<std::uint32_t>& final_active,
                           std::size_t point_count);

}  // namespace match1d
