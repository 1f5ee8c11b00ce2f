#pragma once

#include <cstdint>
#include <vector>

#include "core/matching.hpp"

namespace match1d {

struct oracle_result {
  double weight = 0.0;
  matching match;
  std::uint64_t explored = 0;  // matchings enumerated or cells filled
};

// Largest point count brute_force_min_matching accepts; (2n-1)!! explodes
// past this.
inline constexpr std::size_t kBruteForceCap = 14;

// Enumerates every perfect matching by pairing the smallest unmatched index
// with each remaining candidate in ascending order, keeping the first
// minimum encountered. No structural assumptions.
oracle_result brute_force_min_matching(const point_set& ps,
                                       const cost_spec& cost);

// Weights of optimal matchings on contiguous index intervals [i, j],
// defined for i <= j of opposite parity.
class interval_table {
 public:
  explicit interval_table(std::size_t point_count);

  std::size_t point_count() const noexcept { return point_count_; }
  double value(std::uint32_t i, std::uint32_t j) const {
    return value_[index(i, j)];
  }
  void set(std::uint32_t i, std::uint32_t j, double v) {
    value_[index(i, j)] = v;
  }

 private:
  std::size_t index(std::uint32_t i, std::uint32_t j) const {
    const std::size_t r = (j - i - 1) / 2;
    return r * (point_count_ - r) + i;
  }

  std::size_t point_count_;
  std::vector<double> value_;
};

struct nested_dp_result {
  oracle_result result;
  interval_table intervals;
};

// Cubic reference solver over nested matchings only: the leftmost point of
// every interval is matched against each feasible partner,
//   M[i][j] = min over k in {i+1, i+3, ..., j} of
//             d(x_i, x_k) + M[i+1][k-1] + M[k+1][j],
// with empty intervals contributing zero. Ties pick the smallest partner.
nested_dp_result nested_dp(const point_set& ps, const cost_spec& cost);

}  // namespace match1d
