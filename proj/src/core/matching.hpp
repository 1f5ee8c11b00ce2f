#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "core/cost.hpp"
#include "core/errors.hpp"

namespace match1d {

// Strictly increasing finite coordinates, even nonzero count.
class point_set {
 public:
  // Sorts the values, rejects odd counts, duplicates and non-finite entries.
  // When the input was not already sorted, the permutation from sorted
  // position back to input position is recorded for echoing.
  explicit point_set(std::vector<double> values);

  std::size_t size() const noexcept { return coords_.size(); }
  std::size_t pair_count() const noexcept { return coords_.size() / 2; }
  double operator[](std::size_t k) const { return coords_[k]; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  // Empty when the input order was already sorted; otherwise
  // input_permutation()[k] is the input position of coords()[k].
  const std::vector<std::uint32_t>& input_permutation() const noexcept {
    return permutation_;
  }

 private:
  std::vector<double> coords_;
  std::vector<std::uint32_t> permutation_;
};

// Index pair i < j into a sorted point set.
struct arc {
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  arc() = default;
  arc(std::uint32_t a, std::uint32_t b) : i(a), j(b) {
    if (a == b) fail(error_kind::argument, "arc endpoints must differ");
    if (a > b) std::swap(i, j);
  }

  friend auto operator<=>(const arc&, const arc&) = default;
};

// Set of vertex-disjoint arcs, stored canonically in ascending (i, j) order.
class matching {
 public:
  matching() = default;
  explicit matching(std::vector<arc> arcs);

  const std::vector<arc>& arcs() const noexcept { return arcs_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  bool contains(const arc& a) const;

 private:
  std::vector<arc> arcs_;
};

struct arc_classification {
  std::vector<arc> exposed;  // contained in no other arc
  std::vector<arc> hidden;   // strictly inside some other arc
};

// Sum of edge costs in ascending (i, j) order (deterministic for
// bit-reproducible totals). Indices are checked against ps.
double matching_weight(const point_set& ps, const cost_spec& cost,
                       const matching& m);

// True iff every index 0..2n-1 is covered exactly once.
bool is_perfect(const matching& m, const point_set& ps);

// Number of interleaved arc pairs {(a,b),(c,d)} with a < c < b < d.
std::uint64_t count_crossings(const matching& m);

// Zero crossings: any two arcs are disjoint or nested.
bool is_nested(const matching& m);

// Every arc joins an even index to an odd index.
bool check_parity(const matching& m);

// Replaces a crossing pair a=(p,r), b=(q,s) with p<q<r<s by the nested pair
// (p,s),(q,r). Requires both arcs present and genuinely crossing.
matching uncross(const matching& m, const arc& a, const arc& b);

// Splits a nested matching into exposed and hidden arcs. Requires
// is_nested(m).
arc_classification classify_arcs(const matching& m);

// {(0,1), (2,3), ..., (2n-2, 2n-1)}.
matching consecutive_pairs_matching(const point_set& ps);

}  // namespace match1d
