#include "core/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/text.hpp"

namespace match1d {

point_set::point_set(std::vector<double> values) : coords_(std::move(values)) {
  if (coords_.empty()) {
    fail(error_kind::input, "point set is empty");
  }
  if (coords_.size() % 2 != 0) {
    fail(error_kind::input, "point set has odd size " +
                                std::to_string(coords_.size()));
  }
  for (double v : coords_) {
    if (!std::isfinite(v)) {
      fail(error_kind::input, "point set contains a non-finite value");
    }
  }
  if (!std::is_sorted(coords_.begin(), coords_.end())) {
    std::vector<std::uint32_t> order(coords_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return coords_[a] < coords_[b];
    });
    std::vector<double> sorted(coords_.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      sorted[k] = coords_[order[k]];
    }
    coords_ = std::move(sorted);
    permutation_ = std::move(order);
  }
  for (std::size_t k = 1; k < coords_.size(); ++k) {
    if (coords_[k] == coords_[k - 1]) {
      fail(error_kind::input,
           "duplicate coordinate " + format_double(coords_[k]));
    }
  }
}

matching::matching(std::vector<arc> arcs) : arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end());
  std::vector<std::uint32_t> ends;
  ends.reserve(arcs_.size() * 2);
  for (const arc& a : arcs_) {
    ends.push_back(a.i);
    ends.push_back(a.j);
  }
  std::sort(ends.begin(), ends.end());
  if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) {
    fail(error_kind::input, "arcs share a vertex");
  }
}

bool matching::contains(const arc& a) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), a);
}

double matching_weight(const point_set& ps, const cost_spec& cost,
                       const matching& m) {
  double total = 0.0;
  for (const arc& a : m.arcs()) {
    if (a.j >= ps.size()) {
      fail(error_kind::input, "arc index " + std::to_string(a.j) +
                                  " out of range for " +
                                  std::to_string(ps.size()) + " points");
    }
    total += cost.eval(ps[a.i], ps[a.j]);
  }
  return total;
}

bool is_perfect(const matching& m, const point_set& ps) {
  if (m.size() * 2 != ps.size()) return false;
  std::vector<bool> seen(ps.size(), false);
  for (const arc& a : m.arcs()) {
    if (a.j >= ps.size() || seen[a.i] || seen[a.j]) return false;
    seen[a.i] = seen[a.j] = true;
  }
  return true;
}

std::uint64_t count_crossings(const matching& m) {
  const auto& arcs = m.arcs();
  std::uint64_t crossings = 0;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t b = a + 1; b < arcs.size(); ++b) {
      // arcs are (i,j)-sorted, so arcs[a].i < arcs[b].i.
      if (arcs[b].i < arcs[a].j && arcs[a].j < arcs[b].j) {
        ++crossings;
      }
    }
  }
  return crossings;
}

bool is_nested(const matching& m) {
  std::vector<std::uint32_t> open;
  for (const arc& a : m.arcs()) {
    while (!open.empty() && open.back() < a.i) open.pop_back();
    if (!open.empty() && open.back() < a.j) return false;
    open.push_back(a.j);
  }
  return true;
}

bool check_parity(const matching& m) {
  for (const arc& a : m.arcs()) {
    if ((a.i + a.j) % 2 == 0) return false;
  }
  return true;
}

matching uncross(const matching& m, const arc& a, const arc& b) {
  const arc* left = &a;
  const arc* right = &b;
  if (right->i < left->i) std::swap(left, right);
  if (!(left->i < right->i && right->i < left->j && left->j < right->j)) {
    fail(error_kind::argument, "arcs do not cross");
  }
  if (!m.contains(a) || !m.contains(b)) {
    fail(error_kind::argument, "arc not present in matching");
  }
  std::vector<arc> arcs;
  arcs.reserve(m.size());
  for (const arc& x : m.arcs()) {
    if (x != a && x != b) arcs.push_back(x);
  }
  arcs.emplace_back(left->i, right->j);
  arcs.emplace_back(right->i, left->j);
  return matching(std::move(arcs));
}

arc_classification classify_arcs(const matching& m) {
  if (!is_nested(m)) {
    fail(error_kind::argument,
         "exposed/hidden split is defined only for nested matchings");
  }
  arc_classification out;
  std::vector<arc> open;
  for (const arc& a : m.arcs()) {
    while (!open.empty() && open.back().j < a.i) open.pop_back();
    if (!open.empty() && open.back().j > a.j) {
      out.hidden.push_back(a);
    } else {
      out.exposed.push_back(a);
    }
    open.push_back(a);
  }
  return out;
}

matching consecutive_pairs_matching(const point_set& ps) {
  std::vector<arc> arcs;
  arcs.reserve(ps.pair_count());
  for (std::uint32_t k = 0; k + 1 < ps.size(); k += 2) {
    arcs.emplace_back(k, k + 1);
  }
  return matching(std::move(arcs));
}

}  // namespace match1d
