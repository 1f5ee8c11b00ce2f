#include "core/oracles.hpp"

#include <algorithm>
#include <limits>

namespace match1d {

namespace {

struct enumeration_state {
  const point_set* ps = nullptr;
  const cost_spec* cost = nullptr;
  std::vector<bool> used;
  std::vector<arc> current;
  std::vector<arc> best_arcs;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t explored = 0;
};

void enumerate(enumeration_state& st, std::uint32_t from, double weight) {
  std::uint32_t head = from;
  while (head < st.used.size() && st.used[head]) ++head;
  if (head == st.used.size()) {
    ++st.explored;
    if (weight < st.best) {
      st.best = weight;
      st.best_arcs = st.current;
    }
    return;
  }
  st.used[head] = true;
  for (std::uint32_t partner = head + 1; partner < st.used.size(); ++partner) {
    if (st.used[partner]) continue;
    st.used[partner] = true;
    st.current.emplace_back(head, partner);
    enumerate(st, head + 1,
              weight + st.cost->eval((*st.ps)[head], (*st.ps)[partner]));
    st.current.pop_back();
    st.used[partner] = false;
  }
  st.used[head] = false;
}

}  // namespace

oracle_result brute_force_min_matching(const point_set& ps,
                                       const cost_spec& cost) {
  if (ps.size() > kBruteForceCap) {
    fail(error_kind::size,
         "brute force capped at " + std::to_string(kBruteForceCap) +
             " points, got " + std::to_string(ps.size()));
  }
  enumeration_state st;
  st.ps = &ps;
  st.cost = &cost;
  st.used.assign(ps.size(), false);
  st.current.reserve(ps.pair_count());
  enumerate(st, 0, 0.0);
  oracle_result out;
  out.weight = st.best;
  out.match = matching(std::move(st.best_arcs));
  out.explored = st.explored;
  return out;
}

interval_table::interval_table(std::size_t point_count)
    : point_count_(point_count) {
  const std::size_t n = point_count / 2;
  value_.assign(n * (point_count - n), 0.0);
}

nested_dp_result nested_dp(const point_set& ps, const cost_spec& cost) {
  const std::size_t count = ps.size();
  nested_dp_result out{.result = {}, .intervals = interval_table(count)};
  interval_table& m = out.intervals;
  // argmin partner of x_i on [i, j], smallest on ties
  interval_table split(count);

  auto value_or_zero = [&](std::uint32_t a, std::uint32_t b) {
    return b + 1 == a ? 0.0 : m.value(a, b);
  };

  std::uint64_t filled = 0;
  for (std::size_t s = 1; s < count; s += 2) {
    for (std::uint32_t i = 0; i + s < count; ++i) {
      const std::uint32_t j = i + static_cast<std::uint32_t>(s);
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t best_k = i + 1;
      for (std::uint32_t k = i + 1; k <= j; k += 2) {
        const double v = cost.eval(ps[i], ps[k]) + value_or_zero(i + 1, k - 1) +
                         value_or_zero(k + 1, j);
        if (v < best) {
          best = v;
          best_k = k;
        }
      }
      m.set(i, j, best);
      split.set(i, j, best_k);
      ++filled;
    }
  }

  std::vector<arc> arcs;
  struct span { std::uint32_t i, j; };
  std::vector<span> work{{0, static_cast<std::uint32_t>(count - 1)}};
  while (!work.empty()) {
    const span sp = work.back();
    work.pop_back();
    if (sp.j <= sp.i) continue;
    const auto k = static_cast<std::uint32_t>(split.value(sp.i, sp.j));
    arcs.emplace_back(sp.i, k);
    if (k + 1 <= sp.j) work.push_back({k + 1, sp.j});
    if (sp.i + 1 <= k - 1) work.push_back({sp.i + 1, k - 1});
  }

  // Report the canonical ascending arc sum; the raw DP value stays
  // available as the table's top cell (same number up to association
  // order of the additions).
  out.result.match = matching(std::move(arcs));
  out.result.weight = matching_weight(ps, cost, out.result.match);
  out.result.explored = filled;
  return out;
}

}  // namespace match1d
