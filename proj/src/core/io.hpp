#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "core/solver.hpp"

namespace match1d {

enum class point_distribution { uniform, clustered };

// Deterministic instance description: the same spec always generates the
// same point set, on any platform.
struct instance_spec {
  std::size_t size = 0;  // even, positive
  point_distribution distribution = point_distribution::uniform;
  std::size_t cluster_count = 1;  // clustered only; at most size / 2
  std::uint64_t seed = 0;
  double span = 100.0;  // uniform draws land in [0, span)
};

// Whitespace-separated decimal numbers; values are sorted, the permutation
// from input order is kept by the point_set. Parse failures report the line
// and offending token.
point_set parse_points(std::string_view text);
point_set read_points(std::istream& in);
point_set read_points_file(const std::string& path);

// Seeded generation: mt19937_64 with 53-bit mantissa uniforms; clustered
// instances draw cluster centres uniformly, assign points round-robin and
// offset them by Box-Muller normals with sigma = span / (100 * clusters).
// Colliding draws are regenerated; exhausting the retry budget is a
// generation error.
point_set gen_instance(const instance_spec& spec);

// One coordinate per line, shortest round-trip decimal form.
std::string points_to_text(const point_set& ps);

// Result JSON: points, cost text, matching arcs, weight, reduction events
// and stats; seed when supplied; the input permutation when the source was
// unsorted. The weight field is the matching's own deterministic arc sum, so
// re-deriving it from the parsed document reproduces it bit-exactly.
std::string result_to_json(const solve_result& result, const point_set& ps,
                           const cost_spec& cost,
                           std::optional<std::uint64_t> seed = std::nullopt);
void write_result(std::ostream& out, const solve_result& result,
                  const point_set& ps, const cost_spec& cost,
                  std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace match1d
