#include "core/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "core/text.hpp"

namespace match1d {

point_set parse_points(std::string_view text) {
  std::vector<double> values;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    const std::string_view token = text.substr(pos, end - pos);
    double value = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      fail(error_kind::parse, "cannot parse '" + std::string(token) +
                                  "' as a number (line " +
                                  std::to_string(line) + ", value " +
                                  std::to_string(values.size() + 1) + ")");
    }
    if (!std::isfinite(value)) {
      fail(error_kind::input, "non-finite value '" + std::string(token) +
                                  "' (line " + std::to_string(line) + ")");
    }
    values.push_back(value);
    pos = end;
  }
  if (values.empty()) {
    fail(error_kind::input, "no points found in input");
  }
  return point_set(std::move(values));
}

point_set read_points(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    fail(error_kind::io, "failed reading point stream");
  }
  return parse_points(buffer.str());
}

point_set read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(error_kind::io, "cannot open points file '" + path + "'");
  }
  return read_points(in);
}

namespace {

// Uniform double in [0, 1) with 53 random mantissa bits; the +1 variant is
// in (0, 1] for logarithms.
double unit_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
double unit_closed_above(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

std::vector<double> draw_once(const instance_spec& spec, std::mt19937_64& rng) {
  std::vector<double> values(spec.size);
  if (spec.distribution == point_distribution::uniform) {
    for (double& v : values) v = spec.span * unit_open(rng);
    return values;
  }
  std::vector<double> centres(spec.cluster_count);
  for (double& c : centres) c = spec.span * unit_open(rng);
  const double sigma =
      spec.span / (100.0 * static_cast<double>(spec.cluster_count));
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double u1 = unit_closed_above(rng);
    const double u2 = unit_open(rng);
    const double normal =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
    values[k] = centres[k % centres.size()] + sigma * normal;
  }
  return values;
}

}  // namespace

point_set gen_instance(const instance_spec& spec) {
  if (spec.size == 0 || spec.size % 2 != 0) {
    fail(error_kind::argument, "instance size must be even and positive");
  }
  if (!(spec.span > 0.0) || !std::isfinite(spec.span)) {
    fail(error_kind::argument, "span must be positive and finite");
  }
  if (spec.distribution == point_distribution::clustered &&
      (spec.cluster_count == 0 || spec.cluster_count > spec.size / 2)) {
    fail(error_kind::argument,
         "cluster count must lie in [1, size/2]");
  }
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> values = draw_once(spec, rng);
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) == values.end()) {
      return point_set(std::move(values));
    }
  }
  fail(error_kind::input,
       "could not draw distinct coordinates for this spec (seed " +
           std::to_string(spec.seed) + ")");
}

std::string points_to_text(const point_set& ps) {
  std::string out;
  for (double v : ps.coords()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string result_to_json(const solve_result& result, const point_set& ps,
                           const cost_spec& cost,
                           std::optional<std::uint64_t> seed) {
  nlohmann::ordered_json j;
  j["points"] = ps.coords();
  if (!ps.input_permutation().empty()) {
    j["permutation"] = ps.input_permutation();
  }
  j["cost"] = cost.text();
  auto arcs_json = [](const std::vector<arc>& arcs) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const arc& a : arcs) {
      out.push_back({a.i, a.j});
    }
    return out;
  };
  j["matching"] = arcs_json(result.match.arcs());
  j["weight"] = matching_weight(ps, cost, result.match);
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const reduction_event& ev : result.events) {
    nlohmann::ordered_json e;
    e["i0"] = ev.i0;
    e["j0"] = ev.j0;
    e["removed"] = ev.removed;
    e["arcs"] = arcs_json(ev.recorded_arcs);
    events.push_back(std::move(e));
  }
  j["events"] = std::move(events);
  j["stats"] = {{"cells_computed", result.stats.cells_computed},
                {"reductions", result.stats.reductions}};
  if (seed) {
    j["seed"] = *seed;
  }
  return j.dump(2) + "\n";
}

void write_result(std::ostream& out, const solve_result& result,
                  const point_set& ps, const cost_spec& cost,
                  std::optional<std::uint64_t> seed) {
  out << result_to_json(result, ps, cost, seed);
  if (!out) {
    fail(error_kind::io, "failed writing result");
  }
}

}  // namespace match1d
