// Command-line front end for the match1d solver library. Talks to the
// library exclusively through the public C API.
//
// Exit codes: 0 success, 1 property failure (check), 2 input error,
// 3 internal invariant violation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "match1d.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct cli_error {
  int exit_code;
  std::string message;
};

int exit_code_for(m1d_status status) {
  return status == M1D_ERR_INTERNAL ? kExitInternalError : kExitInputError;
}

void require(m1d_status status) {
  if (status != M1D_OK) {
    throw cli_error{exit_code_for(status),
                    std::string(m1d_status_name(status)) + ": " +
                        m1d_last_error()};
  }
}

// RAII wrappers over the opaque handles.
using cost_ptr = std::unique_ptr<m1d_cost, decltype(&m1d_cost_free)>;
using points_ptr = std::unique_ptr<m1d_points, decltype(&m1d_points_free)>;
using solution_ptr = std::unique_ptr<m1d_solution, decltype(&m1d_solution_free)>;
using table_ptr = std::unique_ptr<m1d_table, decltype(&m1d_table_free)>;
using oracle_ptr = std::unique_ptr<m1d_oracle, decltype(&m1d_oracle_free)>;

cost_ptr parse_cost(const std::string& text) {
  m1d_cost* cost = nullptr;
  require(m1d_cost_parse(text.c_str(), &cost));
  return cost_ptr(cost, m1d_cost_free);
}

points_ptr load_points(const std::string& path) {
  m1d_points* ps = nullptr;
  if (path.empty() || path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)),
                     std::istreambuf_iterator<char>());
    require(m1d_points_parse(text.c_str(), &ps));
  } else {
    require(m1d_points_read_file(path.c_str(), &ps));
  }
  return points_ptr(ps, m1d_points_free);
}

points_ptr make_points(const std::vector<double>& xs) {
  m1d_points* ps = nullptr;
  require(m1d_points_create(xs.data(), xs.size(), &ps));
  return points_ptr(ps, m1d_points_free);
}

solution_ptr solve(const m1d_points* ps, const m1d_cost* cost, m1d_mode mode) {
  m1d_solution* sol = nullptr;
  require(m1d_solve(ps, cost, mode, &sol));
  return solution_ptr(sol, m1d_solution_free);
}

std::string take_string(char* raw) {
  std::string out(raw ? raw : "");
  m1d_string_free(raw);
  return out;
}

std::vector<uint32_t> solution_arcs(const m1d_solution* sol) {
  std::vector<uint32_t> arcs(2 * m1d_solution_arc_count(sol));
  for (size_t k = 0; k * 2 < arcs.size(); ++k) {
    require(m1d_solution_arc(sol, k, &arcs[2 * k], &arcs[2 * k + 1]));
  }
  return arcs;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << payload)) {
    throw cli_error{kExitInputError, "cannot write output file '" + path + "'"};
  }
}

m1d_mode parse_mode(const std::string& mode) {
  if (mode == "full") return M1D_MODE_FULL_TABLE;
  if (mode == "reduce") return M1D_MODE_REDUCTION;
  throw cli_error{kExitInputError, "unknown mode '" + mode + "'"};
}

/* ---- solve ---- */

struct solve_args {
  std::string cost = "power:0.5";
  std::string input;
  std::string output;
  std::string mode = "reduce";
  std::optional<uint64_t> seed;
};

int run_solve(const solve_args& args) {
  cost_ptr cost = parse_cost(args.cost);
  points_ptr ps = load_points(args.input);
  solution_ptr sol = solve(ps.get(), cost.get(), parse_mode(args.mode));
  char* json = nullptr;
  require(m1d_solution_json(sol.get(), ps.get(), cost.get(),
                            args.seed.has_value(), args.seed.value_or(0),
                            &json));
  write_output(args.output, take_string(json));
  return kExitOk;
}

/* ---- table ---- */

int run_table(const solve_args& args) {
  cost_ptr cost = parse_cost(args.cost);
  points_ptr ps = load_points(args.input);
  char* csv = nullptr;
  if (parse_mode(args.mode) == M1D_MODE_FULL_TABLE) {
    m1d_table* raw = nullptr;
    require(m1d_table_build(ps.get(), cost.get(), &raw));
    table_ptr table(raw, m1d_table_free);
    require(m1d_table_csv(table.get(), &csv));
  } else {
    solution_ptr sol = solve(ps.get(), cost.get(), M1D_MODE_REDUCTION);
    require(m1d_solution_table_csv(sol.get(), &csv));
  }
  write_output(args.output, take_string(csv));
  return kExitOk;
}

/* ---- check ---- */

struct check_args {
  std::string cost = "power:0.5";
  std::string input;
  std::optional<double> split;
  size_t dp_cap = 1024;
  bool inject_fault = false;
};

class property_log {
 public:
  void pass(const std::string& name, const std::string& detail = "") {
    emit(name, "pass", detail);
  }
  void fail(const std::string& name, const std::string& detail) {
    emit(name, "FAIL", detail);
    failed_ = true;
  }
  void skip(const std::string& name, const std::string& why) {
    emit(name, "skipped", why);
  }
  bool failed() const { return failed_; }

 private:
  void emit(const std::string& name, const std::string& verdict,
            const std::string& detail) {
    std::cout << "check " << name << ": " << verdict;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  }
  bool failed_ = false;
};

bool weights_agree(double a, double b) {
  const double tol =
      std::max(1e-12, 1e-9 * std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) <= tol;
}

std::string describe_instance(const m1d_points* ps, const std::string& cost) {
  std::ostringstream out;
  out << m1d_points_count(ps) << " points, cost " << cost << ", coords:";
  const double* xs = m1d_points_data(ps);
  for (size_t k = 0; k < m1d_points_count(ps); ++k) out << ' ' << xs[k];
  return out.str();
}

void check_stabilization(property_log& log, const m1d_points* ps,
                         const m1d_cost* cost, const m1d_solution* joint,
                         double split) {
  const double* xs = m1d_points_data(ps);
  const size_t count = m1d_points_count(ps);
  std::vector<double> left, right;
  for (size_t k = 0; k < count; ++k) {
    if (xs[k] == split) {
      throw cli_error{kExitInputError,
                      "--split coordinate coincides with a point"};
    }
    (xs[k] < split ? left : right).push_back(xs[k]);
  }
  if (left.empty() || right.empty() || left.size() % 2 != 0) {
    throw cli_error{kExitInputError,
                    "--split must leave an even, nonempty block on each side"};
  }

  auto hidden_arcs = [&](const m1d_solution* sol, uint32_t offset) {
    std::vector<uint32_t> arcs = solution_arcs(sol);
    std::vector<uint8_t> hidden(arcs.size() / 2);
    require(m1d_matching_classify(arcs.data(), arcs.size() / 2, hidden.data()));
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (size_t k = 0; k * 2 < arcs.size(); ++k) {
      if (hidden[k]) out.emplace_back(arcs[2 * k] + offset, arcs[2 * k + 1] + offset);
    }
    return out;
  };

  points_ptr left_ps = make_points(left);
  points_ptr right_ps = make_points(right);
  solution_ptr left_sol = solve(left_ps.get(), cost, M1D_MODE_REDUCTION);
  solution_ptr right_sol = solve(right_ps.get(), cost, M1D_MODE_REDUCTION);

  const double gap = std::min({m1d_solution_min_gap(left_sol.get()),
                               m1d_solution_min_gap(right_sol.get()),
                               m1d_solution_min_gap(joint)});
  if (gap < 1e-7) {
    std::cerr << "note: near-tie instance (decision gap " << gap
              << "); the optimal matching may not be unique\n";
  }

  std::vector<std::pair<uint32_t, uint32_t>> expected =
      hidden_arcs(left_sol.get(), 0);
  for (auto [i, j] : hidden_arcs(right_sol.get(),
                                 static_cast<uint32_t>(left.size()))) {
    expected.emplace_back(i, j);
  }

  std::vector<uint32_t> joint_flat = solution_arcs(joint);
  std::vector<uint8_t> joint_hidden(joint_flat.size() / 2);
  require(m1d_matching_classify(joint_flat.data(), joint_flat.size() / 2,
                                joint_hidden.data()));

  for (auto [i, j] : expected) {
    bool found = false;
    bool hidden = false;
    for (size_t k = 0; k * 2 < joint_flat.size(); ++k) {
      if (joint_flat[2 * k] == i && joint_flat[2 * k + 1] == j) {
        found = true;
        hidden = joint_hidden[k] != 0;
        break;
      }
    }
    if (!found || !hidden) {
      log.fail("stabilization",
               "hidden arc (" + std::to_string(i) + "," + std::to_string(j) +
                   ") " + (found ? "is exposed in" : "missing from") +
                   " the joint matching");
      return;
    }
  }
  log.pass("stabilization",
           std::to_string(expected.size()) + " hidden arcs preserved");
}

int run_check(const check_args& args) {
  cost_ptr cost = parse_cost(args.cost);
  points_ptr ps = load_points(args.input);
  const size_t count = m1d_points_count(ps.get());

  property_log log;
  solution_ptr sol = solve(ps.get(), cost.get(), M1D_MODE_REDUCTION);
  // Fault injection hook for negative-path testing of this command.
  const double solver_weight =
      m1d_solution_weight(sol.get()) + (args.inject_fault ? 1e-3 : 0.0);

  if (count <= 12) {
    m1d_oracle* raw = nullptr;
    require(m1d_brute_force(ps.get(), cost.get(), &raw));
    oracle_ptr brute(raw, m1d_oracle_free);
    if (weights_agree(solver_weight, m1d_oracle_weight(brute.get()))) {
      log.pass("oracle-weight-brute");
    } else {
      log.fail("oracle-weight-brute",
               "solver " + std::to_string(solver_weight) + " vs oracle " +
                   std::to_string(m1d_oracle_weight(brute.get())));
    }
  } else {
    log.skip("oracle-weight-brute", "size cap");
  }

  if (count <= args.dp_cap) {
    m1d_oracle* raw = nullptr;
    require(m1d_nested_dp(ps.get(), cost.get(), &raw));
    oracle_ptr dp(raw, m1d_oracle_free);
    if (weights_agree(solver_weight, m1d_oracle_weight(dp.get()))) {
      log.pass("oracle-weight-dp");
    } else {
      log.fail("oracle-weight-dp",
               "solver " + std::to_string(solver_weight) + " vs oracle " +
                   std::to_string(m1d_oracle_weight(dp.get())));
    }
  } else {
    log.skip("oracle-weight-dp", "size cap");
  }

  std::vector<uint32_t> arcs = solution_arcs(sol.get());
  const size_t arc_count = arcs.size() / 2;
  {
    std::vector<bool> seen(count, false);
    bool perfect = arc_count * 2 == count;
    for (uint32_t idx : arcs) {
      if (idx >= count || seen[idx]) perfect = false;
      else seen[idx] = true;
    }
    perfect ? log.pass("structure-perfect")
            : log.fail("structure-perfect", "not a perfect matching");
  }
  {
    int nested = 0;
    require(m1d_matching_is_nested(arcs.data(), arc_count, &nested));
    nested ? log.pass("structure-nested")
           : log.fail("structure-nested", "output matching has crossings");
  }
  {
    int parity = 0;
    require(m1d_matching_parity_ok(arcs.data(), arc_count, &parity));
    parity ? log.pass("structure-parity")
           : log.fail("structure-parity", "equal-parity arc in output");
  }

  {
    // Deleting any one arc must leave a matching that re-solves to exactly
    // the remaining arcs' weight.
    const double* xs = m1d_points_data(ps.get());
    bool ok = true;
    std::string detail;
    for (size_t drop = 0; drop < arc_count && ok; ++drop) {
      std::vector<double> coords;
      double expected = 0.0;
      for (size_t k = 0; k < arc_count; ++k) {
        if (k == drop) continue;
        coords.push_back(xs[arcs[2 * k]]);
        coords.push_back(xs[arcs[2 * k + 1]]);
        double edge = 0.0;
        require(m1d_cost_eval(cost.get(), xs[arcs[2 * k]], xs[arcs[2 * k + 1]],
                              &edge));
        expected += edge;
      }
      if (coords.empty()) continue;
      points_ptr sub = make_points(coords);
      solution_ptr sub_sol = solve(sub.get(), cost.get(), M1D_MODE_REDUCTION);
      if (!weights_agree(m1d_solution_weight(sub_sol.get()), expected)) {
        ok = false;
        detail = "dropping arc " + std::to_string(drop) + " re-solves to " +
                 std::to_string(m1d_solution_weight(sub_sol.get())) +
                 ", expected " + std::to_string(expected);
      }
    }
    ok ? log.pass("bellman", std::to_string(arc_count) + " subsets")
       : log.fail("bellman", detail);
  }

  if (args.split) {
    check_stabilization(log, ps.get(), cost.get(), sol.get(), *args.split);
  } else {
    log.skip("stabilization", "no --split");
  }

  if (log.failed()) {
    std::cerr << "instance: " << describe_instance(ps.get(), args.cost)
              << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

/* ---- gen ---- */

struct gen_args {
  size_t size = 0;
  std::string dist = "uniform";
  size_t clusters = 2;
  uint64_t seed = 0;
  double span = 100.0;
  std::string output;
};

int run_gen(const gen_args& args) {
  m1d_gen_spec spec;
  m1d_gen_spec_init(&spec);
  spec.size = args.size;
  if (args.dist == "uniform") {
    spec.distribution = M1D_DIST_UNIFORM;
  } else if (args.dist == "clustered") {
    spec.distribution = M1D_DIST_CLUSTERED;
  } else {
    throw cli_error{kExitInputError, "unknown distribution '" + args.dist + "'"};
  }
  spec.cluster_count = args.clusters;
  spec.seed = args.seed;
  spec.span = args.span;
  m1d_points* raw = nullptr;
  require(m1d_points_generate(&spec, &raw));
  points_ptr ps(raw, m1d_points_free);
  char* text = nullptr;
  require(m1d_points_text(ps.get(), &text));
  write_output(args.output, take_string(text));
  std::cerr << "seed: " << args.seed << "\n";
  return kExitOk;
}

/* ---- bench ---- */

struct bench_args {
  std::string cost = "power:0.5";
  std::vector<size_t> sizes;
  size_t reps = 5;
  uint64_t seed = 0;
  size_t dp_cap = 1024;
  std::string output;
};

int64_t timer_resolution_ns() {
  using clock = std::chrono::steady_clock;
  int64_t best = std::numeric_limits<int64_t>::max();
  for (int k = 0; k < 64; ++k) {
    auto a = clock::now();
    auto b = clock::now();
    while (b == a) b = clock::now();
    best = std::min<int64_t>(
        best,
        std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
  }
  return std::max<int64_t>(best, 1);
}

template <typename F>
int64_t median_ns(size_t reps, F&& body) {
  using clock = std::chrono::steady_clock;
  std::vector<int64_t> times(reps);
  for (size_t r = 0; r < reps; ++r) {
    const auto start = clock::now();
    body();
    const auto stop = clock::now();
    times[r] =
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
            .count();
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

double fit_slope(const std::vector<double>& log_n,
                 const std::vector<double>& log_t) {
  const size_t n = log_n.size();
  double mx = 0.0, my = 0.0;
  for (size_t k = 0; k < n; ++k) {
    mx += log_n[k];
    my += log_t[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double cov = 0.0, var = 0.0;
  for (size_t k = 0; k < n; ++k) {
    cov += (log_n[k] - mx) * (log_t[k] - my);
    var += (log_n[k] - mx) * (log_n[k] - mx);
  }
  return var == 0.0 ? std::numeric_limits<double>::quiet_NaN() : cov / var;
}

int run_bench(const bench_args& args) {
  if (args.sizes.size() < 3) {
    throw cli_error{kExitInputError, "bench needs at least 3 sizes"};
  }
  if (!std::is_sorted(args.sizes.begin(), args.sizes.end())) {
    throw cli_error{kExitInputError, "bench sizes must be ascending"};
  }
  for (size_t size : args.sizes) {
    if (size % 2 != 0 || size == 0) {
      throw cli_error{kExitInputError, "bench sizes must be even and positive"};
    }
  }
  cost_ptr cost = parse_cost(args.cost);
  const int64_t resolution = timer_resolution_ns();

  std::ostringstream csv;
  csv << "n,median_ns,cells,slope_running\n";
  std::ostringstream trailer;
  std::vector<double> log_n, log_t;

  for (size_t idx = 0; idx < args.sizes.size(); ++idx) {
    const size_t size = args.sizes[idx];
    m1d_gen_spec spec;
    m1d_gen_spec_init(&spec);
    spec.size = size;
    spec.seed = args.seed + idx;
    spec.span = 1000.0;
    m1d_points* raw = nullptr;
    require(m1d_points_generate(&spec, &raw));
    points_ptr ps(raw, m1d_points_free);

    uint64_t cells = 0;
    auto run_once = [&] {
      solution_ptr sol = solve(ps.get(), cost.get(), M1D_MODE_REDUCTION);
      cells = m1d_solution_cells(sol.get());
    };
    run_once();  // warm-up
    const int64_t med = median_ns(args.reps, run_once);
    if (med < 10 * resolution) {
      std::cerr << "warning: timer resolution (" << resolution
                << " ns) insufficient for size " << size << "; skipped\n";
      continue;
    }
    log_n.push_back(std::log(static_cast<double>(size)));
    log_t.push_back(std::log(static_cast<double>(med)));
    csv << size << ',' << med << ',' << cells << ',';
    if (log_n.size() >= 2) {
      csv << fit_slope(log_n, log_t);
    } else {
      csv << "nan";
    }
    csv << '\n';

    if (size <= args.dp_cap) {
      const int64_t dp_med = median_ns(std::min<size_t>(args.reps, 3), [&] {
        m1d_oracle* dp_raw = nullptr;
        require(m1d_nested_dp(ps.get(), cost.get(), &dp_raw));
        m1d_oracle_free(dp_raw);
      });
      trailer << "# nested_dp," << size << ',' << dp_med << '\n';
    }
  }
  write_output(args.output, csv.str() + trailer.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-weight perfect matching on the line "
               "(concave shift-invariant costs)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(m1d_version()));

  solve_args solve_opts;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve an instance and emit result JSON");
  solve_cmd->add_option("input", solve_opts.input,
                        "points file ('-' or omitted for stdin)");
  solve_cmd->add_option("--cost", solve_opts.cost,
                        "cost spec: power:<a>, log1p:<s> or pwl:<path>");
  solve_cmd->add_option("--output", solve_opts.output, "output path");
  solve_cmd->add_option("--mode", solve_opts.mode, "full|reduce")
      ->check(CLI::IsMember({"full", "reduce"}));
  solve_cmd->add_option("--seed", solve_opts.seed,
                        "seed echoed into the result JSON");

  solve_args table_opts;
  table_opts.mode = "full";
  CLI::App* table_cmd =
      app.add_subcommand("table", "dump the pyramid table as CSV");
  table_cmd->add_option("input", table_opts.input,
                        "points file ('-' or omitted for stdin)");
  table_cmd->add_option("--cost", table_opts.cost, "cost spec");
  table_cmd->add_option("--output", table_opts.output, "output path");
  table_cmd->add_option("--mode", table_opts.mode,
                        "full: every cell; reduce: surviving cells")
      ->check(CLI::IsMember({"full", "reduce"}));

  check_args check_opts;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "verify an instance against the reference solvers");
  check_cmd->add_option("input", check_opts.input,
                        "points file ('-' or omitted for stdin)");
  check_cmd->add_option("--cost", check_opts.cost, "cost spec");
  check_cmd->add_option("--split", check_opts.split,
                        "coordinate splitting the line into two blocks for "
                        "the hidden-arc preservation check");
  check_cmd->add_option("--dp-cap", check_opts.dp_cap,
                        "largest size the cubic reference solver runs at");
  check_cmd->add_flag("--inject-fault", check_opts.inject_fault)->group("");

  gen_args gen_opts;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "generate a reproducible instance");
  gen_cmd->add_option("--size", gen_opts.size, "number of points (even)")
      ->required();
  gen_cmd->add_option("--dist", gen_opts.dist, "uniform|clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));
  gen_cmd->add_option("--clusters", gen_opts.clusters,
                      "cluster count (clustered only)");
  gen_cmd->add_option("--seed", gen_opts.seed, "generator seed");
  gen_cmd->add_option("--span", gen_opts.span, "coordinate span");
  gen_cmd->add_option("--output", gen_opts.output, "output path");

  bench_args bench_opts;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "time the solver across sizes and fit the scaling exponent");
  bench_cmd->add_option("--sizes", bench_opts.sizes, "point counts (>= 3)")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench_opts.reps, "repetitions per size")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_opts.seed, "base instance seed");
  bench_cmd->add_option("--cost", bench_opts.cost, "cost spec");
  bench_cmd->add_option("--dp-cap", bench_opts.dp_cap,
                        "largest size the cubic reference solver runs at");
  bench_cmd->add_option("--output", bench_opts.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_opts);
    if (table_cmd->parsed()) return run_table(table_opts);
    if (check_cmd->parsed()) return run_check(check_opts);
    if (gen_cmd->parsed()) return run_gen(gen_opts);
    if (bench_cmd->parsed()) return run_bench(bench_opts);
  } catch (const cli_error& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}
