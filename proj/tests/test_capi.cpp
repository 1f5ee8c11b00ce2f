#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "match1d.h"

namespace {

struct string_guard {
  char* value = nullptr;
  ~string_guard() { m1d_string_free(value); }
  std::string str() const { return value ? value : ""; }
};

std::vector<uint32_t> arcs_of(m1d_solution* sol) {
  std::vector<uint32_t> arcs(2 * m1d_solution_arc_count(sol));
  for (size_t k = 0; k * 2 < arcs.size(); ++k) {
    REQUIRE(m1d_solution_arc(sol, k, &arcs[2 * k], &arcs[2 * k + 1]) == M1D_OK);
  }
  return arcs;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(m1d_version()) > 0);
  CHECK(std::string(m1d_status_name(M1D_OK)) == "ok");
  CHECK(std::string(m1d_status_name(M1D_ERR_PARSE)) == "parse");
}

TEST_CASE("cost lifecycle and errors") {
  m1d_cost* cost = nullptr;
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);
  double d = 0.0;
  CHECK(m1d_cost_eval(cost, 0.0, 4.0, &d) == M1D_OK);
  CHECK(d == 2.0);
  CHECK(m1d_cost_eval(cost, std::nan(""), 0.0, &d) == M1D_ERR_ARGUMENT);
  string_guard text;
  CHECK(m1d_cost_text(cost, &text.value) == M1D_OK);
  CHECK(text.str() == "power:0.5");
  m1d_cost_free(cost);

  CHECK(m1d_cost_power(1.5, &cost) == M1D_ERR_ARGUMENT);
  CHECK(std::strlen(m1d_last_error()) > 0);
  CHECK(m1d_cost_parse("power:x", &cost) == M1D_ERR_PARSE);
  CHECK(m1d_cost_parse("pwl:/no/such/file", &cost) == M1D_ERR_IO);
  CHECK(m1d_cost_power(0.5, nullptr) == M1D_ERR_ARGUMENT);

  const double ts[] = {0.0, 1.0, 2.0};
  const double convex[] = {0.0, 1.0, 3.0};
  CHECK(m1d_cost_piecewise(ts, convex, 3, &cost) == M1D_ERR_VALIDATION);
  const double concave[] = {0.0, 1.0, 1.5};
  REQUIRE(m1d_cost_piecewise(ts, concave, 3, &cost) == M1D_OK);
  CHECK(m1d_cost_eval(cost, 0.0, 1.5, &d) == M1D_OK);
  CHECK(d == 1.25);
  m1d_cost_free(cost);
}

TEST_CASE("log1p cost") {
  m1d_cost* cost = nullptr;
  REQUIRE(m1d_cost_log1p(1.0, &cost) == M1D_OK);
  double d = 0.0;
  REQUIRE(m1d_cost_eval(cost, 0.0, std::exp(1.0) - 1.0, &d) == M1D_OK);
  CHECK(d == 1.0);
  m1d_cost_free(cost);
  CHECK(m1d_cost_log1p(-2.0, &cost) == M1D_ERR_ARGUMENT);
}

TEST_CASE("validation report") {
  m1d_cost* cost = nullptr;
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);
  m1d_validation* report = nullptr;
  REQUIRE(m1d_cost_validate(cost, 17, 10.0, &report) == M1D_OK);
  CHECK(m1d_validation_ok(report) == 1);
  CHECK(m1d_validation_strict(report) == 1);
  CHECK(m1d_validation_violations(report) == 0);
  string_guard summary;
  CHECK(m1d_validation_summary(report, &summary.value) == M1D_OK);
  CHECK(summary.str().find("valid") != std::string::npos);
  m1d_validation_free(report);

  m1d_cost* linear = nullptr;
  REQUIRE(m1d_cost_power(1.0, &linear) == M1D_OK);
  REQUIRE(m1d_cost_validate(linear, 17, 10.0, &report) == M1D_OK);
  CHECK(m1d_validation_ok(report) == 1);
  CHECK(m1d_validation_strict(report) == 0);
  m1d_validation_free(report);
  m1d_cost_free(linear);
  m1d_cost_free(cost);

  // checked construction cannot produce a non-concave generator, so reports
  // obtained through this API list no violations; the accessor's range check
  // is still part of the contract
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);
  REQUIRE(m1d_cost_validate(cost, 5, 1.0, &report) == M1D_OK);
  double t1 = 0.0;
  CHECK(m1d_validation_violation(report, 0, &t1, nullptr, nullptr, nullptr,
                                 nullptr) == M1D_ERR_ARGUMENT);
  m1d_validation_free(report);
  m1d_cost_free(cost);
}

TEST_CASE("points lifecycle") {
  m1d_points* ps = nullptr;
  const double xs[] = {3.0, 0.0, 1.0, 2.0};
  REQUIRE(m1d_points_create(xs, 4, &ps) == M1D_OK);
  CHECK(m1d_points_count(ps) == 4);
  CHECK(m1d_points_data(ps)[0] == 0.0);
  CHECK(m1d_points_data(ps)[3] == 3.0);
  uint32_t perm[4] = {0};
  CHECK(m1d_points_permutation(ps, perm, 4) == 4);
  CHECK(perm[0] == 1);
  CHECK(perm[3] == 0);
  m1d_points_free(ps);

  const double dup[] = {0.0, 0.0, 1.0, 2.0};
  CHECK(m1d_points_create(dup, 4, &ps) == M1D_ERR_INPUT);
  CHECK(m1d_points_parse("0 1 zzz 3", &ps) == M1D_ERR_PARSE);
  CHECK(m1d_points_parse("0 1 2", &ps) == M1D_ERR_INPUT);
  CHECK(m1d_points_read_file("/no/such/file", &ps) == M1D_ERR_IO);

  {
    const char* path = "capi_points_tmp.txt";
    std::FILE* f = std::fopen(path, "w");
    REQUIRE(f != nullptr);
    std::fputs("7 3\n5 9\n", f);
    std::fclose(f);
    REQUIRE(m1d_points_read_file(path, &ps) == M1D_OK);
    CHECK(m1d_points_count(ps) == 4);
    CHECK(m1d_points_data(ps)[0] == 3.0);
    m1d_points_free(ps);
    std::remove(path);
  }

  REQUIRE(m1d_points_parse("0 1\n2 3", &ps) == M1D_OK);
  CHECK(m1d_points_permutation(ps, nullptr, 0) == 0);
  string_guard text;
  CHECK(m1d_points_text(ps, &text.value) == M1D_OK);
  CHECK(text.str() == "0\n1\n2\n3\n");
  m1d_points_free(ps);
}

TEST_CASE("generation through the C API") {
  m1d_gen_spec spec;
  m1d_gen_spec_init(&spec);
  spec.size = 10;
  spec.seed = 99;
  m1d_points* a = nullptr;
  m1d_points* b = nullptr;
  REQUIRE(m1d_points_generate(&spec, &a) == M1D_OK);
  REQUIRE(m1d_points_generate(&spec, &b) == M1D_OK);
  CHECK(std::memcmp(m1d_points_data(a), m1d_points_data(b),
                    10 * sizeof(double)) == 0);
  m1d_points_free(a);
  m1d_points_free(b);
  spec.size = 3;
  CHECK(m1d_points_generate(&spec, &a) == M1D_ERR_ARGUMENT);
}

TEST_CASE("solve and inspect the worked instance") {
  m1d_cost* cost = nullptr;
  m1d_points* ps = nullptr;
  REQUIRE(m1d_cost_parse("power:0.5", &cost) == M1D_OK);
  REQUIRE(m1d_points_parse("0 4.9 5.1 10", &ps) == M1D_OK);

  m1d_solution* sol = nullptr;
  REQUIRE(m1d_solve(ps, cost, M1D_MODE_REDUCTION, &sol) == M1D_OK);
  CHECK(m1d_solution_weight(sol) == doctest::Approx(3.6094912556683365));
  CHECK(m1d_solution_mode(sol) == M1D_MODE_REDUCTION);
  CHECK(arcs_of(sol) == std::vector<uint32_t>{0, 3, 1, 2});
  REQUIRE(m1d_solution_event_count(sol) == 1);
  uint32_t i0 = 0, j0 = 0;
  double inner = 0.0;
  REQUIRE(m1d_solution_event(sol, 0, &i0, &j0, &inner) == M1D_OK);
  CHECK(i0 == 0);
  CHECK(j0 == 3);
  CHECK(inner == doctest::Approx(0.44721359549995715));
  const uint32_t* removed = nullptr;
  size_t removed_count = 0;
  REQUIRE(m1d_solution_event_removed(sol, 0, &removed, &removed_count) == M1D_OK);
  REQUIRE(removed_count == 2);
  CHECK(removed[0] == 1);
  CHECK(removed[1] == 2);
  CHECK(m1d_solution_cells(sol) == 4);
  CHECK(m1d_solution_min_gap(sol) > 0.1);

  string_guard json;
  REQUIRE(m1d_solution_json(sol, ps, cost, 1, 7, &json.value) == M1D_OK);
  CHECK(json.str().find("\"seed\": 7") != std::string::npos);
  CHECK(json.str().find("\"cost\": \"power:0.5\"") != std::string::npos);

  string_guard csv;
  REQUIRE(m1d_solution_table_csv(sol, &csv.value) == M1D_OK);
  CHECK(csv.str() == "0,3,3.1622776601683795,tie\n");

  m1d_solution_free(sol);
  m1d_points_free(ps);
  m1d_cost_free(cost);
}

TEST_CASE("matching helpers over flat arrays") {
  m1d_cost* cost = nullptr;
  m1d_points* ps = nullptr;
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);
  REQUIRE(m1d_points_parse("0 1 2 3", &ps) == M1D_OK);

  const uint32_t nested[] = {0, 3, 1, 2};
  const uint32_t crossed[] = {0, 2, 1, 3};
  double w = 0.0;
  REQUIRE(m1d_matching_weight(ps, cost, nested, 2, &w) == M1D_OK);
  CHECK(w == doctest::Approx(std::sqrt(3.0) + 1.0));
  uint64_t crossings = 0;
  REQUIRE(m1d_matching_crossings(crossed, 2, &crossings) == M1D_OK);
  CHECK(crossings == 1);
  int flag = -1;
  REQUIRE(m1d_matching_is_nested(nested, 2, &flag) == M1D_OK);
  CHECK(flag == 1);
  REQUIRE(m1d_matching_is_nested(crossed, 2, &flag) == M1D_OK);
  CHECK(flag == 0);
  REQUIRE(m1d_matching_parity_ok(nested, 2, &flag) == M1D_OK);
  CHECK(flag == 1);
  uint8_t hidden[2] = {9, 9};
  REQUIRE(m1d_matching_classify(nested, 2, hidden) == M1D_OK);
  CHECK(hidden[0] == 0);
  CHECK(hidden[1] == 1);
  CHECK(m1d_matching_classify(crossed, 2, hidden) == M1D_ERR_ARGUMENT);

  const uint32_t shared[] = {0, 1, 1, 2};
  CHECK(m1d_matching_weight(ps, cost, shared, 2, &w) == M1D_ERR_INPUT);

  m1d_points_free(ps);
  m1d_cost_free(cost);
}

TEST_CASE("full table through the C API") {
  m1d_cost* cost = nullptr;
  m1d_points* ps = nullptr;
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);
  REQUIRE(m1d_points_parse("0 1 2 3", &ps) == M1D_OK);

  m1d_table* table = nullptr;
  REQUIRE(m1d_table_build(ps, cost, &table) == M1D_OK);
  CHECK(m1d_table_cell_count(table) == 4);
  CHECK(m1d_table_top(table) == 2.0);
  double value = 0.0;
  m1d_winner winner = M1D_WINNER_FIRST;
  REQUIRE(m1d_table_lookup(table, 0, 3, &value, &winner) == M1D_OK);
  CHECK(value == 2.0);
  CHECK(winner == M1D_WINNER_SECOND);
  CHECK(m1d_table_lookup(table, 0, 2, &value, &winner) == M1D_ERR_ARGUMENT);

  uint32_t i = 0, j = 0;
  REQUIRE(m1d_table_cell(table, 0, &i, &j, &value, &winner) == M1D_OK);
  CHECK(i == 0);
  CHECK(j == 1);
  CHECK(value == 1.0);
  CHECK(winner == M1D_WINNER_TIE);

  string_guard csv;
  REQUIRE(m1d_table_csv(table, &csv.value) == M1D_OK);
  CHECK(csv.str() == "0,1,1,tie\n1,2,1,tie\n2,3,1,tie\n0,3,2,second\n");

  m1d_table_free(table);
  m1d_points_free(ps);
  m1d_cost_free(cost);
}

TEST_CASE("reference solvers through the C API") {
  m1d_cost* cost = nullptr;
  m1d_points* ps = nullptr;
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);
  REQUIRE(m1d_points_parse("0 4.9 5.1 10", &ps) == M1D_OK);

  m1d_oracle* brute = nullptr;
  REQUIRE(m1d_brute_force(ps, cost, &brute) == M1D_OK);
  CHECK(m1d_oracle_weight(brute) == doctest::Approx(3.6094912556683365));
  CHECK(m1d_oracle_explored(brute) == 3);
  CHECK(m1d_oracle_arc_count(brute) == 2);
  double interval = 0.0;
  CHECK(m1d_oracle_interval(brute, 0, 3, &interval) == M1D_ERR_ARGUMENT);
  m1d_oracle_free(brute);

  m1d_oracle* dp = nullptr;
  REQUIRE(m1d_nested_dp(ps, cost, &dp) == M1D_OK);
  CHECK(m1d_oracle_weight(dp) == doctest::Approx(3.6094912556683365));
  REQUIRE(m1d_oracle_interval(dp, 1, 2, &interval) == M1D_OK);
  CHECK(interval == doctest::Approx(0.44721359549995715));
  uint32_t i = 0, j = 0;
  REQUIRE(m1d_oracle_arc(dp, 0, &i, &j) == M1D_OK);
  CHECK(i == 0);
  CHECK(j == 3);
  m1d_oracle_free(dp);

  // size cap surfaces as M1D_ERR_SIZE
  m1d_points* big = nullptr;
  REQUIRE(m1d_points_parse("0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15", &big) ==
          M1D_OK);
  CHECK(m1d_brute_force(big, cost, &brute) == M1D_ERR_SIZE);
  m1d_points_free(big);

  m1d_points_free(ps);
  m1d_cost_free(cost);
}

TEST_CASE("distinct solves run concurrently") {
  m1d_cost* cost = nullptr;
  REQUIRE(m1d_cost_power(0.5, &cost) == M1D_OK);

  std::vector<m1d_points*> inputs;
  std::vector<double> sequential;
  for (uint64_t seed = 0; seed < 4; ++seed) {
    m1d_gen_spec spec;
    m1d_gen_spec_init(&spec);
    spec.size = 200;
    spec.seed = seed;
    m1d_points* ps = nullptr;
    REQUIRE(m1d_points_generate(&spec, &ps) == M1D_OK);
    inputs.push_back(ps);
    m1d_solution* sol = nullptr;
    REQUIRE(m1d_solve(ps, cost, M1D_MODE_REDUCTION, &sol) == M1D_OK);
    sequential.push_back(m1d_solution_weight(sol));
    m1d_solution_free(sol);
  }

  std::vector<double> parallel(4, 0.0);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      m1d_solution* sol = nullptr;
      if (m1d_solve(inputs[t], cost, M1D_MODE_REDUCTION, &sol) == M1D_OK) {
        parallel[t] = m1d_solution_weight(sol);
        m1d_solution_free(sol);
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(parallel == sequential);

  for (m1d_points* ps : inputs) m1d_points_free(ps);
  m1d_cost_free(cost);
}
