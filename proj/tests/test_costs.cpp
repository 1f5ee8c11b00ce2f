#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "core/cost.hpp"
#include "test_util.hpp"

using match1d::breakpoint;
using match1d::cost_spec;
using match1d::error;
using match1d::error_kind;
using match1d::violation_kind;

TEST_CASE("power cost evaluates g(|x - y|)") {
  const cost_spec c = cost_spec::power(0.5);
  CHECK(c.eval(0.0, 0.0) == 0.0);
  CHECK(c.eval(0.0, 4.0) == 2.0);
  CHECK(c.eval(3.0, 13.0) == doctest::Approx(3.1622776601683795).epsilon(1e-12));
  CHECK(c.eval(13.0, 3.0) == c.eval(3.0, 13.0));
}

TEST_CASE("constructor parameter ranges") {
  CHECK_NOTHROW(cost_spec::power(1.0));
  CHECK_NOTHROW(cost_spec::power(0.01));
  CHECK_THROWS_AS(cost_spec::power(1.5), error);
  CHECK_THROWS_AS(cost_spec::power(0.0), error);
  CHECK_THROWS_AS(cost_spec::power(-0.5), error);
  CHECK_THROWS_AS(cost_spec::log1p_cost(0.0), error);
  CHECK_THROWS_AS(cost_spec::log1p_cost(-1.0), error);
  try {
    cost_spec::power(2.0);
    FAIL("unreachable");
  } catch (const error& e) {
    CHECK(e.kind() == error_kind::argument);
  }
}

TEST_CASE("log1p cost") {
  const cost_spec c = cost_spec::log1p_cost(1.0);
  CHECK(c.eval(0.0, 0.0) == 0.0);
  // ln(1 + (e - 1)) = 1
  CHECK(c.eval(0.0, std::exp(1.0) - 1.0) == 1.0);
  const cost_spec scaled = cost_spec::log1p_cost(2.5);
  CHECK(scaled.eval(0.0, 1.0) == doctest::Approx(2.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("piecewise-linear cost") {
  const cost_spec c = cost_spec::piecewise({{0, 0}, {1, 1}, {3, 2}});
  CHECK(c.eval(0.0, 0.5) == 0.5);
  CHECK(c.eval(0.0, 1.0) == 1.0);
  CHECK(c.eval(0.0, 2.0) == 1.5);
  CHECK(c.eval(0.0, 3.0) == 2.0);
  // beyond the last breakpoint the final slope continues
  CHECK(c.eval(0.0, 5.0) == 3.0);

  CHECK_THROWS_AS(cost_spec::piecewise({{0, 0}, {1, 1}, {2, 3}}), error);  // convex
  CHECK_THROWS_AS(cost_spec::piecewise({{0, 0}, {1, 1}, {2, 0.5}}), error);  // decreasing
  CHECK_THROWS_AS(cost_spec::piecewise({{0, 0}, {0, 1}}), error);  // t not increasing
  CHECK_THROWS_AS(cost_spec::piecewise({{0.5, 0}, {1, 1}}), error);  // missing origin
  CHECK_THROWS_AS(cost_spec::piecewise({{0, 0}, {1, 0}, {2, 1}}), error);  // flat at 0
}

TEST_CASE("non-finite evaluation arguments") {
  const cost_spec c = cost_spec::power(0.5);
  CHECK_THROWS_AS(c.eval(std::nan(""), 0.0), error);
  CHECK_THROWS_AS(c.eval(0.0, std::numeric_limits<double>::infinity()), error);
}

TEST_CASE("validation: sqrt is strictly concave") {
  const auto report = cost_spec::power(0.5).validate(33, 10.0);
  CHECK(report.valid);
  CHECK(report.strict_concavity);
  CHECK(report.violations.empty());
}

TEST_CASE("validation: linear cost is concave but not strictly") {
  const auto report = cost_spec::power(1.0).validate(33, 10.0);
  CHECK(report.valid);
  CHECK_FALSE(report.strict_concavity);
  CHECK(report.summary().find("strictness not detected") != std::string::npos);
}

TEST_CASE("validation: convex kink is flagged with its triple") {
  const auto bad = cost_spec::piecewise_unchecked({{0, 0}, {1, 1}, {2, 3}});
  const auto report = bad.validate(17, 2.0);
  CHECK_FALSE(report.valid);
  REQUIRE_FALSE(report.violations.empty());
  bool found_concavity = false;
  for (const auto& v : report.violations) {
    if (v.kind == violation_kind::concavity) {
      found_concavity = true;
      CHECK(v.lhs < v.rhs - match1d::kValidationEpsilon);
    }
  }
  CHECK(found_concavity);
}

TEST_CASE("validation preconditions") {
  const cost_spec c = cost_spec::power(0.5);
  CHECK_THROWS_AS(c.validate(2, 1.0), error);
  CHECK_THROWS_AS(c.validate(10, 0.0), error);
}

TEST_CASE("text forms round-trip") {
  CHECK(cost_spec::power(0.5).text() == "power:0.5");
  CHECK(cost_spec::power(0.3).text() == "power:0.3");
  CHECK(cost_spec::log1p_cost(1.0).text() == "log1p:1");
  const cost_spec parsed = cost_spec::parse("power:0.7");
  CHECK(parsed.kind() == match1d::cost_kind::power);
  CHECK(parsed.alpha() == 0.7);
  CHECK_THROWS_AS(cost_spec::parse("power:1.5"), error);
  CHECK_THROWS_AS(cost_spec::parse("power"), error);
  CHECK_THROWS_AS(cost_spec::parse("sqrt:0.5"), error);
  CHECK_THROWS_AS(cost_spec::parse("power:abc"), error);
  CHECK_THROWS_AS(cost_spec::parse("pwl:/no/such/file"), error);
}

TEST_CASE("pwl file parsing") {
  const std::string path = "pwl_test_points.txt";
  {
    std::ofstream out(path);
    out << "0 0\n1 1\n4 2\n";
  }
  const cost_spec c = cost_spec::parse("pwl:" + path);
  CHECK(c.eval(0.0, 1.0) == 1.0);
  CHECK(c.eval(0.0, 4.0) == 2.0);
  CHECK(c.text() == "pwl:" + path);
  std::remove(path.c_str());
}

TEST_CASE("symmetry and exact shift invariance") {
  std::mt19937_64 rng(42);
  const cost_spec costs[] = {cost_spec::power(0.5), cost_spec::power(0.9),
                             cost_spec::log1p_cost(1.0),
                             cost_spec::piecewise({{0, 0}, {1, 1}, {3, 2}})};
  for (const auto& c : costs) {
    for (int trial = 0; trial < 200; ++trial) {
      const double x = 200.0 * testutil::unit(rng) - 100.0;
      const double y = 200.0 * testutil::unit(rng) - 100.0;
      CHECK(c.eval(x, y) == c.eval(y, x));
      // Dyadic shifts of dyadic coordinates keep |x - y| bit-exact, so the
      // evaluation must agree exactly; only the difference is consumed.
      const double xq = std::round(x * 1024.0) / 1024.0;
      const double yq = std::round(y * 1024.0) / 1024.0;
      const double t = std::round(4096.0 * testutil::unit(rng)) / 8.0;
      CHECK(c.eval(xq + t, yq + t) == c.eval(xq, yq));
    }
  }
}

TEST_CASE("arbitrary shifts agree within tolerance") {
  std::mt19937_64 rng(43);
  const cost_spec c = cost_spec::power(0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const double x = 100.0 * testutil::unit(rng);
    const double y = 100.0 * testutil::unit(rng);
    const double t = 2000.0 * testutil::unit(rng) - 1000.0;
    CHECK(testutil::close(c.eval(x + t, y + t), c.eval(x, y), 1e-7));
  }
}

TEST_CASE("power scaling law") {
  std::mt19937_64 rng(44);
  for (double alpha : {0.3, 0.5, 0.7, 0.9, 1.0}) {
    const cost_spec c = cost_spec::power(alpha);
    for (int trial = 0; trial < 200; ++trial) {
      const double x = 100.0 * testutil::unit(rng);
      const double y = 100.0 * testutil::unit(rng);
      const double s = 0.01 + 100.0 * testutil::unit(rng);
      const double lhs = c.eval(s * x, s * y);
      const double rhs = std::pow(s, alpha) * c.eval(x, y);
      CHECK(std::abs(lhs - rhs) <=
            1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    }
  }
}

TEST_CASE("triangle inequality on sampled triples") {
  std::mt19937_64 rng(45);
  const cost_spec costs[] = {cost_spec::power(0.5), cost_spec::power(1.0),
                             cost_spec::log1p_cost(2.0),
                             cost_spec::piecewise({{0, 0}, {1, 1}, {3, 2}})};
  for (const auto& c : costs) {
    for (int trial = 0; trial < 500; ++trial) {
      const double x = 20.0 * testutil::unit(rng);
      const double y = 20.0 * testutil::unit(rng);
      const double z = 20.0 * testutil::unit(rng);
      CHECK(c.eval(x, y) + c.eval(y, z) >=
            c.eval(x, z) - match1d::kValidationEpsilon);
    }
  }
}
