#pragma once

#include <string>
#include <vector>

#include "core/errors.hpp"

namespace match1d {

enum class cost_kind { power, log1p, piecewise_linear };

struct breakpoint {
  double t = 0.0;
  double v = 0.0;
};

enum class violation_kind {
  concavity,     // chord above the graph
  zero_at_zero,  // g(0) != 0
  positivity,    // g(t) <= 0 for a sampled t > 0
  monotonicity,  // g decreasing between samples
};

struct violation {
  violation_kind kind = violation_kind::concavity;
  double t1 = 0.0;
  double t2 = 0.0;
  double lambda = 0.0;
  double lhs = 0.0;  // g at the combined point
  double rhs = 0.0;  // chord value
};

// Outcome of probing a generator on a deterministic grid. Violations are
// reported, never thrown.
struct validation_report {
  bool valid = true;
  bool strict_concavity = false;  // false also for merely concave generators
  long probes = 0;
  std::vector<violation> violations;

  std::string summary() const;
};

// A shift-invariant distance d(x, y) = scale * g(|x - y|) built from a
// nonnegative concave generator g with g(0) = 0. Immutable after
// construction; safe to share across threads.
class cost_spec {
 public:
  // Checked factories: construction fails rather than producing a spec that
  // breaks the generator invariants.
  static cost_spec power(double alpha, double scale = 1.0);
  static cost_spec log1p_cost(double scale);
  static cost_spec piecewise(std::vector<breakpoint> points, double scale = 1.0);

  // Unchecked factories skip the concavity/monotonicity checks (the shape
  // must still be evaluable). Intended for feeding validate() with
  // deliberately broken generators.
  static cost_spec power_unchecked(double alpha, double scale = 1.0);
  static cost_spec piecewise_unchecked(std::vector<breakpoint> points,
                                       double scale = 1.0);

  // Text forms: "power:<alpha>", "log1p:<scale>", "pwl:<path>" where the file
  // holds whitespace-separated "t v" pairs, one breakpoint per line.
  static cost_spec parse(const std::string& text);
  std::string text() const;

  // scale * g(|x - y|); throws error_kind::argument on non-finite input.
  double eval(double x, double y) const;
  // scale * g(t) for t >= 0.
  double eval_delta(double t) const;

  // Probes concavity, positivity and monotonicity of g on an evenly spaced
  // grid of probe_count points over [0, t_max], combining every grid pair at
  // lambda in {1/4, 1/2, 3/4}.
  validation_report validate(int probe_count, double t_max) const;

  cost_kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double scale() const noexcept { return scale_; }
  const std::vector<breakpoint>& breakpoints() const noexcept { return points_; }

 private:
  cost_spec() = default;

  cost_kind kind_ = cost_kind::power;
  double alpha_ = 0.5;
  double scale_ = 1.0;
  std::vector<breakpoint> points_;
  std::string source_path_;  // pwl only: file the breakpoints came from
};

// Absolute slack used by validate() when comparing chord values.
inline constexpr double kValidationEpsilon = 1e-9;

}  // namespace match1d
