#include "core/cost.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/text.hpp"

namespace match1d {

namespace {

void check_breakpoint_shape(const std::vector<breakpoint>& pts) {
  if (pts.size() < 2) {
    fail(error_kind::validation, "piecewise cost needs at least two breakpoints");
  }
  if (pts.front().t != 0.0 || pts.front().v != 0.0) {
    fail(error_kind::validation, "piecewise cost must start at breakpoint (0, 0)");
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!std::isfinite(pts[k].t) || !std::isfinite(pts[k].v)) {
      fail(error_kind::validation, "piecewise breakpoint is not finite");
    }
    if (k > 0 && !(pts[k].t > pts[k - 1].t)) {
      fail(error_kind::validation,
           "piecewise breakpoint abscissae must be strictly increasing");
    }
  }
}

double segment_slope(const std::vector<breakpoint>& pts, std::size_t k) {
  return (pts[k + 1].v - pts[k].v) / (pts[k + 1].t - pts[k].t);
}

}  // namespace

cost_spec cost_spec::power(double alpha, double scale) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 1.0) {
    fail(error_kind::argument, "power exponent must lie in (0, 1], got " +
                                   format_double(alpha));
  }
  return power_unchecked(alpha, scale);
}

cost_spec cost_spec::power_unchecked(double alpha, double scale) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    fail(error_kind::argument, "power exponent must be positive and finite");
  }
  if (!std::isfinite(scale) || !(scale > 0.0)) {
    fail(error_kind::argument, "cost scale must be positive and finite");
  }
  cost_spec c;
  c.kind_ = cost_kind::power;
  c.alpha_ = alpha;
  c.scale_ = scale;
  return c;
}

cost_spec cost_spec::log1p_cost(double scale) {
  if (!std::isfinite(scale) || !(scale > 0.0)) {
    fail(error_kind::argument, "log1p scale must be positive and finite");
  }
  cost_spec c;
  c.kind_ = cost_kind::log1p;
  c.scale_ = scale;
  return c;
}

cost_spec cost_spec::piecewise(std::vector<breakpoint> points, double scale) {
  check_breakpoint_shape(points);
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double slope = segment_slope(points, k);
    if (!(slope >= 0.0)) {
      fail(error_kind::validation, "piecewise cost must be nondecreasing");
    }
    if (k == 0 && !(slope > 0.0)) {
      fail(error_kind::validation,
           "piecewise cost must be positive away from zero (first slope is 0)");
    }
    if (slope > prev_slope) {
      fail(error_kind::validation,
           "piecewise slopes must be non-increasing (convex kink at t = " +
               format_double(points[k].t) + ")");
    }
    prev_slope = slope;
  }
  return piecewise_unchecked(std::move(points), scale);
}

cost_spec cost_spec::piecewise_unchecked(std::vector<breakpoint> points,
                                         double scale) {
  check_breakpoint_shape(points);
  if (!std::isfinite(scale) || !(scale > 0.0)) {
    fail(error_kind::argument, "cost scale must be positive and finite");
  }
  cost_spec c;
  c.kind_ = cost_kind::piecewise_linear;
  c.scale_ = scale;
  c.points_ = std::move(points);
  return c;
}

cost_spec cost_spec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    fail(error_kind::parse, "cost spec '" + text +
                                "' is missing ':' (expected power:<alpha>, "
                                "log1p:<scale> or pwl:<path>)");
  }
  const std::string head = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (head == "power") {
    return power(parse_double(rest, "power exponent"));
  }
  if (head == "log1p") {
    return log1p_cost(parse_double(rest, "log1p scale"));
  }
  if (head == "pwl") {
    std::ifstream in(rest);
    if (!in) {
      fail(error_kind::io, "cannot open breakpoint file '" + rest + "'");
    }
    std::vector<breakpoint> pts;
    double t = 0.0, v = 0.0;
    while (in >> t >> v) {
      pts.push_back({t, v});
    }
    if (!in.eof()) {
      fail(error_kind::parse,
           "malformed breakpoint file '" + rest + "' (expected 't v' pairs)");
    }
    cost_spec c = piecewise(std::move(pts));
    c.source_path_ = rest;
    return c;
  }
  fail(error_kind::parse, "unknown cost kind '" + head + "'");
}

std::string cost_spec::text() const {
  switch (kind_) {
    case cost_kind::power:
      return "power:" + format_double(alpha_);
    case cost_kind::log1p:
      return "log1p:" + format_double(scale_);
    case cost_kind::piecewise_linear:
      return source_path_.empty() ? std::string("pwl:<inline>")
                                  : "pwl:" + source_path_;
  }
  return "?";
}

double cost_spec::eval(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    fail(error_kind::argument, "cost arguments must be finite");
  }
  return eval_delta(std::abs(x - y));
}

double cost_spec::eval_delta(double t) const {
  switch (kind_) {
    case cost_kind::power:
      return scale_ * std::pow(t, alpha_);
    case cost_kind::log1p:
      return scale_ * std::log1p(t);
    case cost_kind::piecewise_linear: {
      // Locate the segment containing t; past the last breakpoint the final
      // slope continues.
      auto it = std::upper_bound(
          points_.begin(), points_.end(), t,
          [](double x, const breakpoint& b) { return x < b.t; });
      std::size_t k = static_cast<std::size_t>(it - points_.begin());
      if (k > 0) --k;
      if (k + 1 >= points_.size()) k = points_.size() - 2;
      const double slope = segment_slope(points_, k);
      return scale_ * (points_[k].v + slope * (t - points_[k].t));
    }
  }
  return 0.0;
}

validation_report cost_spec::validate(int probe_count, double t_max) const {
  if (probe_count < 3) {
    fail(error_kind::argument, "probe_count must be at least 3");
  }
  if (!std::isfinite(t_max) || !(t_max > 0.0)) {
    fail(error_kind::argument, "t_max must be positive and finite");
  }

  validation_report report;
  std::vector<double> ts(static_cast<std::size_t>(probe_count));
  std::vector<double> gs(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ts[k] = t_max * static_cast<double>(k) / static_cast<double>(probe_count - 1);
    gs[k] = eval_delta(ts[k]);
  }

  if (gs[0] != 0.0) {
    report.violations.push_back(
        {violation_kind::zero_at_zero, 0.0, 0.0, 0.0, gs[0], 0.0});
  }
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (!(gs[k] > 0.0)) {
      report.violations.push_back(
          {violation_kind::positivity, ts[k], ts[k], 0.0, gs[k], 0.0});
    }
    if (gs[k] < gs[k - 1] - kValidationEpsilon) {
      report.violations.push_back(
          {violation_kind::monotonicity, ts[k - 1], ts[k], 0.0, gs[k], gs[k - 1]});
    }
  }

  static constexpr double kLambdas[] = {0.25, 0.5, 0.75};
  double min_strict_margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      for (double lambda : kLambdas) {
        const double mix = lambda * ts[a] + (1.0 - lambda) * ts[b];
        const double lhs = eval_delta(mix);
        const double rhs = lambda * gs[a] + (1.0 - lambda) * gs[b];
        ++report.probes;
        if (lhs < rhs - kValidationEpsilon) {
          report.violations.push_back(
              {violation_kind::concavity, ts[a], ts[b], lambda, lhs, rhs});
        }
        if (lambda == 0.5) {
          min_strict_margin = std::min(min_strict_margin, lhs - rhs);
        }
      }
    }
  }

  report.valid = report.violations.empty();
  report.strict_concavity =
      report.valid && min_strict_margin > kValidationEpsilon;
  return report;
}

std::string validation_report::summary() const {
  std::ostringstream out;
  out << (valid ? "valid" : "invalid") << ", " << violations.size()
      << " violation(s) over " << probes << " probes";
  if (valid && !strict_concavity) {
    out << "; strictness not detected";
  }
  return out.str();
}

}  // namespace match1d
