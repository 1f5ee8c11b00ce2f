#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include "core/errors.hpp"

namespace match1d {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& token, const char* what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || token.empty()) {
    fail(error_kind::parse,
         std::string("cannot parse ") + what + " from '" + token + "'");
  }
  return value;
}

}  // namespace match1d
