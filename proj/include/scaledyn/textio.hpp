#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include "scaledyn/common.hpp"

namespace scaledyn {

// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) throw Error("cannot parse number: '" + s + "'");
  return v;
}

}  // namespace scaledyn
