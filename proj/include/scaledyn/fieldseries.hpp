#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scaledyn {

// Time series of fluctuation-field pairings <f_i, X(t)> for a family of test
// functions, tagged with the producing parameters. Text format:
//   # source=<tag> eps=<..> beta=<..> z=<..> L=<..> dt=<..> seed=<..>
//   # fns=<id;id;...>
//   t v1 v2 ...
// with shortest-round-trip decimal of every number.
struct FieldSeries {
  std::string source = "langevin";
  double eps = 1.0;
  double beta = 0.0;
  double z = 1.0;
  double box = 0.0;   // macroscopic torus side
  double dt = 0.0;
  uint64_t seed = 0;
  std::vector<std::string> fn_ids;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[t][fn]

  void write(const std::string& path) const;
  static FieldSeries read(const std::string& path);

  std::vector<double> column(size_t fn) const;
};

}  // namespace scaledyn
