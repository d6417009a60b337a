#pragma once

#include <cstdint>
#include <string>

#include "scaledyn/configuration.hpp"

namespace scaledyn {

// Plain-text snapshot: one header line "d L n seed step", then n rows of d
// coordinates, all numbers in shortest-round-trip decimal. Reading a written
// snapshot reproduces the configuration bit-exactly.
struct Snapshot {
  Configuration config;
  uint64_t seed = 0;
  uint64_t step = 0;
};

void write_snapshot(const std::string& path, const Configuration& c, uint64_t seed,
                    uint64_t step);
Snapshot read_snapshot(const std::string& path);

}  // namespace scaledyn
