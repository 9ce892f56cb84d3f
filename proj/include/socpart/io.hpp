#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "socpart/instance.hpp"

namespace socpart {

// Sectioned plain-text instance format:
//
//   # comment
//   NAME intro
//   CONES
//   3 2
//   A
//   1 0 0 0 0        (one row of A per line)
//   ...
//   b
//   1 0 1
//   c
//   ...
//   cbar
//   ...
//   DOMAIN -inf inf  (optional)
//
// Infinite values are accepted only in DOMAIN; NaN is rejected everywhere.
ParametricInstance parse_instance(std::string_view text);

// Inverse of parse_instance. Numbers use the shortest representation that
// reads back to the same double.
std::string write_instance(const ParametricInstance& inst);

ParametricInstance load_instance_file(const std::string& path);

// Instances shipped with the library.
std::vector<std::string> bundled_names();
ParametricInstance bundled_instance(const std::string& name);

// Shortest round-trip decimal form of v ("inf"/"-inf" for infinities).
std::string format_shortest(double v);

}  // namespace socpart
