#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "xcover/instance.hpp"

namespace xcover {

struct GraphInput {
  std::uint32_t num_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct GenConfig {
  double element_fraction = 0.30;
  std::size_t max_cycle_length = 12;  // in vertices
  std::size_t max_cycles = 10000;     // per component
  std::uint64_t seed = 0;
};

// Edge list: first line "<n> <m>", then m lines "<u> <v>" with 0-based
// vertices. Rejects self-loops, repeated edges and out-of-range vertices.
GraphInput parse_graph(std::istream& in);
GraphInput load_graph(const std::string& path);

// Per connected component: the lowest vertex is special, a seeded sample of
// ceil(fraction * |component|) vertices become columns, and every simple
// cycle through the special vertex (up to the caps) that meets an element
// vertex becomes a row holding the element vertices on it.
Instance generate(const GraphInput& g, const GenConfig& cfg);

// k disjoint copies of base; names get a ".<copy>" suffix.
Instance block_diagonal(const Instance& base, std::size_t k);

}  // namespace xcover
