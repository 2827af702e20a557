#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/types.hpp"

namespace ccd {

/// Planted-partition instance description.
struct PlantedSpec {
  std::vector<std::size_t> block_sizes;
  double p_in = 0.5;
  double p_out = 0.05;
  std::int64_t weight_min = 1;
  std::int64_t weight_max = 1;
  /// Special vertices per block; empty means none anywhere.
  std::vector<std::size_t> specials_per_block;
  Volume volume_min = 1;
  Volume volume_max = 1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when the spec is degenerate.
  void validate() const;
};

struct PlantedInstance {
  std::vector<WeightedEdge> edges;
  WeightedGraph graph;
  VertexVolumes volumes;
  Assignment ground_truth;
};

/// Blocks occupy consecutive vertex ranges. Each pair inside a block is an
/// edge with probability p_in, across blocks with p_out; edge weights and
/// special-vertex volumes are uniform integers in their bounds, and each
/// block's specials are a uniformly chosen subset of the quota's size.
PlantedInstance generate(const PlantedSpec &spec);

} // namespace ccd
