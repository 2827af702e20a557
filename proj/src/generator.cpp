#include "ccd/generator.hpp"

#include <numeric>
#include <stdexcept>

#include "ccd/rng.hpp"

namespace ccd {

void PlantedSpec::validate() const {
  if (block_sizes.empty()) {
    throw std::invalid_argument("planted spec has no blocks");
  }
  for (std::size_t s : block_sizes) {
    if (s == 0) {
      throw std::invalid_argument("planted spec has an empty block");
    }
  }
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
    throw std::invalid_argument("planted spec needs 0 <= p_out < p_in <= 1");
  }
  if (weight_min < 1 || weight_max < weight_min) {
    throw std::invalid_argument("planted spec needs 1 <= weight_min <= weight_max");
  }
  if (!specials_per_block.empty()) {
    if (specials_per_block.size() != block_sizes.size()) {
      throw std::invalid_argument("specials_per_block must list one quota per block");
    }
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
      if (specials_per_block[b] > block_sizes[b]) {
        throw std::invalid_argument("special quota exceeds block size");
      }
    }
  }
  if (volume_min < 1 || volume_max < volume_min) {
    throw std::invalid_argument("planted spec needs 1 <= volume_min <= volume_max");
  }
}

PlantedInstance generate(const PlantedSpec &spec) {
  spec.validate();
  CounterRng rng(spec.seed, 0);
  const std::size_t p = std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), std::size_t{0});

  std::vector<Label> truth(p);
  std::vector<std::size_t> start(spec.block_sizes.size() + 1, 0);
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
    start[b + 1] = start[b] + spec.block_sizes[b];
    for (std::size_t v = start[b]; v < start[b + 1]; ++v) {
      truth[v] = static_cast<Label>(b);
    }
  }

  const auto weight_span = static_cast<std::uint64_t>(spec.weight_max - spec.weight_min + 1);
  PlantedInstance out;
  for (Vertex u = 0; u < p; ++u) {
    for (Vertex v = u + 1; v < p; ++v) {
      const double prob = truth[u] == truth[v] ? spec.p_in : spec.p_out;
      if (rng.uniform() < prob) {
        const auto w = spec.weight_min + static_cast<std::int64_t>(rng.below(weight_span));
        out.edges.push_back({u, v, static_cast<double>(w)});
      }
    }
  }

  std::vector<Volume> volumes(p, 0);
  const auto volume_span = static_cast<std::uint64_t>(spec.volume_max - spec.volume_min + 1);
  for (std::size_t b = 0; b < spec.specials_per_block.size(); ++b) {
    std::vector<Vertex> members(spec.block_sizes[b]);
    std::iota(members.begin(), members.end(), static_cast<Vertex>(start[b]));
    rng.shuffle(std::span<Vertex>(members));
    for (std::size_t i = 0; i < spec.specials_per_block[b]; ++i) {
      volumes[members[i]] = spec.volume_min + static_cast<Volume>(rng.below(volume_span));
    }
  }

  out.graph = build_graph(out.edges, p);
  out.volumes = VertexVolumes(std::move(volumes));
  out.ground_truth = Assignment(std::move(truth));
  return out;
}

} // namespace ccd
