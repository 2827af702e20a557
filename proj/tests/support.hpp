#pragma once

#include <cstdint>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/rng.hpp"
#include "ccd/types.hpp"

namespace ccd::test {

inline std::vector<WeightedEdge> triangle_edges() { return {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}; }

// Two unit triangles {0,1,2} and {3,4,5} joined by the bridge (2,3).
inline std::vector<WeightedEdge> barbell_edges() {
  return {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {3, 5, 1.0}, {4, 5, 1.0}, {2, 3, 1.0}};
}

inline WeightedGraph triangle() { return build_graph(triangle_edges(), 3); }
inline WeightedGraph barbell() { return build_graph(barbell_edges(), 6); }

// Each pair is an edge with probability `density`, integer weight in
// [w_min, w_max]; optional self-loops. Retries until the graph has an edge.
inline WeightedGraph random_graph(CounterRng &rng, std::size_t p, double density = 0.5, int w_min = 1,
                                  int w_max = 3, double self_loop_prob = 0.0) {
  for (;;) {
    std::vector<WeightedEdge> edges;
    for (Vertex u = 0; u < p; ++u) {
      if (rng.uniform() < self_loop_prob) {
        edges.push_back({u, u, static_cast<double>(w_min + static_cast<int>(rng.below(w_max - w_min + 1)))});
      }
      for (Vertex v = u + 1; v < p; ++v) {
        if (rng.uniform() < density) {
          edges.push_back({u, v, static_cast<double>(w_min + static_cast<int>(rng.below(w_max - w_min + 1)))});
        }
      }
    }
    if (!edges.empty()) {
      return build_graph(edges, p);
    }
  }
}

inline Assignment random_assignment(CounterRng &rng, std::size_t p, std::size_t labels) {
  std::vector<Label> x(p);
  for (auto &l : x) {
    l = static_cast<Label>(rng.below(labels));
  }
  return Assignment(std::move(x));
}

inline VertexVolumes random_volumes(CounterRng &rng, std::size_t p, std::size_t specials, Volume max_volume) {
  std::vector<Vertex> order(p);
  for (std::size_t i = 0; i < p; ++i) {
    order[i] = static_cast<Vertex>(i);
  }
  rng.shuffle(std::span<Vertex>(order));
  std::vector<Volume> f(p, 0);
  for (std::size_t i = 0; i < specials && i < p; ++i) {
    f[order[i]] = 1 + static_cast<Volume>(rng.below(static_cast<std::uint64_t>(max_volume)));
  }
  return VertexVolumes(std::move(f));
}

} // namespace ccd::test
