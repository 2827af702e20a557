#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccd/types.hpp"

namespace ccd {

struct WeightedEdge {
  Vertex u;
  Vertex v;
  double weight;
};

struct Neighbor {
  Vertex vertex;
  double weight;
};

/// Undirected graph with non-negative symmetric weights, stored as sorted
/// adjacency lists. Self-loop weight W_vv is kept apart from the neighbor
/// lists and contributes once to d_v.
class WeightedGraph {
public:
  WeightedGraph() = default;

  [[nodiscard]] std::size_t vertex_count() const { return degrees_.size(); }

  /// Neighbors of u excluding u itself, sorted by vertex index.
  [[nodiscard]] std::span<const Neighbor> neighbors(Vertex u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  [[nodiscard]] double self_weight(Vertex u) const { return self_weights_[u]; }
  [[nodiscard]] double degree(Vertex u) const { return degrees_[u]; }
  [[nodiscard]] std::span<const double> degrees() const { return degrees_; }

  /// 2m = sum of all degrees.
  [[nodiscard]] double total_weight() const { return total_weight_; }

  /// W_uv; O(log deg(u)).
  [[nodiscard]] double weight(Vertex u, Vertex v) const;

  /// Undirected edge count, self-loops included, each counted once.
  [[nodiscard]] std::size_t edge_count() const;

  /// Edges with u <= v, in (u, v) order.
  [[nodiscard]] std::vector<WeightedEdge> edges() const;

private:
  friend class GraphAssembler;

  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> self_weights_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
};

/// Builds a graph from (u, v, w) triples. Duplicate and reversed pairs are
/// summed into one undirected weight.
/// Throws std::invalid_argument on p == 0, an out-of-range index, or a
/// negative / non-finite weight.
WeightedGraph build_graph(std::span<const WeightedEdge> edges, std::size_t vertex_count);

/// Per-vertex integer volumes f(v) and the induced special set {v : f(v) > 0}.
class VertexVolumes {
public:
  VertexVolumes() = default;
  explicit VertexVolumes(std::vector<Volume> volumes);

  /// All-zero volumes for p vertices.
  static VertexVolumes zeros(std::size_t p) { return VertexVolumes(std::vector<Volume>(p, 0)); }

  [[nodiscard]] std::size_t size() const { return volumes_.size(); }
  [[nodiscard]] Volume operator[](std::size_t v) const { return volumes_[v]; }
  [[nodiscard]] std::span<const Volume> values() const { return volumes_; }
  [[nodiscard]] std::span<const Vertex> special_set() const { return special_; }
  [[nodiscard]] bool is_special(Vertex v) const { return volumes_[v] > 0; }
  [[nodiscard]] Volume total() const { return total_; }

  friend bool operator==(const VertexVolumes &a, const VertexVolumes &b) {
    return a.volumes_ == b.volumes_;
  }

private:
  std::vector<Volume> volumes_;
  std::vector<Vertex> special_;
  Volume total_ = 0;
};

/// Records how a fold mapped original vertices onto folded vertices.
struct FoldMap {
  /// parent[u] = folded vertex holding original vertex u.
  std::vector<Vertex> parent;
  /// folded_of_label[l] = folded vertex for input label l, or kNoLabel when
  /// l does not occur in the folded assignment.
  std::vector<Vertex> folded_of_label;

  [[nodiscard]] std::size_t folded_count() const;

  /// Identity map on p vertices.
  static FoldMap identity(std::size_t p);
};

struct FoldResult {
  WeightedGraph graph;
  VertexVolumes volumes;
  FoldMap map;
};

/// Contracts each community of `assignment` into one vertex. Folded vertices
/// are numbered by first appearance of their label. The folded self-weight is
/// the ordered-pair internal sum, so singleton modularity on the folded graph
/// equals Q(assignment) on the input graph, and folded volumes are community
/// volume totals.
FoldResult fold(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment);

/// Maps original vertices through `first` then `second`.
FoldMap compose(const FoldMap &first, const FoldMap &second);

/// Pulls a labeling of folded vertices back to the original vertex set.
Assignment unfold(const Assignment &folded_labels, std::span<const Vertex> parent);

} // namespace ccd
