#include "ccd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace ccd {

// Turns per-vertex rows (neighbor lists without the diagonal, possibly
// unsorted) into the CSR layout and derives degrees.
class GraphAssembler {
public:
  static WeightedGraph assemble(std::vector<std::vector<Neighbor>> rows, std::vector<double> self_weights,
                                std::optional<double> total_weight = std::nullopt) {
    WeightedGraph g;
    const std::size_t p = rows.size();
    g.offsets_.assign(p + 1, 0);
    for (std::size_t u = 0; u < p; ++u) {
      g.offsets_[u + 1] = g.offsets_[u] + rows[u].size();
    }
    g.adjacency_.reserve(g.offsets_[p]);
    g.degrees_.assign(p, 0.0);
    double total = 0.0;
    for (std::size_t u = 0; u < p; ++u) {
      auto &row = rows[u];
      std::sort(row.begin(), row.end(), [](const Neighbor &a, const Neighbor &b) { return a.vertex < b.vertex; });
      double d = self_weights[u];
      for (const Neighbor &n : row) {
        d += n.weight;
        g.adjacency_.push_back(n);
      }
      g.degrees_[u] = d;
      total += d;
    }
    g.self_weights_ = std::move(self_weights);
    g.total_weight_ = total_weight.value_or(total);
    return g;
  }
};

double WeightedGraph::weight(Vertex u, Vertex v) const {
  if (u == v) {
    return self_weights_[u];
  }
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor &n, Vertex target) { return n.vertex < target; });
  return (it != row.end() && it->vertex == v) ? it->weight : 0.0;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t loops = 0;
  for (double w : self_weights_) {
    loops += w > 0.0 ? 1 : 0;
  }
  return adjacency_.size() / 2 + loops;
}

std::vector<WeightedEdge> WeightedGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    if (self_weights_[u] > 0.0) {
      out.push_back({u, u, self_weights_[u]});
    }
    for (const Neighbor &n : neighbors(u)) {
      if (n.vertex > u) {
        out.push_back({u, n.vertex, n.weight});
      }
    }
  }
  return out;
}

WeightedGraph build_graph(std::span<const WeightedEdge> edges, std::size_t vertex_count) {
  if (vertex_count == 0) {
    throw std::invalid_argument("graph must have at least one vertex");
  }
  std::vector<std::vector<Neighbor>> rows(vertex_count);
  std::vector<double> self(vertex_count, 0.0);
  for (const auto &e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") out of range for " + std::to_string(vertex_count) + " vertices");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") has invalid weight " + std::to_string(e.weight));
    }
    if (e.u == e.v) {
      self[e.u] += e.weight;
    } else {
      rows[e.u].push_back({e.v, e.weight});
      rows[e.v].push_back({e.u, e.weight});
    }
  }
  // Merge duplicates; the stable sort keeps the input order of repeated pairs
  // so both endpoints accumulate in the same order.
  for (auto &row : rows) {
    std::stable_sort(row.begin(), row.end(), [](const Neighbor &a, const Neighbor &b) { return a.vertex < b.vertex; });
    std::vector<Neighbor> merged;
    merged.reserve(row.size());
    for (const Neighbor &n : row) {
      if (!merged.empty() && merged.back().vertex == n.vertex) {
        merged.back().weight += n.weight;
      } else {
        merged.push_back(n);
      }
    }
    row = std::move(merged);
  }
  return GraphAssembler::assemble(std::move(rows), std::move(self));
}

VertexVolumes::VertexVolumes(std::vector<Volume> volumes) : volumes_(std::move(volumes)) {
  for (std::size_t v = 0; v < volumes_.size(); ++v) {
    if (volumes_[v] < 0) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has negative volume");
    }
    if (volumes_[v] > 0) {
      special_.push_back(static_cast<Vertex>(v));
    }
    total_ += volumes_[v];
  }
}

std::size_t FoldMap::folded_count() const {
  std::size_t n = 0;
  for (Vertex f : parent) {
    n = std::max<std::size_t>(n, static_cast<std::size_t>(f) + 1);
  }
  return n;
}

FoldMap FoldMap::identity(std::size_t p) {
  FoldMap map;
  map.parent.resize(p);
  map.folded_of_label.resize(p);
  for (std::size_t v = 0; v < p; ++v) {
    map.parent[v] = static_cast<Vertex>(v);
    map.folded_of_label[v] = static_cast<Vertex>(v);
  }
  return map;
}

FoldResult fold(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment) {
  const std::size_t p = graph.vertex_count();
  if (assignment.size() != p || volumes.size() != p) {
    throw std::invalid_argument("fold: assignment/volume length does not match the graph");
  }
  assignment.validate(p);

  FoldMap map;
  map.folded_of_label.assign(p, kNoLabel);
  map.parent.resize(p);
  Vertex k = 0;
  for (std::size_t u = 0; u < p; ++u) {
    const Label l = assignment[u];
    if (map.folded_of_label[l] == kNoLabel) {
      map.folded_of_label[l] = k++;
    }
    map.parent[u] = map.folded_of_label[l];
  }
  const std::size_t q = k;

  std::vector<std::vector<Vertex>> members(q);
  for (std::size_t u = 0; u < p; ++u) {
    members[map.parent[u]].push_back(static_cast<Vertex>(u));
  }

  std::vector<std::vector<Neighbor>> rows(q);
  std::vector<double> self(q, 0.0);
  std::vector<Volume> folded_volumes(q, 0);
  std::vector<double> acc(q, 0.0);
  std::vector<bool> touched(q, false);
  std::vector<Vertex> touched_list;
  for (Vertex i = 0; i < q; ++i) {
    touched_list.clear();
    for (Vertex u : members[i]) {
      folded_volumes[i] += volumes[u];
      self[i] += graph.self_weight(u);
      for (const Neighbor &n : graph.neighbors(u)) {
        const Vertex j = map.parent[n.vertex];
        if (j == i) {
          self[i] += n.weight;
          continue;
        }
        if (!touched[j]) {
          touched[j] = true;
          touched_list.push_back(j);
        }
        acc[j] += n.weight;
      }
    }
    rows[i].reserve(touched_list.size());
    for (Vertex j : touched_list) {
      rows[i].push_back({j, acc[j]});
      acc[j] = 0.0;
      touched[j] = false;
    }
  }

  // Rows i and j accumulate W_ij in different orders; mirror the upper
  // triangle so the folded matrix is exactly symmetric.
  const auto by_vertex = [](const Neighbor &a, const Neighbor &b) { return a.vertex < b.vertex; };
  for (auto &row : rows) {
    std::sort(row.begin(), row.end(), by_vertex);
  }
  for (Vertex i = 0; i < q; ++i) {
    for (Neighbor &n : rows[i]) {
      if (n.vertex < i) {
        const auto &upper = rows[n.vertex];
        auto it = std::lower_bound(upper.begin(), upper.end(), Neighbor{i, 0.0}, by_vertex);
        n.weight = it->weight;
      }
    }
  }

  // Carry 2m over unchanged; re-summing folded degrees could round differently.
  FoldResult result{GraphAssembler::assemble(std::move(rows), std::move(self), graph.total_weight()),
                    VertexVolumes(std::move(folded_volumes)), std::move(map)};
  return result;
}

FoldMap compose(const FoldMap &first, const FoldMap &second) {
  FoldMap out;
  out.parent.resize(first.parent.size());
  for (std::size_t u = 0; u < first.parent.size(); ++u) {
    const Vertex mid = first.parent[u];
    if (mid >= second.parent.size()) {
      throw std::invalid_argument("compose: fold maps do not chain");
    }
    out.parent[u] = second.parent[mid];
  }
  out.folded_of_label.assign(first.folded_of_label.size(), kNoLabel);
  for (std::size_t l = 0; l < first.folded_of_label.size(); ++l) {
    const Vertex mid = first.folded_of_label[l];
    if (mid != kNoLabel) {
      out.folded_of_label[l] = second.parent[mid];
    }
  }
  return out;
}

Assignment unfold(const Assignment &folded_labels, std::span<const Vertex> parent) {
  std::vector<Label> out(parent.size());
  for (std::size_t u = 0; u < parent.size(); ++u) {
    if (parent[u] >= folded_labels.size()) {
      throw std::invalid_argument("unfold: parent index out of range");
    }
    out[u] = folded_labels[parent[u]];
  }
  return Assignment(std::move(out));
}

} // namespace ccd
