#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qbmg/digraph.hpp"

namespace qbmg {

/// Simple undirected graph over labeled vertices.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(std::vector<VertexId> labels, const std::vector<std::pair<Index, Index>>& edges)
      : labels_(std::move(labels)), adj_(labels_.size(), std::vector<bool>(labels_.size(), false)) {
    for (auto [a, b] : edges) {
      if (a >= labels_.size() || b >= labels_.size() || a == b)
        throw InputError("invalid undirected edge");
      adj_[a][b] = adj_[b][a] = true;
    }
  }

  /// Convenience constructor for hand-written fixtures.
  static UndirectedGraph from_labels(std::vector<VertexId> labels,
                                     const std::vector<LabeledEdge>& edges) {
    std::vector<std::pair<Index, Index>> idx;
    auto find = [&](const VertexId& v) {
      for (Index i = 0; i < labels.size(); ++i)
        if (labels[i] == v) return i;
      throw InputError("unknown vertex '" + v.str() + "'");
    };
    for (const auto& [a, b] : edges) idx.emplace_back(find(a), find(b));
    return UndirectedGraph(std::move(labels), idx);
  }

  std::size_t size() const { return labels_.size(); }
  const VertexId& label(Index v) const { return labels_[v]; }
  bool adjacent(Index a, Index b) const { return adj_[a][b]; }

  /// Edges as (a, b) with a < b in index order.
  std::vector<std::pair<Index, Index>> edges() const {
    std::vector<std::pair<Index, Index>> result;
    for (Index a = 0; a < size(); ++a)
      for (Index b = a + 1; b < size(); ++b)
        if (adj_[a][b]) result.emplace_back(a, b);
    return result;
  }

  std::vector<LabeledEdge> labeled_edges() const {
    std::vector<LabeledEdge> result;
    for (auto [a, b] : edges()) result.emplace_back(labels_[a], labels_[b]);
    return result;
  }

 private:
  std::vector<VertexId> labels_;
  std::vector<std::vector<bool>> adj_;
};

/// Collapses every directed or symmetric edge into one undirected edge.
inline UndirectedGraph underlying_undirected(const ColoredDigraph& g) {
  std::vector<std::pair<Index, Index>> edges;
  for (const Arc& a : g.arcs())
    if (a.tail < a.head || !g.has_edge(a.head, a.tail)) edges.emplace_back(a.tail, a.head);
  return UndirectedGraph(g.labels(), edges);
}

struct LongInducedWitness {
  enum class Kind { Path, Cycle };
  Kind kind;
  std::vector<VertexId> vertices;
};

inline constexpr std::size_t kLongInducedMaxVertices = 64;

/// Looks for an induced path on six vertices or an induced cycle on six
/// vertices. Any longer induced path or cycle contains an induced six-vertex
/// path, so absence of both means the graph is free of induced paths and
/// cycles with at least six vertices.
inline std::optional<LongInducedWitness> long_induced_path_or_cycle(const UndirectedGraph& g) {
  constexpr std::size_t kLen = 6;
  const std::size_t n = g.size();
  if (n > kLongInducedMaxVertices)
    throw CapExceeded("induced path search is capped at " +
                      std::to_string(kLongInducedMaxVertices) + " vertices");
  std::vector<Index> path;
  std::vector<bool> on_path(n, false);
  std::optional<LongInducedWitness> found;

  auto to_labels = [&] {
    std::vector<VertexId> out;
    for (Index v : path) out.push_back(g.label(v));
    return out;
  };

  // Extends `path` (an induced path) by one vertex adjacent to its end only.
  auto extend = [&](auto&& self) -> bool {
    if (path.size() == kLen) {
      found = LongInducedWitness{LongInducedWitness::Kind::Path, to_labels()};
      return true;
    }
    const Index last = path.back();
    for (Index next = 0; next < n; ++next) {
      if (on_path[next] || !g.adjacent(last, next)) continue;
      bool chord_to_first = false, other_chord = false;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (g.adjacent(path[i], next)) {
          if (i == 0)
            chord_to_first = true;
          else
            other_chord = true;
        }
      }
      if (other_chord) continue;
      if (chord_to_first) {
        if (path.size() + 1 == kLen) {
          path.push_back(next);
          found = LongInducedWitness{LongInducedWitness::Kind::Cycle, to_labels()};
          return true;
        }
        continue;
      }
      path.push_back(next);
      on_path[next] = true;
      if (self(self)) return true;
      on_path[next] = false;
      path.pop_back();
    }
    return false;
  };

  for (Index start = 0; start < n; ++start) {
    path.assign(1, start);
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[start] = true;
    if (extend(extend)) return found;
  }
  return std::nullopt;
}

}  // namespace qbmg
