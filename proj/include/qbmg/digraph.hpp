#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbmg/error.hpp"
#include "qbmg/vertex.hpp"

namespace qbmg {

enum class Color : std::uint8_t { U, W };

inline Color opposite(Color c) { return c == Color::U ? Color::W : Color::U; }

/// Directed edge between two dense indices.
struct Arc {
  Index tail;
  Index head;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

using LabeledEdge = std::pair<VertexId, VertexId>;

/// Immutable two-colored loopless digraph in which every edge joins the two
/// color classes. Vertices are stored sorted by token order, so dense index
/// order and token order coincide.
class ColoredDigraph {
 public:
  ColoredDigraph() = default;

  /// Builds a graph from explicit color classes and an edge list.
  /// Throws InputError on duplicates, unknown endpoints, loops, or
  /// same-color edges.
  static ColoredDigraph from_labels(std::vector<VertexId> color_u, std::vector<VertexId> color_w,
                                    const std::vector<LabeledEdge>& edges) {
    std::vector<std::pair<VertexId, Color>> all;
    all.reserve(color_u.size() + color_w.size());
    for (auto& v : color_u) all.emplace_back(std::move(v), Color::U);
    for (auto& v : color_w) all.emplace_back(std::move(v), Color::W);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i].first == all[i - 1].first)
        throw InputError("vertex '" + all[i].first.str() + "' listed twice");
    }
    std::vector<VertexId> labels;
    std::vector<Color> colors;
    labels.reserve(all.size());
    colors.reserve(all.size());
    for (auto& [v, c] : all) {
      labels.push_back(std::move(v));
      colors.push_back(c);
    }
    ColoredDigraph g(std::move(labels), std::move(colors));
    std::vector<Arc> arcs;
    arcs.reserve(edges.size());
    for (const auto& [tail, head] : edges) arcs.push_back({g.index_of(tail), g.index_of(head)});
    g.set_arcs(std::move(arcs));
    return g;
  }

  /// Builds a graph over already-sorted labels. `labels` must be strictly
  /// increasing in token order.
  static ColoredDigraph from_indices(std::vector<VertexId> labels, std::vector<Color> colors,
                                     std::vector<Arc> arcs) {
    for (std::size_t i = 1; i < labels.size(); ++i) {
      if (!(labels[i - 1] < labels[i]))
        throw InputError("labels must be distinct and sorted in token order");
    }
    ColoredDigraph g(std::move(labels), std::move(colors));
    g.set_arcs(std::move(arcs));
    return g;
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const VertexId& label(Index v) const { return labels_[v]; }
  const std::vector<VertexId>& labels() const { return labels_; }
  Color color(Index v) const { return colors_[v]; }
  const std::vector<Color>& colors() const { return colors_; }

  std::optional<Index> find(const VertexId& v) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
    if (it == labels_.end() || !(*it == v)) return std::nullopt;
    return static_cast<Index>(it - labels_.begin());
  }

  Index index_of(const VertexId& v) const {
    if (auto i = find(v)) return *i;
    throw InputError("unknown vertex '" + v.str() + "'");
  }

  std::span<const Index> out(Index v) const {
    return {out_adj_.data() + out_off_[v], out_off_[v + 1] - out_off_[v]};
  }
  std::span<const Index> in(Index v) const {
    return {in_adj_.data() + in_off_[v], in_off_[v + 1] - in_off_[v]};
  }
  std::size_t out_degree(Index v) const { return out_off_[v + 1] - out_off_[v]; }
  std::size_t in_degree(Index v) const { return in_off_[v + 1] - in_off_[v]; }
  bool isolated(Index v) const { return out_degree(v) == 0 && in_degree(v) == 0; }

  bool has_edge(Index tail, Index head) const {
    return (matrix_[tail * words_ + head / 64] >> (head % 64)) & 1U;
  }
  bool adjacent(Index a, Index b) const { return has_edge(a, b) || has_edge(b, a); }

  /// All arcs sorted by (tail, head).
  std::vector<Arc> arcs() const {
    std::vector<Arc> result;
    result.reserve(edge_count_);
    for (Index v = 0; v < size(); ++v)
      for (Index h : out(v)) result.push_back({v, h});
    return result;
  }

  std::vector<Index> color_class(Color c) const {
    std::vector<Index> result;
    for (Index v = 0; v < size(); ++v)
      if (colors_[v] == c) result.push_back(v);
    return result;
  }

  std::vector<VertexId> color_labels(Color c) const {
    std::vector<VertexId> result;
    for (Index v : color_class(c)) result.push_back(labels_[v]);
    return result;
  }

  std::vector<LabeledEdge> labeled_edges() const {
    std::vector<LabeledEdge> result;
    result.reserve(edge_count_);
    for (const Arc& a : arcs()) result.emplace_back(labels_[a.tail], labels_[a.head]);
    return result;
  }

  friend bool operator==(const ColoredDigraph& a, const ColoredDigraph& b) {
    return a.labels_ == b.labels_ && a.colors_ == b.colors_ && a.out_adj_ == b.out_adj_ &&
           a.out_off_ == b.out_off_;
  }

 private:
  ColoredDigraph(std::vector<VertexId> labels, std::vector<Color> colors)
      : labels_(std::move(labels)), colors_(std::move(colors)) {
    if (labels_.size() != colors_.size()) throw InputError("label/color count mismatch");
  }

  void set_arcs(std::vector<Arc> arcs) {
    const std::size_t n = labels_.size();
    std::sort(arcs.begin(), arcs.end());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& a = arcs[i];
      if (a.tail >= n || a.head >= n) throw InputError("edge endpoint out of range");
      if (a.tail == a.head) throw InputError("loop at vertex '" + labels_[a.tail].str() + "'");
      if (colors_[a.tail] == colors_[a.head])
        throw InputError("edge '" + labels_[a.tail].str() + "' -> '" + labels_[a.head].str() +
                         "' joins two vertices of the same color");
      if (i > 0 && arcs[i - 1] == a)
        throw InputError("duplicate edge '" + labels_[a.tail].str() + "' -> '" +
                         labels_[a.head].str() + "'");
    }
    edge_count_ = arcs.size();
    words_ = (n + 63) / 64;
    matrix_.assign(n * words_, 0);
    out_off_.assign(n + 1, 0);
    in_off_.assign(n + 1, 0);
    for (const Arc& a : arcs) {
      ++out_off_[a.tail + 1];
      ++in_off_[a.head + 1];
      matrix_[a.tail * words_ + a.head / 64] |= std::uint64_t{1} << (a.head % 64);
    }
    std::partial_sum(out_off_.begin(), out_off_.end(), out_off_.begin());
    std::partial_sum(in_off_.begin(), in_off_.end(), in_off_.begin());
    out_adj_.resize(arcs.size());
    in_adj_.resize(arcs.size());
    std::vector<std::size_t> out_fill(out_off_.begin(), out_off_.end() - 1);
    std::vector<std::size_t> in_fill(in_off_.begin(), in_off_.end() - 1);
    // Arcs are sorted by (tail, head); in-lists come out sorted by tail too.
    for (const Arc& a : arcs) {
      out_adj_[out_fill[a.tail]++] = a.head;
      in_adj_[in_fill[a.head]++] = a.tail;
    }
  }

  std::vector<VertexId> labels_;
  std::vector<Color> colors_;
  std::vector<std::size_t> out_off_{0};
  std::vector<std::size_t> in_off_{0};
  std::vector<Index> out_adj_;
  std::vector<Index> in_adj_;
  std::vector<std::uint64_t> matrix_;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// Label-level queries

inline std::set<VertexId> out_neighbors(const ColoredDigraph& g, const VertexId& v) {
  std::set<VertexId> result;
  for (Index h : g.out(g.index_of(v))) result.insert(g.label(h));
  return result;
}

inline std::set<VertexId> in_neighbors(const ColoredDigraph& g, const VertexId& v) {
  std::set<VertexId> result;
  for (Index t : g.in(g.index_of(v))) result.insert(g.label(t));
  return result;
}

/// Index pairs {a, b}, a < b, joined in both directions.
inline std::vector<std::pair<Index, Index>> symmetric_pairs(const ColoredDigraph& g) {
  std::vector<std::pair<Index, Index>> result;
  for (Index a = 0; a < g.size(); ++a)
    for (Index b : g.out(a))
      if (a < b && g.has_edge(b, a)) result.emplace_back(a, b);
  return result;
}

/// Unordered pairs joined by edges in both directions, smaller token first.
inline std::vector<LabeledEdge> symmetric_edges(const ColoredDigraph& g) {
  std::vector<LabeledEdge> result;
  for (auto [a, b] : symmetric_pairs(g)) result.emplace_back(g.label(a), g.label(b));
  return result;
}

inline ColoredDigraph induced_subgraph_indices(const ColoredDigraph& g, std::vector<Index> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Index> remap(g.size(), static_cast<Index>(-1));
  std::vector<VertexId> labels;
  std::vector<Color> colors;
  for (Index v : keep) {
    if (v >= g.size()) throw InputError("vertex index out of range");
    remap[v] = static_cast<Index>(labels.size());
    labels.push_back(g.label(v));
    colors.push_back(g.color(v));
  }
  std::vector<Arc> arcs;
  for (Index v : keep)
    for (Index h : g.out(v))
      if (remap[h] != static_cast<Index>(-1)) arcs.push_back({remap[v], remap[h]});
  return ColoredDigraph::from_indices(std::move(labels), std::move(colors), std::move(arcs));
}

inline ColoredDigraph induced_subgraph(const ColoredDigraph& g, const std::set<VertexId>& vs) {
  std::vector<Index> keep;
  keep.reserve(vs.size());
  for (const VertexId& v : vs) keep.push_back(g.index_of(v));
  return induced_subgraph_indices(g, std::move(keep));
}

/// Same vertices and colors, a new arc list.
inline ColoredDigraph with_arcs(const ColoredDigraph& g, std::vector<Arc> arcs) {
  return ColoredDigraph::from_indices(g.labels(), g.colors(), std::move(arcs));
}

}  // namespace qbmg
