#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "qbmg/autgroup.hpp"
#include "qbmg/axioms.hpp"
#include "qbmg/digraph.hpp"
#include "qbmg/partition.hpp"

namespace qbmg {

/// Keeps the U -> W edge of every symmetric pair.
inline ColoredDigraph uw_orientation(const ColoredDigraph& g) {
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs())
    if (g.color(a.tail) == Color::U || !g.has_edge(a.head, a.tail)) arcs.push_back(a);
  return with_arcs(g, std::move(arcs));
}

inline constexpr std::size_t kMaxSymmetricEdges = 20;

/// Lazy sequence of all 2^k orientations, k = number of symmetric pairs.
/// Pairs (a, b) are sorted with a < b; bit i of the counter set means the
/// i-th pair keeps b -> a instead of a -> b.
class Orientations {
 public:
  explicit Orientations(const ColoredDigraph& g) : g_(g), pairs_(symmetric_pairs(g)) {
    if (pairs_.size() > kMaxSymmetricEdges)
      throw CapExceeded("orientation enumeration is capped at " +
                        std::to_string(kMaxSymmetricEdges) + " symmetric edges, graph has " +
                        std::to_string(pairs_.size()));
    for (const Arc& a : g.arcs())
      if (!g.has_edge(a.head, a.tail)) fixed_.push_back(a);
  }

  std::uint64_t count() const { return std::uint64_t{1} << pairs_.size(); }

  ColoredDigraph operator[](std::uint64_t k) const {
    std::vector<Arc> arcs = fixed_;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      auto [a, b] = pairs_[i];
      if ((k >> i) & 1U)
        arcs.push_back({b, a});
      else
        arcs.push_back({a, b});
    }
    return with_arcs(g_, std::move(arcs));
  }

 private:
  const ColoredDigraph& g_;
  std::vector<std::pair<Index, Index>> pairs_;
  std::vector<Arc> fixed_;
};

/// Materialized enumeration, for small inputs and tests.
inline std::vector<ColoredDigraph> enumerate_orientations(const ColoredDigraph& g) {
  Orientations o(g);
  std::vector<ColoredDigraph> out;
  for (std::uint64_t k = 0; k < o.count(); ++k) out.push_back(o[k]);
  return out;
}

struct TopologicalResult {
  std::optional<std::vector<VertexId>> order;
  std::vector<VertexId> cycle;  // set when no order exists; first vertex not repeated
};

/// Kahn's procedure taking the smallest available vertex first.
inline TopologicalResult topological_order(const ColoredDigraph& g) {
  if (!symmetric_pairs(g).empty()) throw InputError("graph has symmetric edges");
  std::vector<std::size_t> indeg(g.size());
  std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
  for (Index v = 0; v < g.size(); ++v)
    if ((indeg[v] = g.in_degree(v)) == 0) ready.push(v);
  std::vector<VertexId> order;
  while (!ready.empty()) {
    Index v = ready.top();
    ready.pop();
    order.push_back(g.label(v));
    for (Index h : g.out(v))
      if (--indeg[h] == 0) ready.push(h);
  }
  if (order.size() == g.size()) return {std::move(order), {}};

  // Every unprocessed vertex keeps an unprocessed in-neighbor; walking
  // backwards from one of them must revisit a vertex.
  Index v = 0;
  while (indeg[v] == 0) ++v;
  std::vector<std::size_t> seen_at(g.size(), SIZE_MAX);
  std::vector<Index> walk;
  while (seen_at[v] == SIZE_MAX) {
    seen_at[v] = walk.size();
    walk.push_back(v);
    for (Index t : g.in(v))
      if (indeg[t] != 0) {
        v = t;
        break;
      }
  }
  std::vector<VertexId> cycle;
  for (std::size_t i = walk.size(); i-- > seen_at[v];) cycle.push_back(g.label(walk[i]));
  return {std::nullopt, std::move(cycle)};
}

struct OrientationReport {
  bool star = false;
  bool thin = false;
  bool star_checked = false;          // (a) ran
  bool all_orientations_qbmg = true;  // (a)
  bool all_orientations_acyclic = true;
  bool uw_aut_equal = true;  // (b)
  std::uint64_t orientation_count = 0;
  std::uint64_t aut_order = 0;
  std::uint64_t uw_aut_order = 0;
  std::vector<std::string> diagnostics;

  bool ok() const { return all_orientations_qbmg && uw_aut_equal; }
};

/// (a) with property (*), every orientation is a 2-qBMG; acyclicity of all
/// orientations is recorded whenever the graph has (*) or is thin.
/// (b) Aut_I is unchanged by the UW-orientation.
inline OrientationReport check_orientation_theorems(const ColoredDigraph& g,
                                                    const AutOptions& opts = {}) {
  if (!is_2qbmg(g)) throw PreconditionError("orientation checks require a 2-qBMG");
  OrientationReport r;
  r.star = satisfies_star(g).holds;
  r.thin = is_thin(g);
  if (r.star || r.thin) {
    Orientations all(g);
    r.orientation_count = all.count();
    r.star_checked = r.star;
    for (std::uint64_t k = 0; k < all.count(); ++k) {
      ColoredDigraph o = all[k];
      if (r.star && !is_2qbmg(o)) {
        r.all_orientations_qbmg = false;
        r.diagnostics.push_back("orientation " + std::to_string(k) + " is not a 2-qBMG");
      }
      if (!topological_order(o).order) {
        r.all_orientations_acyclic = false;
        r.diagnostics.push_back("orientation " + std::to_string(k) + " has a directed cycle");
      }
    }
  }
  PermGroup a = aut_color_preserving(g, opts);
  PermGroup b = aut_color_preserving(uw_orientation(g), opts);
  r.aut_order = a.order();
  r.uw_aut_order = b.order();
  r.uw_aut_equal = a == b;
  if (!r.uw_aut_equal)
    r.diagnostics.push_back("Aut_I changes under UW-orientation: " + std::to_string(a.order()) +
                            " vs " + std::to_string(b.order()));
  return r;
}

}  // namespace qbmg
