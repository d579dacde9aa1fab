#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qbmg/autgroup.hpp"
#include "qbmg/axioms.hpp"
#include "qbmg/digraph.hpp"
#include "qbmg/partition.hpp"
#include "qbmg/permutation.hpp"

namespace qbmg {

/// Quotient graph plus the projection of every vertex onto its block vertex.
struct QuotientResult {
  ColoredDigraph quotient;
  Partition partition;
  std::vector<Index> projection;  // vertex index -> quotient vertex index

  const VertexId& image(const ColoredDigraph& g, const VertexId& v) const {
    return quotient.label(projection[g.index_of(v)]);
  }
};

inline VertexId quotient_name(const VertexId& smallest) { return VertexId("q_" + smallest.str()); }

namespace detail {

inline std::string block_text(const ColoredDigraph& g, const std::vector<Index>& block) {
  std::string s = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) s += ' ';
    s += g.label(block[i]).str();
  }
  return s + "}";
}

}  // namespace detail

/// One vertex per block, named `q_<smallest member>`; an edge between blocks
/// whenever some member edge joins them. A block of isolated vertices that
/// spans both colors becomes a U vertex.
inline QuotientResult partition_quotient(const ColoredDigraph& g, const Partition& p) {
  if (p.degree() != g.size())
    throw InputError("partition covers " + std::to_string(p.degree()) + " vertices, graph has " +
                     std::to_string(g.size()));
  std::vector<VertexId> u_names, w_names;
  std::vector<VertexId> block_name;
  for (const auto& block : p.blocks()) {
    bool has_u = false, has_w = false, has_edge = false;
    for (Index v : block) {
      (g.color(v) == Color::U ? has_u : has_w) = true;
      if (!g.isolated(v)) has_edge = true;
    }
    if (has_u && has_w && has_edge)
      throw InputError("block " + detail::block_text(g, block) +
                       " mixes colors and contains a vertex with edges");
    VertexId name = quotient_name(g.label(block.front()));
    (has_u ? u_names : w_names).push_back(name);
    block_name.push_back(std::move(name));
  }
  std::set<LabeledEdge> edges;
  for (const Arc& a : g.arcs())
    edges.emplace(block_name[p.block_of(a.tail)], block_name[p.block_of(a.head)]);
  ColoredDigraph q = ColoredDigraph::from_labels(std::move(u_names), std::move(w_names),
                                                 {edges.begin(), edges.end()});
  std::vector<Index> projection(g.size());
  for (Index v = 0; v < g.size(); ++v) projection[v] = q.index_of(block_name[p.block_of(v)]);
  return {std::move(q), p, std::move(projection)};
}

inline QuotientResult classical_quotient(const ColoredDigraph& g) {
  return partition_quotient(g, equivalence_classes(g));
}

/// Rejects a generator that is not an automorphism, or that moves a vertex
/// with edges across colors. Isolated vertices may move freely since the
/// canonical product group permutes the whole isolated class.
inline void require_quotient_group(const ColoredDigraph& g, const PermGroup& grp) {
  if (grp.degree() != g.size())
    throw InputError("group acts on " + std::to_string(grp.degree()) + " points, graph has " +
                     std::to_string(g.size()) + " vertices");
  for (const auto& s : grp.generators()) {
    for (const Arc& a : g.arcs())
      if (!g.has_edge(s(a.tail), s(a.head)))
        throw InputError("generator " + format_permutation(g, s) + " maps edge " +
                         g.label(a.tail).str() + "->" + g.label(a.head).str() + " to non-edge " +
                         g.label(s(a.tail)).str() + "->" + g.label(s(a.head)).str());
    for (Index v = 0; v < g.size(); ++v)
      if (!g.isolated(v) && g.color(s(v)) != g.color(v))
        throw InputError("generator " + format_permutation(g, s) + " moves vertex " +
                         g.label(v).str() + " to the other color class");
  }
}

/// Quotient by the orbits of a group of color-preserving automorphisms.
inline QuotientResult gamma_quotient(const ColoredDigraph& g, const PermGroup& grp) {
  require_quotient_group(g, grp);
  return partition_quotient(g, orbits(grp));
}

/// Action of a group on the orbits of a normal subgroup.
struct InheritedGroup {
  QuotientResult quotient;
  PermGroup group;             // acts on quotient vertex indices
  std::uint64_t kernel_order;  // elements acting trivially on the orbits
};

/// Image of Aut_I(g) acting on the orbits of `norm`. The image has order
/// |Aut_I| / |norm| exactly when the kernel of the action is `norm` itself;
/// `kernel_order` reports the actual kernel size.
inline InheritedGroup inherited_group(const ColoredDigraph& g, const PermGroup& norm,
                                      const AutOptions& opts = {}) {
  PermGroup aut = aut_color_preserving(g, opts);
  if (!norm.is_subgroup_of(aut))
    throw PreconditionError("normal subgroup is not contained in Aut_I");
  if (!is_normal(norm, aut)) throw PreconditionError("subgroup is not normal in Aut_I");
  QuotientResult q = gamma_quotient(g, norm);
  const std::size_t k = q.quotient.size();

  auto induced = [&](const Permutation& p) {
    std::vector<Index> image(k);
    for (Index v = 0; v < g.size(); ++v) image[q.projection[v]] = q.projection[p(v)];
    return Permutation(std::move(image));
  };
  std::set<Permutation> images;
  std::uint64_t kernel = 0;
  for (const auto& p : aut.elements()) {
    Permutation ip = induced(p);
    if (ip.is_identity()) ++kernel;
    images.insert(std::move(ip));
  }
  for (const auto& ip : images)
    if (!is_automorphism(q.quotient, ip, true))
      throw InternalInconsistency("induced permutation is not an automorphism of the quotient");
  std::vector<Permutation> gens;
  for (const auto& s : aut.generators()) gens.push_back(induced(s));
  PermGroup group = PermGroup::from_elements(k, std::move(gens), {images.begin(), images.end()});
  return {std::move(q), std::move(group), kernel};
}

enum class OrbitPairKind { Stars, SymmetricMatching };

struct OrbitPairShape {
  std::vector<VertexId> u_orbit;
  std::vector<VertexId> w_orbit;
  OrbitPairKind kind = OrbitPairKind::Stars;
  Color source = Color::U;  // stars only: color of the star centres
  std::size_t fan_out = 0;  // stars only
};

/// Classifies the edges between every U-orbit and W-orbit of `grp` in a thin
/// 2-qBMG: disjoint stars with sources on one side, or a perfect matching of
/// symmetric edges. Any other shape raises InternalInconsistency.
inline std::vector<OrbitPairShape> verify_thin_orbit_structure(const ColoredDigraph& g,
                                                               const PermGroup& grp,
                                                               bool color_preserving = true) {
  if (!is_2qbmg(g)) throw PreconditionError("graph is not a 2-qBMG");
  if (!is_thin(g)) throw PreconditionError("graph is not thin");
  for (const auto& s : grp.generators())
    if (!is_automorphism(g, s, color_preserving))
      throw PreconditionError("generator " + format_permutation(g, s) + " is not an automorphism");

  const Partition orb = orbits(grp);
  std::vector<OrbitPairShape> result;
  for (const auto& a : orb.blocks()) {
    for (const auto& b : orb.blocks()) {
      auto mono = [&](const std::vector<Index>& blk, Color c) {
        return std::ranges::all_of(blk, [&](Index v) { return g.color(v) == c; });
      };
      if (!mono(a, Color::U) || !mono(b, Color::W)) continue;
      std::set<Index> in_a(a.begin(), a.end()), in_b(b.begin(), b.end());
      bool forward = false, backward = false, asymmetric = false;
      for (Index u : a) {
        for (Index w : b) {
          const bool uw = g.has_edge(u, w), wu = g.has_edge(w, u);
          forward |= uw;
          backward |= wu;
          if (uw != wu) asymmetric = true;
        }
      }
      if (!forward && !backward) continue;

      OrbitPairShape shape;
      for (Index v : a) shape.u_orbit.push_back(g.label(v));
      for (Index v : b) shape.w_orbit.push_back(g.label(v));

      auto partners = [&](Index v, const std::vector<Index>& other, bool out) {
        std::size_t c = 0;
        for (Index x : other) c += out ? g.has_edge(v, x) : g.has_edge(x, v);
        return c;
      };

      if (!asymmetric) {
        bool matching = true;
        for (Index u : a) matching &= partners(u, b, true) == 1;
        for (Index w : b) matching &= partners(w, a, true) == 1;
        if (matching) {
          shape.kind = OrbitPairKind::SymmetricMatching;
          result.push_back(std::move(shape));
          continue;
        }
      } else if (forward != backward) {
        const auto& src = forward ? a : b;
        const auto& dst = forward ? b : a;
        bool stars = true;
        for (Index y : dst) stars &= partners(y, src, false) == 1;
        const std::size_t d = partners(src.front(), dst, true);
        for (Index x : src) stars &= partners(x, dst, true) == d;
        if (stars && d * src.size() == dst.size()) {
          shape.kind = OrbitPairKind::Stars;
          shape.source = forward ? Color::U : Color::W;
          shape.fan_out = d;
          result.push_back(std::move(shape));
          continue;
        }
      }
      throw InternalInconsistency("orbit pair " + detail::block_text(g, a) + " / " +
                                  detail::block_text(g, b) +
                                  " is neither disjoint stars nor a symmetric matching");
    }
  }
  return result;
}

}  // namespace qbmg
