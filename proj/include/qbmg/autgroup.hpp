#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qbmg/axioms.hpp"
#include "qbmg/digraph.hpp"
#include "qbmg/partition.hpp"
#include "qbmg/permutation.hpp"

namespace qbmg {

struct AutOptions {
  std::size_t max_vertices = 64;
  std::uint64_t max_order = kDefaultMaxGroupOrder;
};

/// Edge-preserving bijection; with `color_preserving` also fixes U and W
/// setwise. For finite graphs edge preservation already forces the induced
/// map on edges to be a bijection.
inline bool is_automorphism(const ColoredDigraph& g, const Permutation& p,
                            bool color_preserving = true) {
  if (p.degree() != g.size())
    throw InputError("permutation acts on " + std::to_string(p.degree()) +
                     " points, graph has " + std::to_string(g.size()) + " vertices");
  if (color_preserving)
    for (Index v = 0; v < g.size(); ++v)
      if (g.color(p(v)) != g.color(v)) return false;
  for (Index t = 0; t < g.size(); ++t)
    for (Index h : g.out(t))
      if (!g.has_edge(p(t), p(h))) return false;
  return true;
}

inline bool is_weakly_connected(const ColoredDigraph& g) {
  if (g.size() == 0) return true;
  std::vector<bool> seen(g.size(), false);
  std::vector<Index> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    auto visit = [&](Index x) {
      if (!seen[x]) {
        seen[x] = true;
        ++count;
        stack.push_back(x);
      }
    };
    for (Index x : g.out(v)) visit(x);
    for (Index x : g.in(v)) visit(x);
  }
  return count == g.size();
}

namespace detail {

using Cells = std::vector<std::vector<Index>>;

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

/// Equitable refinement on (out-count, in-count) signatures against every
/// cell, iterated to a fixpoint. Sub-cells are ordered by signature only, so
/// the refinement commutes with automorphisms; the returned trace is equal
/// for equivalent inputs and is used to prune mismatched branches.
class Refiner {
 public:
  explicit Refiner(const ColoredDigraph& g) : g_(g), cell_of_(g.size()) {}

  std::uint64_t refine(Cells& cells) {
    std::uint64_t trace = cells.size();
    std::vector<std::pair<std::vector<std::uint32_t>, Index>> sigs;
    std::vector<std::uint32_t> scratch;
    while (true) {
      for (std::size_t k = 0; k < cells.size(); ++k)
        for (Index v : cells[k]) cell_of_[v] = static_cast<std::uint32_t>(k);
      Cells next;
      next.reserve(cells.size());
      bool split = false;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& cell = cells[k];
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        sigs.clear();
        for (Index v : cell) {
          std::vector<std::uint32_t> sig;
          append_counts(g_.out(v), scratch, sig);
          sig.push_back(UINT32_MAX);
          append_counts(g_.in(v), scratch, sig);
          sigs.emplace_back(std::move(sig), v);
        }
        std::sort(sigs.begin(), sigs.end());
        std::size_t groups = 0;
        for (std::size_t i = 0; i < sigs.size();) {
          std::size_t j = i;
          std::vector<Index> members;
          while (j < sigs.size() && sigs[j].first == sigs[i].first) members.push_back(sigs[j++].second);
          std::uint64_t h = mix(k, members.size());
          for (std::uint32_t x : sigs[i].first) h = mix(h, x);
          trace = mix(trace, h);
          next.push_back(std::move(members));
          ++groups;
          i = j;
        }
        if (groups > 1) split = true;
      }
      cells = std::move(next);
      if (!split) break;
    }
    return trace;
  }

 private:
  void append_counts(std::span<const Index> nbrs, std::vector<std::uint32_t>& scratch,
                     std::vector<std::uint32_t>& sig) const {
    scratch.clear();
    for (Index x : nbrs) scratch.push_back(cell_of_[x]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < scratch.size();) {
      std::size_t j = i;
      while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
      sig.push_back(scratch[i]);
      sig.push_back(static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }

  const ColoredDigraph& g_;
  std::vector<std::uint32_t> cell_of_;
};

inline Cells individualize(const Cells& cells, std::size_t k, Index v) {
  Cells out;
  out.reserve(cells.size() + 1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != k) {
      out.push_back(cells[i]);
      continue;
    }
    out.push_back({v});
    std::vector<Index> rest;
    for (Index x : cells[i])
      if (x != v) rest.push_back(x);
    out.push_back(std::move(rest));
  }
  return out;
}

inline bool same_shape(const Cells& a, const Cells& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size()) return false;
  return true;
}

inline std::size_t first_nonsingleton(const Cells& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (cells[k].size() > 1) return k;
  return cells.size();
}

/// Individualization-refinement search. A leftmost path fixes a base
/// b_0, ..., b_{d-1}; walking it bottom-up, every point of the candidate cell
/// at level i that is not yet in the orbit of b_i gets one search for an
/// automorphism mapping b_i there. The collected generators form a strong
/// generating set, and the group is enumerated as products of transversal
/// elements.
class AutomorphismSearch {
 public:
  AutomorphismSearch(const ColoredDigraph& g, bool color_preserving)
      : g_(g), color_preserving_(color_preserving), refiner_(g) {}

  PermGroup run(const AutOptions& opts) {
    const std::size_t n = g_.size();
    if (n > opts.max_vertices)
      throw CapExceeded("automorphism search is capped at " + std::to_string(opts.max_vertices) +
                        " vertices, graph has " + std::to_string(n));
    if (n == 0) return PermGroup::trivial(0);

    Cells root;
    if (color_preserving_) {
      for (Color c : {Color::U, Color::W}) {
        auto cls = g_.color_class(c);
        if (!cls.empty()) root.push_back(std::move(cls));
      }
    } else {
      root.push_back(g_.color_class(Color::U));
      auto w = g_.color_class(Color::W);
      root.front().insert(root.front().end(), w.begin(), w.end());
      std::sort(root.front().begin(), root.front().end());
    }
    refiner_.refine(root);

    struct Level {
      Cells cells;
      std::size_t cell;
      Index base;
      Cells child;
      std::uint64_t child_trace;
    };
    std::vector<Level> levels;
    Cells cur = root;
    while (true) {
      std::size_t k = first_nonsingleton(cur);
      if (k == cur.size()) break;
      Index b = cur[k].front();
      Cells child = individualize(cur, k, b);
      std::uint64_t t = refiner_.refine(child);
      levels.push_back({cur, k, b, child, t});
      cur = levels.back().child;
    }

    std::vector<Permutation> gens;
    std::vector<std::size_t> gens_at_level(levels.size(), 0);
    for (std::size_t i = levels.size(); i-- > 0;) {
      const Level& L = levels[i];
      std::vector<bool> in_orbit = orbit_mask(n, gens, L.base);
      for (Index x : L.cells[L.cell]) {
        if (in_orbit[x]) continue;
        Cells img = individualize(L.cells, L.cell, x);
        if (refiner_.refine(img) != L.child_trace || !same_shape(img, L.child)) continue;
        if (auto p = find_leaf(L.child, img)) {
          gens.push_back(std::move(*p));
          in_orbit = orbit_mask(n, gens, L.base);
        }
      }
      gens_at_level[i] = gens.size();
    }

    // Schreier transversals along the base.
    std::vector<std::vector<Permutation>> transversals;
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      std::vector<Permutation> level_gens(gens.begin(), gens.begin() + gens_at_level[i]);
      auto tr = transversal(n, level_gens, levels[i].base);
      if (order > opts.max_order / tr.size())
        throw CapExceeded("automorphism group order exceeds " + std::to_string(opts.max_order));
      order *= tr.size();
      if (tr.size() > 1) transversals.push_back(std::move(tr));
    }

    std::vector<Permutation> elements;
    elements.reserve(order);
    enumerate(transversals, 0, Permutation::identity(n), elements);
    return PermGroup::from_elements(n, std::move(gens), std::move(elements));
  }

 private:
  std::optional<Permutation> find_leaf(const Cells& dom, const Cells& img) {
    std::size_t k = first_nonsingleton(dom);
    if (k == dom.size()) {
      std::vector<Index> image(g_.size());
      for (std::size_t i = 0; i < dom.size(); ++i) image[dom[i].front()] = img[i].front();
      Permutation p(std::move(image));
      if (is_automorphism(g_, p, color_preserving_)) return p;
      return std::nullopt;
    }
    Cells dom2 = individualize(dom, k, dom[k].front());
    std::uint64_t t = refiner_.refine(dom2);
    for (Index x : img[k]) {
      Cells img2 = individualize(img, k, x);
      if (refiner_.refine(img2) != t || !same_shape(dom2, img2)) continue;
      if (auto p = find_leaf(dom2, img2)) return p;
    }
    return std::nullopt;
  }

  static std::vector<bool> orbit_mask(std::size_t n, const std::vector<Permutation>& gens,
                                      Index start) {
    std::vector<bool> mask(n, false);
    std::vector<Index> stack{start};
    mask[start] = true;
    while (!stack.empty()) {
      Index x = stack.back();
      stack.pop_back();
      for (const auto& s : gens)
        if (!mask[s(x)]) {
          mask[s(x)] = true;
          stack.push_back(s(x));
        }
    }
    return mask;
  }

  /// One element per orbit point y with t(base) = y.
  static std::vector<Permutation> transversal(std::size_t n, const std::vector<Permutation>& gens,
                                              Index base) {
    std::vector<std::optional<Permutation>> rep(n);
    rep[base] = Permutation::identity(n);
    std::vector<Index> queue{base};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      Index y = queue[q];
      for (const auto& s : gens) {
        Index z = s(y);
        if (!rep[z]) {
          rep[z] = s * *rep[y];
          queue.push_back(z);
        }
      }
    }
    std::vector<Permutation> out;
    for (auto& r : rep)
      if (r) out.push_back(std::move(*r));
    return out;
  }

  static void enumerate(const std::vector<std::vector<Permutation>>& trs, std::size_t level,
                        const Permutation& prefix, std::vector<Permutation>& out) {
    if (level == trs.size()) {
      out.push_back(prefix);
      return;
    }
    for (const auto& t : trs[level]) enumerate(trs, level + 1, prefix * t, out);
  }

  const ColoredDigraph& g_;
  bool color_preserving_;
  Refiner refiner_;
};

}  // namespace detail

/// The group of automorphisms fixing both color classes setwise.
inline PermGroup aut_color_preserving(const ColoredDigraph& g, const AutOptions& opts = {}) {
  return detail::AutomorphismSearch(g, true).run(opts);
}

/// All automorphisms of the digraph, color-switching and (on disconnected
/// graphs) mixed ones included. On connected graphs the color-preserving
/// subgroup has index 1 or 2; a different index raises InternalInconsistency.
inline PermGroup aut_full(const ColoredDigraph& g, const AutOptions& opts = {}) {
  PermGroup full = detail::AutomorphismSearch(g, false).run(opts);
  if (g.size() > 0 && is_weakly_connected(g)) {
    std::uint64_t preserving = 0;
    for (const auto& p : full.elements())
      if (is_automorphism(g, p, true)) ++preserving;
    if (preserving == 0 || (full.order() != preserving && full.order() != 2 * preserving))
      throw InternalInconsistency("color-preserving subgroup has index other than 1 or 2");
  }
  return full;
}

/// Product of the full symmetric groups on the equivalence classes, each
/// acting inside its class and fixing everything else.
inline PermGroup canonical_gamma(const ColoredDigraph& g,
                                 std::uint64_t max_order = kDefaultMaxGroupOrder) {
  std::vector<Permutation> gens;
  const Partition classes = equivalence_classes(g);
  for (const auto& block : classes.blocks())
    for (std::size_t i = 0; i + 1 < block.size(); ++i)
      gens.push_back(Permutation::transposition(g.size(), block[i], block[i + 1]));
  return PermGroup::generated_by(g.size(), std::move(gens), max_order);
}

/// Normality of `sub` in `grp`; requires sub to be contained in grp.
inline bool is_normal(const PermGroup& sub, const PermGroup& grp) {
  if (!sub.is_subgroup_of(grp)) throw PreconditionError("subgroup is not contained in the group");
  for (const auto& g : grp.elements()) {
    Permutation g_inv = g.inverse();
    for (const auto& s : sub.generators())
      if (!sub.contains(g * s * g_inv)) return false;
  }
  return true;
}

/// For a thin 2-qBMG and an automorphism p: every fixed point of p has its
/// in-neighborhood fixed pointwise.
inline bool fixes_in_neighborhood_check(const ColoredDigraph& g, const Permutation& p) {
  if (!is_2qbmg(g) || !is_thin(g))
    throw PreconditionError("fixed-point check requires a thin 2-qBMG");
  if (!is_automorphism(g, p, false)) throw PreconditionError("permutation is not an automorphism");
  for (Index v = 0; v < g.size(); ++v) {
    if (p(v) != v) continue;
    for (Index x : g.in(v))
      if (p(x) != x) return false;
  }
  return true;
}

/// Distinct cyclic subgroups, ordered by their generator.
inline std::vector<PermGroup> cyclic_subgroups(const PermGroup& grp) {
  std::set<std::vector<Permutation>> seen;
  std::vector<PermGroup> result;
  for (const auto& x : grp.elements()) {
    std::vector<Permutation> powers{Permutation::identity(grp.degree())};
    for (Permutation y = x; !y.is_identity(); y = x * y) powers.push_back(y);
    std::sort(powers.begin(), powers.end());
    if (seen.insert(powers).second)
      result.push_back(PermGroup::from_elements(grp.degree(), {x}, std::move(powers)));
  }
  return result;
}

inline constexpr std::uint64_t kMaxLatticeGroupOrder = 200;

/// Every subgroup of a group of order at most 200, built as joins of cyclic
/// subgroups over a precomputed multiplication table.
inline std::vector<PermGroup> all_subgroups(const PermGroup& grp,
                                            std::size_t max_subgroups = 100'000) {
  const std::size_t N = grp.order();
  if (N > kMaxLatticeGroupOrder)
    throw CapExceeded("subgroup lattice enumeration is limited to order " +
                      std::to_string(kMaxLatticeGroupOrder));
  const auto& el = grp.elements();
  auto index_of = [&](const Permutation& p) {
    return static_cast<std::size_t>(std::lower_bound(el.begin(), el.end(), p) - el.begin());
  };
  std::vector<std::vector<std::uint16_t>> mul(N, std::vector<std::uint16_t>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) mul[i][j] = static_cast<std::uint16_t>(index_of(el[i] * el[j]));

  using Mask = std::bitset<kMaxLatticeGroupOrder>;
  struct Sub {
    Mask members;
    std::vector<std::size_t> gens;
  };
  auto close = [&](Mask members, const std::vector<std::size_t>& gens) {
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < N; ++i)
      if (members[i]) queue.push_back(i);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t s : gens) {
        std::size_t z = mul[queue[q]][s];
        if (!members[z]) {
          members[z] = true;
          queue.push_back(z);
        }
      }
    return members;
  };
  auto key = [](const Mask& m) { return m.to_string(); };

  const std::size_t id = index_of(Permutation::identity(grp.degree()));
  std::vector<Sub> subs;
  std::set<std::string> seen;
  std::vector<std::size_t> cyclic_gen;
  for (std::size_t i = 0; i < N; ++i) {
    Mask m;
    m[id] = true;
    m = close(m, {i});
    if (seen.insert(key(m)).second) {
      subs.push_back({m, i == id ? std::vector<std::size_t>{} : std::vector<std::size_t>{i}});
      cyclic_gen.push_back(i);
    }
  }
  for (std::size_t q = 0; q < subs.size(); ++q) {
    for (std::size_t c : cyclic_gen) {
      if (subs[q].members[c]) continue;
      std::vector<std::size_t> gens = subs[q].gens;
      gens.push_back(c);
      Mask m = subs[q].members;
      m[c] = true;
      m = close(m, gens);
      if (seen.insert(key(m)).second) {
        if (subs.size() >= max_subgroups) throw CapExceeded("too many subgroups");
        subs.push_back({m, std::move(gens)});
      }
    }
  }

  std::vector<PermGroup> result;
  for (const auto& s : subs) {
    std::vector<Permutation> gens, members;
    for (std::size_t i : s.gens) gens.push_back(el[i]);
    for (std::size_t i = 0; i < N; ++i)
      if (s.members[i]) members.push_back(el[i]);
    result.push_back(PermGroup::from_elements(grp.degree(), std::move(gens), std::move(members)));
  }
  return result;
}

}  // namespace qbmg
