#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qbmg/digraph.hpp"
#include "qbmg/permutation.hpp"

namespace qbmg {

/// Finite bijection between two label sets, listed in domain order.
class BijectionTable {
 public:
  BijectionTable() = default;

  BijectionTable(std::vector<VertexId> domain, std::vector<VertexId> image) {
    if (domain.size() != image.size())
      throw InputError("bijection table has " + std::to_string(domain.size()) + " sources but " +
                       std::to_string(image.size()) + " images");
    std::set<VertexId> seen;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (!map_.emplace(domain[i], image[i]).second)
        throw InputError("bijection table maps '" + domain[i].str() + "' twice");
      if (!seen.insert(image[i]).second)
        throw InputError("bijection table hits '" + image[i].str() + "' twice");
    }
  }

  static BijectionTable from_pairs(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<VertexId> d, i;
    for (const auto& [a, b] : pairs) {
      d.push_back(a);
      i.push_back(b);
    }
    return BijectionTable(std::move(d), std::move(i));
  }

  static BijectionTable identity(const std::vector<VertexId>& domain) {
    return BijectionTable(domain, domain);
  }

  std::size_t size() const { return map_.size(); }
  const std::map<VertexId, VertexId>& pairs() const { return map_; }

  std::vector<VertexId> domain() const {
    std::vector<VertexId> out;
    for (const auto& [a, b] : map_) out.push_back(a);
    return out;
  }

  /// Image set in token order.
  std::vector<VertexId> codomain() const {
    std::vector<VertexId> out;
    for (const auto& [a, b] : map_) out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
  }

  const VertexId& operator()(const VertexId& x) const {
    auto it = map_.find(x);
    if (it == map_.end()) throw InputError("'" + x.str() + "' is outside the table's domain");
    return it->second;
  }

  BijectionTable inverse() const {
    std::vector<VertexId> d, i;
    for (const auto& [a, b] : map_) {
      d.push_back(b);
      i.push_back(a);
    }
    return BijectionTable(std::move(d), std::move(i));
  }

  /// (a * b)(x) = a(b(x)); the image of b must be exactly the domain of a.
  friend BijectionTable operator*(const BijectionTable& a, const BijectionTable& b) {
    if (b.codomain() != a.domain()) throw InputError("tables do not compose: image/domain differ");
    std::vector<VertexId> d, i;
    for (const auto& [x, y] : b.map_) {
      d.push_back(x);
      i.push_back(a(y));
    }
    return BijectionTable(std::move(d), std::move(i));
  }

  friend bool operator==(const BijectionTable&, const BijectionTable&) = default;

 private:
  std::map<VertexId, VertexId> map_;
};

inline std::string format_table(const BijectionTable& t) {
  std::string s;
  for (const auto& [a, b] : t.pairs()) {
    if (!s.empty()) s += ' ';
    s += a.str() + "->" + b.str();
  }
  return s;
}

/// Layer data: f_{i,i}: U_i -> W_i for i = 1..s and g_{j,j+1}: W_j -> U_{j+1}
/// for j = 1..s-1. Classes are read off the tables.
struct LayeredSpec {
  int s = 0;
  int m = 0;
  std::vector<BijectionTable> f_diag;
  std::vector<BijectionTable> g_step;

  std::vector<VertexId> u_class(int i) const { return f_diag.at(i - 1).domain(); }
  std::vector<VertexId> w_class(int j) const { return f_diag.at(j - 1).codomain(); }

  void validate() const {
    if (s < 1) throw InputError("layer count must be at least 1");
    if (m < 1) throw InputError("class size must be at least 1");
    if (f_diag.size() != static_cast<std::size_t>(s))
      throw InputError("expected " + std::to_string(s) + " diagonal tables");
    if (g_step.size() != static_cast<std::size_t>(s - 1))
      throw InputError("expected " + std::to_string(s - 1) + " step tables");
    std::set<VertexId> all;
    for (int i = 1; i <= s; ++i) {
      if (f_diag[i - 1].size() != static_cast<std::size_t>(m))
        throw InputError("table f " + std::to_string(i) + " " + std::to_string(i) + " has " +
                         std::to_string(f_diag[i - 1].size()) + " entries, expected " +
                         std::to_string(m));
      for (const auto& v : u_class(i)) all.insert(v);
      for (const auto& v : w_class(i)) all.insert(v);
    }
    if (all.size() != static_cast<std::size_t>(2 * s * m))
      throw InputError("layer classes are not pairwise disjoint");
    for (int j = 1; j < s; ++j) {
      const auto& g = g_step[j - 1];
      if (g.domain() != w_class(j))
        throw InputError("table g " + std::to_string(j) + " " + std::to_string(j + 1) +
                         " must map W" + std::to_string(j));
      if (g.codomain() != u_class(j + 1))
        throw InputError("table g " + std::to_string(j) + " " + std::to_string(j + 1) +
                         " must map onto U" + std::to_string(j + 1));
    }
  }
};

/// f_{i,j}: U_i -> W_j for i <= j, built as f_{j,j} g_{j-1,j} f_{i,j-1}.
inline BijectionTable composite_f(const LayeredSpec& spec, int i, int j) {
  if (i < 1 || j > spec.s || i > j) throw InputError("composite f needs 1 <= i <= j <= s");
  BijectionTable t = spec.f_diag[i - 1];
  for (int k = i + 1; k <= j; ++k) t = spec.f_diag[k - 1] * (spec.g_step[k - 2] * t);
  return t;
}

/// g_{j,d}: W_j -> U_d for j < d, built as g_{d-1,d} f_{d-1,d-1} g_{j,d-1}.
inline BijectionTable composite_g(const LayeredSpec& spec, int j, int d) {
  if (j < 1 || d > spec.s || j >= d) throw InputError("composite g needs 1 <= j < d <= s");
  BijectionTable t = spec.g_step[j - 1];
  for (int k = j + 2; k <= d; ++k) t = spec.g_step[k - 2] * (spec.f_diag[k - 2] * t);
  return t;
}

/// Edges u -> f_{i,j}(u) for u in U_i, i <= j, and w -> g_{j,d}(w) for w in
/// W_j, j < d; m s^2 edges in total.
inline ColoredDigraph layered(const LayeredSpec& spec) {
  spec.validate();
  std::vector<VertexId> us, ws;
  std::vector<LabeledEdge> edges;
  for (int i = 1; i <= spec.s; ++i) {
    for (const auto& v : spec.u_class(i)) us.push_back(v);
    for (const auto& v : spec.w_class(i)) ws.push_back(v);
    for (int j = i; j <= spec.s; ++j) {
      const BijectionTable f = composite_f(spec, i, j);
      for (const auto& [u, w] : f.pairs()) edges.emplace_back(u, w);
    }
    for (int d = i + 1; d <= spec.s; ++d) {
      const BijectionTable g = composite_g(spec, i, d);
      for (const auto& [w, u] : g.pairs()) edges.emplace_back(w, u);
    }
  }
  return ColoredDigraph::from_labels(std::move(us), std::move(ws), edges);
}

/// Two layers: u1 -> alpha(u1), w1 -> beta(w1), u2 -> gamma(u2) and the chord
/// u1 -> gamma beta alpha(u1).
inline LayeredSpec two_layer_spec(int m, BijectionTable alpha, BijectionTable beta,
                                  BijectionTable gamma) {
  LayeredSpec spec{2, m, {std::move(alpha), std::move(gamma)}, {std::move(beta)}};
  spec.validate();
  return spec;
}

inline ColoredDigraph two_layer(int m, const BijectionTable& alpha, const BijectionTable& beta,
                                const BijectionTable& gamma) {
  return layered(two_layer_spec(m, alpha, beta, gamma));
}

/// alpha: U1 -> W1, beta: W1 -> U2, gamma: W2 -> U2.
struct N2TrivialSpec {
  int m = 0;
  BijectionTable alpha;
  BijectionTable beta;
  BijectionTable gamma;

  std::vector<VertexId> u1() const { return alpha.domain(); }
  std::vector<VertexId> w1() const { return alpha.codomain(); }
  std::vector<VertexId> u2() const { return beta.codomain(); }
  std::vector<VertexId> w2() const { return gamma.domain(); }

  /// gamma^-1 beta alpha: U1 -> W2.
  BijectionTable delta() const { return gamma.inverse() * (beta * alpha); }

  void validate() const {
    if (m < 1) throw InputError("class size must be at least 1");
    for (const auto* t : {&alpha, &beta, &gamma})
      if (t->size() != static_cast<std::size_t>(m))
        throw InputError("every table needs " + std::to_string(m) + " entries");
    if (beta.domain() != w1()) throw InputError("beta must map W1, the image of alpha");
    if (gamma.codomain() != u2()) throw InputError("gamma must map onto U2, the image of beta");
    std::set<VertexId> all;
    for (const auto& cls : {u1(), w1(), u2(), w2()}) all.insert(cls.begin(), cls.end());
    if (all.size() != static_cast<std::size_t>(4 * m))
      throw InputError("classes U1, W1, U2, W2 are not pairwise disjoint");
  }
};

/// Edges u1 -> alpha(u1), w1 -> beta(w1), w2 -> gamma(w2), u1 -> delta(u1).
inline ColoredDigraph n2_trivial_layer(const N2TrivialSpec& spec) {
  spec.validate();
  std::vector<VertexId> us = spec.u1(), ws = spec.w1();
  for (const auto& v : spec.u2()) us.push_back(v);
  for (const auto& v : spec.w2()) ws.push_back(v);
  std::vector<LabeledEdge> edges;
  for (const auto* t : {&spec.alpha, &spec.beta, &spec.gamma})
    for (const auto& [a, b] : t->pairs()) edges.emplace_back(a, b);
  const BijectionTable delta = spec.delta();
  for (const auto& [a, b] : delta.pairs()) edges.emplace_back(a, b);
  return ColoredDigraph::from_labels(std::move(us), std::move(ws), edges);
}

// ---------------------------------------------------------------------------
// Default labels and random tables.

namespace detail {

inline std::vector<VertexId> label_range(std::int64_t first, int count) {
  std::vector<VertexId> out;
  for (int k = 0; k < count; ++k) out.emplace_back(first + k);
  return out;
}

/// Maps the sorted domain onto `target`, shuffled when an engine is given.
inline BijectionTable make_table(const std::vector<VertexId>& domain, std::vector<VertexId> target,
                                 std::mt19937_64* rng) {
  if (rng) std::shuffle(target.begin(), target.end(), *rng);
  return BijectionTable(domain, std::move(target));
}

inline LayeredSpec layered_spec_impl(int s, int m, std::mt19937_64* rng) {
  if (s < 1 || m < 1) throw InputError("layer count and class size must be positive");
  auto u = [&](int i) { return label_range(std::int64_t{i - 1} * m + 1, m); };
  auto w = [&](int j) { return label_range(std::int64_t{s} * m + std::int64_t{j - 1} * m + 1, m); };
  LayeredSpec spec{s, m, {}, {}};
  for (int i = 1; i <= s; ++i) spec.f_diag.push_back(make_table(u(i), w(i), rng));
  for (int j = 1; j < s; ++j) spec.g_step.push_back(make_table(w(j), u(j + 1), rng));
  return spec;
}

inline N2TrivialSpec n2_trivial_spec_impl(int m, std::mt19937_64* rng) {
  if (m < 1) throw InputError("class size must be positive");
  auto u1 = label_range(1, m), w1 = label_range(m + 1, m), w2 = label_range(2 * m + 1, m),
       u2 = label_range(3 * m + 1, m);
  N2TrivialSpec spec{m, make_table(u1, w1, rng), make_table(w1, u2, rng), make_table(w2, u2, rng)};
  return spec;
}

}  // namespace detail

/// U_i = (i-1)m+1 .. im, W_j = sm+(j-1)m+1 .. sm+jm, every table order-preserving.
inline LayeredSpec default_layered_spec(int s, int m) { return detail::layered_spec_impl(s, m, nullptr); }

inline LayeredSpec random_layered_spec(int s, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::layered_spec_impl(s, m, &rng);
}

/// U1 = 1..m, W1 = m+1..2m, W2 = 2m+1..3m, U2 = 3m+1..4m.
inline N2TrivialSpec default_n2_trivial_spec(int m) { return detail::n2_trivial_spec_impl(m, nullptr); }

inline N2TrivialSpec random_n2_trivial_spec(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::n2_trivial_spec_impl(m, &rng);
}

// ---------------------------------------------------------------------------
// Lifting permutations of U1.

namespace detail {

inline void require_permutation_of(const BijectionTable& pi, const std::vector<VertexId>& u1) {
  if (pi.domain() != u1 || pi.codomain() != u1)
    throw InputError("permutation must act on exactly the class U1");
}

/// Conjugates pi along h: U1 -> C, adding h pi h^-1 to `out`.
inline void conjugate_into(const BijectionTable& h, const BijectionTable& pi,
                           std::vector<std::pair<VertexId, VertexId>>& out) {
  for (const auto& [x, hx] : h.pairs()) out.emplace_back(hx, h(pi(x)));
}

}  // namespace detail

/// Acts as pi on U1, as f_{1,j} pi f_{1,j}^-1 on W_j and as
/// (g_{1,i} f_{1,1}) pi (g_{1,i} f_{1,1})^-1 on U_i.
inline BijectionTable lift_permutation(const LayeredSpec& spec, const BijectionTable& pi) {
  spec.validate();
  detail::require_permutation_of(pi, spec.u_class(1));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (const auto& [x, y] : pi.pairs()) pairs.emplace_back(x, y);
  for (int j = 1; j <= spec.s; ++j) detail::conjugate_into(composite_f(spec, 1, j), pi, pairs);
  for (int i = 2; i <= spec.s; ++i)
    detail::conjugate_into(composite_g(spec, 1, i) * spec.f_diag[0], pi, pairs);
  return BijectionTable::from_pairs(pairs);
}

/// Acts as pi on U1 and by conjugation along alpha, beta alpha and
/// gamma^-1 beta alpha on W1, U2 and W2.
inline BijectionTable lift_permutation(const N2TrivialSpec& spec, const BijectionTable& pi) {
  spec.validate();
  detail::require_permutation_of(pi, spec.u1());
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (const auto& [x, y] : pi.pairs()) pairs.emplace_back(x, y);
  detail::conjugate_into(spec.alpha, pi, pairs);
  detail::conjugate_into(spec.beta * spec.alpha, pi, pairs);
  detail::conjugate_into(spec.delta(), pi, pairs);
  return BijectionTable::from_pairs(pairs);
}

/// Table over the whole vertex set as a permutation of vertex indices.
inline Permutation to_permutation(const ColoredDigraph& g, const BijectionTable& t) {
  if (t.size() != g.size()) throw InputError("table does not cover every vertex");
  std::vector<Index> image(g.size());
  for (const auto& [a, b] : t.pairs()) image[g.index_of(a)] = g.index_of(b);
  return Permutation(std::move(image));
}

namespace detail {

template <class Spec>
PermGroup lifted_group_impl(const Spec& spec, const ColoredDigraph& g,
                            const std::vector<VertexId>& u1, std::uint64_t max_order) {
  std::vector<Permutation> gens;
  for (std::size_t k = 0; k + 1 < u1.size(); ++k) {
    std::vector<VertexId> image = u1;
    std::swap(image[k], image[k + 1]);
    gens.push_back(to_permutation(g, lift_permutation(spec, BijectionTable(u1, image))));
  }
  return PermGroup::generated_by(g.size(), std::move(gens), max_order);
}

}  // namespace detail

/// Group generated by the lifts of adjacent transpositions of U1; isomorphic
/// to Sym_m. Acts on the vertex indices of layered(spec).
inline PermGroup lifted_group(const LayeredSpec& spec,
                              std::uint64_t max_order = kDefaultMaxGroupOrder) {
  return detail::lifted_group_impl(spec, layered(spec), spec.u_class(1), max_order);
}

inline PermGroup lifted_group(const N2TrivialSpec& spec,
                              std::uint64_t max_order = kDefaultMaxGroupOrder) {
  return detail::lifted_group_impl(spec, n2_trivial_layer(spec), spec.u1(), max_order);
}

// ---------------------------------------------------------------------------

/// Adds `fresh` with the color, out-neighbors and in-neighbors of `at`.
inline ColoredDigraph blow_up(const ColoredDigraph& g, const VertexId& at, const VertexId& fresh) {
  const Index a = g.index_of(at);
  if (g.find(fresh)) throw InputError("vertex '" + fresh.str() + "' already exists");
  std::vector<VertexId> us = g.color_labels(Color::U), ws = g.color_labels(Color::W);
  (g.color(a) == Color::U ? us : ws).push_back(fresh);
  std::vector<LabeledEdge> edges = g.labeled_edges();
  for (Index h : g.out(a)) edges.emplace_back(fresh, g.label(h));
  for (Index t : g.in(a)) edges.emplace_back(g.label(t), fresh);
  return ColoredDigraph::from_labels(std::move(us), std::move(ws), edges);
}

}  // namespace qbmg
