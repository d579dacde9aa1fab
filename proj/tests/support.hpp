#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbmg/qbmg.hpp"

namespace qbmg {

// Readable gtest failure output.
inline void PrintTo(const BijectionTable& t, std::ostream* os) { *os << '{' << format_table(t) << '}'; }
inline void PrintTo(const Partition& p, std::ostream* os) {
  for (const auto& block : p.blocks()) {
    *os << '{';
    for (std::size_t i = 0; i < block.size(); ++i) *os << (i ? " " : "") << block[i];
    *os << '}';
  }
}
inline void PrintTo(const Permutation& p, std::ostream* os) {
  *os << '[';
  for (std::size_t i = 0; i < p.degree(); ++i) *os << (i ? " " : "") << p(static_cast<Index>(i));
  *os << ']';
}

}  // namespace qbmg

namespace qbmg::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(QBMG_FIXTURE_DIR) + "/" + name;
}

inline ColoredDigraph load_fixture(const std::string& name) {
  const std::string path = fixture_path(name);
  if (name.ends_with(".spec")) return load_spec(path).build();
  return load_qbmg(path);
}

inline ColoredDigraph graph(std::vector<std::string> u, std::vector<std::string> w,
                            std::vector<std::pair<std::string, std::string>> edges) {
  std::vector<VertexId> us, ws;
  for (auto& x : u) us.emplace_back(x);
  for (auto& x : w) ws.emplace_back(x);
  std::vector<LabeledEdge> es;
  for (auto& [a, b] : edges) es.emplace_back(VertexId(a), VertexId(b));
  return ColoredDigraph::from_labels(std::move(us), std::move(ws), es);
}

inline VertexId vid(const std::string& s) { return VertexId(s); }
inline VertexId vid(std::int64_t n) { return VertexId(n); }

inline std::vector<VertexId> ids(std::initializer_list<std::int64_t> ns) {
  std::vector<VertexId> out;
  for (auto n : ns) out.emplace_back(n);
  return out;
}

/// Permutation from label pairs; unlisted vertices are fixed.
inline Permutation perm(const ColoredDigraph& g, const std::string& text) {
  return parse_permutation(g, "p: " + text);
}

// ---------------------------------------------------------------------------
// Exhaustive pool: U = u1..ua, W = w1..wb; every U-W pair independently has
// no edge, u->w, w->u, or both. Index of u_i is i-1, of w_j is a+j-1.

inline ColoredDigraph bipartite_from_code(int a, int b, std::uint64_t code) {
  std::vector<VertexId> us, ws;
  for (int i = 1; i <= a; ++i) us.emplace_back("u" + std::to_string(i));
  for (int j = 1; j <= b; ++j) ws.emplace_back("w" + std::to_string(j));
  std::vector<Arc> arcs;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      const unsigned bits = (code >> (2 * (i * b + j))) & 3U;
      const Index u = static_cast<Index>(i), w = static_cast<Index>(a + j);
      if (bits & 1U) arcs.push_back({u, w});
      if (bits & 2U) arcs.push_back({w, u});
    }
  std::vector<VertexId> labels = us;
  labels.insert(labels.end(), ws.begin(), ws.end());
  std::vector<Color> colors(a, Color::U);
  colors.insert(colors.end(), b, Color::W);
  return ColoredDigraph::from_indices(std::move(labels), std::move(colors), std::move(arcs));
}

inline void for_each_bipartite(int a, int b, const std::function<void(const ColoredDigraph&)>& f) {
  const std::uint64_t total = std::uint64_t{1} << (2 * a * b);
  for (std::uint64_t code = 0; code < total; ++code) f(bipartite_from_code(a, b, code));
}

inline ColoredDigraph random_bipartite(int a, int b, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, (std::uint64_t{1} << (2 * a * b)) - 1);
  return bipartite_from_code(a, b, d(rng));
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

/// All automorphisms by exhaustive search: permutations of each color class
/// separately, or of the whole vertex set when `color_preserving` is false.
inline std::vector<Permutation> brute_force_aut(const ColoredDigraph& g, bool color_preserving = true) {
  const std::size_t n = g.size();
  std::vector<Permutation> result;
  auto edges_ok = [&](const std::vector<Index>& img) {
    for (const Arc& a : g.arcs())
      if (!g.has_edge(img[a.tail], img[a.head])) return false;
    return true;
  };
  if (color_preserving) {
    std::vector<Index> us = g.color_class(Color::U), ws = g.color_class(Color::W);
    std::vector<Index> pu = us, pw = ws;
    do {
      pw = ws;
      do {
        std::vector<Index> img(n);
        for (std::size_t i = 0; i < us.size(); ++i) img[us[i]] = pu[i];
        for (std::size_t i = 0; i < ws.size(); ++i) img[ws[i]] = pw[i];
        if (edges_ok(img)) result.emplace_back(img);
      } while (std::next_permutation(pw.begin(), pw.end()));
    } while (std::next_permutation(pu.begin(), pu.end()));
  } else {
    std::vector<Index> img(n);
    std::iota(img.begin(), img.end(), Index{0});
    do {
      if (edges_ok(img)) result.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// Canonical form up to color-preserving isomorphism: the smallest adjacency
/// code over all relabelings within each class.
inline std::string canonical_form(const ColoredDigraph& g) {
  std::vector<Index> us = g.color_class(Color::U), ws = g.color_class(Color::W);
  std::string best;
  std::vector<Index> pu = us;
  do {
    std::vector<Index> pw = ws;
    do {
      std::string code = std::to_string(us.size()) + "/" + std::to_string(ws.size()) + ":";
      for (Index u : pu)
        for (Index w : pw) code += static_cast<char>('0' + g.has_edge(u, w) + 2 * g.has_edge(w, u));
      if (best.empty() || code < best) best = code;
    } while (std::next_permutation(pw.begin(), pw.end()));
  } while (std::next_permutation(pu.begin(), pu.end()));
  return best;
}

/// N2 with all four vertices required distinct.
inline bool n2_path_reading(const ColoredDigraph& g) {
  for (Index u = 0; u < g.size(); ++u)
    for (Index v : g.out(u))
      for (Index w : g.out(v))
        for (Index t : g.out(w)) {
          if (u == w || v == t || u == t) continue;
          if (!g.has_edge(u, t)) return false;
        }
  return true;
}

inline ColoredDigraph complete_symmetric(int r, int s) {
  std::vector<std::string> u, w;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= r; ++i) u.push_back("u" + std::to_string(i));
  for (int j = 1; j <= s; ++j) w.push_back("w" + std::to_string(j));
  for (const auto& a : u)
    for (const auto& b : w) {
      edges.emplace_back(a, b);
      edges.emplace_back(b, a);
    }
  return graph(u, w, edges);
}

// ---------------------------------------------------------------------------
// Theorem corpus.

struct CorpusEntry {
  std::string name;
  ColoredDigraph g;
};

inline std::vector<CorpusEntry> fixture_corpus() {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(QBMG_FIXTURE_DIR))
    if (e.is_regular_file() && (e.path().extension() == ".qbmg" || e.path().extension() == ".spec"))
      paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : paths) out.push_back({p.filename().string(), load_fixture(p.filename().string())});
  return out;
}

/// Fixtures, constructions, complete bipartite graphs, blow-ups and induced
/// subgraphs of those, and the isomorphism classes of 2-qBMGs with at most
/// three vertices per color.
inline std::vector<CorpusEntry> theorem_corpus() {
  std::vector<CorpusEntry> base = fixture_corpus();
  for (int s = 1; s <= 4; ++s)
    for (int m = 1; m <= 4; ++m) {
      const std::string tag = "s" + std::to_string(s) + "m" + std::to_string(m);
      base.push_back({"layered-" + tag, layered(default_layered_spec(s, m))});
      base.push_back({"layered-random-" + tag, layered(random_layered_spec(s, m, 1000 + s * 10 + m))});
    }
  for (int m = 1; m <= 4; ++m) {
    const std::string tag = "m" + std::to_string(m);
    base.push_back({"two-layer-random-" + tag, layered(random_layered_spec(2, m, 2000 + m))});
    base.push_back({"n2-trivial-" + tag, n2_trivial_layer(default_n2_trivial_spec(m))});
    base.push_back({"n2-trivial-random-" + tag, n2_trivial_layer(random_n2_trivial_spec(m, 3000 + m))});
  }
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= 4; ++s)
      base.push_back({"K" + std::to_string(r) + std::to_string(s), complete_symmetric(r, s)});

  std::vector<CorpusEntry> out = base;
  std::mt19937_64 rng(20241102);
  for (const auto& e : base) {
    if (e.g.size() == 0) continue;
    if (e.g.size() <= 24) {
      const Index first = 0, last = static_cast<Index>(e.g.size() - 1);
      for (Index at : {first, last}) {
        VertexId fresh("x" + e.g.label(at).str());
        out.push_back({e.name + "+blowup(" + e.g.label(at).str() + ")", blow_up(e.g, e.g.label(at), fresh)});
      }
    }
    for (int k = 0; k < 2; ++k) {
      std::vector<Index> keep;
      for (Index v = 0; v < e.g.size(); ++v)
        if (rng() % 2) keep.push_back(v);
      out.push_back({e.name + "[induced " + std::to_string(k) + "]", induced_subgraph_indices(e.g, keep)});
    }
  }

  std::set<std::string> seen;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for_each_bipartite(a, b, [&](const ColoredDigraph& g) {
        if (!is_2qbmg(g)) return;
        std::string key = canonical_form(g);
        if (seen.insert(key).second) out.push_back({"exhaustive " + key, g});
      });
  return out;
}

}  // namespace qbmg::testing
