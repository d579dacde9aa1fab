#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "qbmg/digraph.hpp"
#include "qbmg/partition.hpp"

namespace qbmg {

/// Bijection on {0, ..., n-1}. Ordered by image tuple.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Index> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (Index x : image_) {
      if (x >= image_.size() || seen[x]) throw InputError("not a permutation");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Index> image(n);
    std::iota(image.begin(), image.end(), Index{0});
    return Permutation(std::move(image), Unchecked{});
  }

  static Permutation transposition(std::size_t n, Index a, Index b) {
    Permutation p = identity(n);
    std::swap(p.image_[a], p.image_[b]);
    return p;
  }

  std::size_t degree() const { return image_.size(); }
  Index operator()(Index x) const { return image_[x]; }
  const std::vector<Index>& image() const { return image_; }

  bool is_identity() const {
    for (Index x = 0; x < image_.size(); ++x)
      if (image_[x] != x) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Index> inv(image_.size());
    for (Index x = 0; x < image_.size(); ++x) inv[image_[x]] = x;
    return Permutation(std::move(inv), Unchecked{});
  }

  /// (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw InputError("permutation degree mismatch");
    std::vector<Index> image(a.degree());
    for (Index x = 0; x < image.size(); ++x) image[x] = a.image_[b.image_[x]];
    return Permutation(std::move(image), Unchecked{});
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Index> image, Unchecked) : image_(std::move(image)) {}

  std::vector<Index> image_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Index x : p.image()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

inline constexpr std::uint64_t kDefaultMaxGroupOrder = 1'000'000;

/// Finite permutation group kept as generators plus the full sorted element
/// list. Groups above the configured order cap are rejected on construction.
class PermGroup {
 public:
  PermGroup() = default;

  static PermGroup trivial(std::size_t n) {
    PermGroup g;
    g.degree_ = n;
    g.elements_ = {Permutation::identity(n)};
    return g;
  }

  /// Closure of `generators` under composition.
  static PermGroup generated_by(std::size_t n, std::vector<Permutation> generators,
                                std::uint64_t max_order = kDefaultMaxGroupOrder) {
    PermGroup g;
    g.degree_ = n;
    for (const auto& s : generators)
      if (s.degree() != n) throw InputError("generator degree mismatch");
    std::erase_if(generators, [](const Permutation& p) { return p.is_identity(); });
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    g.generators_ = std::move(generators);

    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<Permutation> frontier;
    Permutation id = Permutation::identity(n);
    seen.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
      Permutation e = std::move(frontier.front());
      frontier.pop_front();
      for (const Permutation& s : g.generators_) {
        Permutation next = s * e;
        if (seen.insert(next).second) {
          if (seen.size() > max_order)
            throw CapExceeded("group order exceeds " + std::to_string(max_order));
          frontier.push_back(std::move(next));
        }
      }
    }
    g.elements_.assign(seen.begin(), seen.end());
    std::sort(g.elements_.begin(), g.elements_.end());
    return g;
  }

  /// Trusted constructor for element sets produced by a search that already
  /// guarantees closure.
  static PermGroup from_elements(std::size_t n, std::vector<Permutation> generators,
                                 std::vector<Permutation> elements) {
    PermGroup g;
    g.degree_ = n;
    std::erase_if(generators, [](const Permutation& p) { return p.is_identity(); });
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    g.generators_ = std::move(generators);
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    g.elements_ = std::move(elements);
    return g;
  }

  std::size_t degree() const { return degree_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }

  bool contains(const Permutation& p) const {
    return std::binary_search(elements_.begin(), elements_.end(), p);
  }

  bool is_subgroup_of(const PermGroup& other) const {
    if (other.degree() != degree_) return false;
    return std::ranges::all_of(elements_, [&](const Permutation& p) { return other.contains(p); });
  }

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Orbit partition of the group generated by `generators`.
inline Partition orbits_of(std::size_t n, const std::vector<Permutation>& generators) {
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto root = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Permutation& s : generators)
    for (Index x = 0; x < n; ++x) {
      Index a = root(x), b = root(s(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<Index>> blocks(n);
  for (Index x = 0; x < n; ++x) blocks[root(x)].push_back(x);
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return Partition(n, std::move(blocks));
}

inline Partition orbits(const PermGroup& grp) { return orbits_of(grp.degree(), grp.generators()); }

// ---------------------------------------------------------------------------
// Text form "p: a->b c->d ..." over a graph's labels; unlisted vertices are
// fixed.

inline std::string format_permutation(const ColoredDigraph& g, const Permutation& p) {
  std::ostringstream os;
  os << "p:";
  for (Index x = 0; x < p.degree(); ++x)
    if (p(x) != x) os << ' ' << g.label(x) << "->" << g.label(p(x));
  return os.str();
}

inline Permutation parse_permutation(const ColoredDigraph& g, const std::string& text) {
  std::istringstream is(text);
  std::string head;
  if (!(is >> head) || head != "p:") throw InputError("permutation must start with 'p:'");
  std::vector<Index> image(g.size());
  std::iota(image.begin(), image.end(), Index{0});
  std::vector<bool> assigned(g.size(), false);
  std::string item;
  while (is >> item) {
    auto arrow = item.find("->");
    if (arrow == std::string::npos) throw InputError("expected 'a->b', got '" + item + "'");
    Index from = g.index_of(VertexId(item.substr(0, arrow)));
    Index to = g.index_of(VertexId(item.substr(arrow + 2)));
    if (assigned[from]) throw InputError("vertex '" + item.substr(0, arrow) + "' mapped twice");
    assigned[from] = true;
    image[from] = to;
  }
  return Permutation(std::move(image));
}

}  // namespace qbmg
