#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qbmg/digraph.hpp"

namespace qbmg {

/// Disjoint non-empty blocks covering {0, ..., n-1}. Blocks are kept sorted
/// internally and ordered by their smallest member.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::size_t n, std::vector<std::vector<Index>> blocks)
      : blocks_(std::move(blocks)), block_of_(n, kNone) {
    for (auto& b : blocks_) {
      if (b.empty()) throw InputError("partition has an empty block");
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      for (Index v : blocks_[k]) {
        if (v >= n) throw InputError("partition member out of range");
        if (block_of_[v] != kNone) throw InputError("partition blocks overlap");
        block_of_[v] = k;
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (block_of_[v] == kNone) throw InputError("partition does not cover every vertex");
  }

  static Partition singletons(std::size_t n) {
    std::vector<std::vector<Index>> blocks;
    for (Index v = 0; v < n; ++v) blocks.push_back({v});
    return Partition(n, std::move(blocks));
  }

  std::size_t degree() const { return block_of_.size(); }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::vector<Index>>& blocks() const { return blocks_; }
  const std::vector<Index>& block(std::size_t k) const { return blocks_[k]; }
  std::size_t block_of(Index v) const { return block_of_[v]; }
  bool discrete() const { return blocks_.size() == block_of_.size(); }

  /// True when every block of `*this` lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const {
    for (const auto& b : blocks_)
      for (Index v : b)
        if (coarser.block_of(v) != coarser.block_of(b.front())) return false;
    return true;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<Index>> blocks_;
  std::vector<std::size_t> block_of_;
};

inline std::vector<std::vector<VertexId>> partition_labels(const ColoredDigraph& g,
                                                           const Partition& p) {
  std::vector<std::vector<VertexId>> out;
  for (const auto& b : p.blocks()) {
    std::vector<VertexId> block;
    for (Index v : b) block.push_back(g.label(v));
    out.push_back(std::move(block));
  }
  return out;
}

inline Partition partition_from_labels(const ColoredDigraph& g,
                                       const std::vector<std::vector<VertexId>>& blocks) {
  std::vector<std::vector<Index>> idx;
  for (const auto& b : blocks) {
    std::vector<Index> block;
    for (const VertexId& v : b) block.push_back(g.index_of(v));
    idx.push_back(std::move(block));
  }
  return Partition(g.size(), std::move(idx));
}

/// Classes of the relation "same out-neighbors and same in-neighbors".
/// All isolated vertices land in one class regardless of color.
inline Partition equivalence_classes(const ColoredDigraph& g) {
  using Key = std::pair<std::vector<Index>, std::vector<Index>>;
  std::map<Key, std::vector<Index>> groups;
  for (Index v = 0; v < g.size(); ++v) {
    Key key{{g.out(v).begin(), g.out(v).end()}, {g.in(v).begin(), g.in(v).end()}};
    groups[std::move(key)].push_back(v);
  }
  std::vector<std::vector<Index>> blocks;
  for (auto& [key, members] : groups) blocks.push_back(std::move(members));
  return Partition(g.size(), std::move(blocks));
}

inline bool equivalent(const ColoredDigraph& g, Index a, Index b) {
  return std::ranges::equal(g.out(a), g.out(b)) && std::ranges::equal(g.in(a), g.in(b));
}

/// No two distinct vertices are equivalent.
inline bool is_thin(const ColoredDigraph& g) { return equivalence_classes(g).discrete(); }

}  // namespace qbmg
