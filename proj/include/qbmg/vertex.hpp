#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "qbmg/error.hpp"

namespace qbmg {

/// Dense vertex index inside one graph. Never written to any text format.
using Index = std::uint32_t;

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Natural ("human") ordering: digit runs compare numerically, everything
/// else byte-wise. Ties fall back to plain string order, so the result is a
/// total order consistent with string equality.
inline int natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t i_end = i, j_end = j;
      while (i_end < a.size() && is_digit(a[i_end])) ++i_end;
      while (j_end < b.size() && is_digit(b[j_end])) ++j_end;
      std::size_t i_nz = i, j_nz = j;
      while (i_nz + 1 < i_end && a[i_nz] == '0') ++i_nz;
      while (j_nz + 1 < j_end && b[j_nz] == '0') ++j_nz;
      const std::size_t len_a = i_end - i_nz, len_b = j_end - j_nz;
      if (len_a != len_b) return len_a < len_b ? -1 : 1;
      if (int c = a.substr(i_nz, len_a).compare(b.substr(j_nz, len_b)); c != 0)
        return c < 0 ? -1 : 1;
      i = i_end;
      j = j_end;
      continue;
    }
    if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace detail

/// Opaque vertex label. Tokens are non-empty, whitespace-free, and may not
/// contain '#' (comment marker) or "->" (permutation/table arrow).
class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::string token) : token_(std::move(token)) {
    if (!valid_token(token_)) throw InputError("invalid vertex token '" + token_ + "'");
  }
  explicit VertexId(std::int64_t number) : token_(std::to_string(number)) {}

  const std::string& str() const { return token_; }

  friend bool operator==(const VertexId& a, const VertexId& b) { return a.token_ == b.token_; }
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
    return detail::natural_compare(a.token_, b.token_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const VertexId& v) { return os << v.token_; }

  static bool valid_token(std::string_view t) {
    if (t.empty()) return false;
    for (char c : t) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' || c == '#')
        return false;
    }
    return t.find("->") == std::string_view::npos;
  }

 private:
  std::string token_;
};

}  // namespace qbmg

template <>
struct std::hash<qbmg::VertexId> {
  std::size_t operator()(const qbmg::VertexId& v) const noexcept {
    return std::hash<std::string>{}(v.str());
  }
};
