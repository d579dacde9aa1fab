#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qbmg/constructions.hpp"
#include "qbmg/digraph.hpp"
#include "qbmg/partition.hpp"

namespace qbmg {

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

/// Splits the input into non-empty lines of whitespace-separated tokens;
/// `#` starts a comment running to the end of the line.
inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    for (std::size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline VertexId parse_vertex(const Line& line, const Token& tok) {
  if (!VertexId::valid_token(tok.text))
    throw ParseError(line.number, tok.column, "invalid vertex token '" + tok.text + "'");
  return VertexId(tok.text);
}

/// Parses `a->b` pairs from tokens[first..].
inline std::vector<std::pair<VertexId, VertexId>> parse_pairs(const Line& line, std::size_t first) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (std::size_t k = first; k < line.tokens.size(); ++k) {
    const Token& tok = line.tokens[k];
    auto arrow = tok.text.find("->");
    if (arrow == std::string::npos)
      throw ParseError(line.number, tok.column, "expected 'a->b', got '" + tok.text + "'");
    Token a{tok.text.substr(0, arrow), tok.column};
    Token b{tok.text.substr(arrow + 2), tok.column + arrow + 2};
    out.emplace_back(parse_vertex(line, a), parse_vertex(line, b));
  }
  return out;
}

inline std::optional<int> parse_int(const std::string& s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  for (char c : s)
    if (c < '0' || c > '9') return std::nullopt;
  return std::stoi(s);
}

/// Reads `key=<int>` from a token.
inline int parse_param(const Line& line, const Token& tok, const std::string& key) {
  const std::string prefix = key + "=";
  if (tok.text.rfind(prefix, 0) != 0)
    throw ParseError(line.number, tok.column, "expected '" + prefix + "<int>'");
  auto v = parse_int(tok.text.substr(prefix.size()));
  if (!v) throw ParseError(line.number, tok.column + prefix.size(), "expected an integer");
  return *v;
}

/// Re-raises library input errors with the line they came from.
template <class F>
auto at_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(line, 1, e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graph format:
//   qbmg 1
//   U: <id> ...
//   W: <id> ...
//   e <tail> <head>

inline ColoredDigraph read_qbmg(std::istream& in) {
  auto lines = detail::tokenize(in);
  std::size_t k = 0;
  auto expect_line = [&](const char* what) -> const detail::Line& {
    if (k >= lines.size()) {
      std::size_t last = lines.empty() ? 1 : lines.back().number + 1;
      throw ParseError(last, 1, std::string("missing ") + what);
    }
    return lines[k++];
  };
  const auto& header = expect_line("header 'qbmg 1'");
  if (header.tokens.size() != 2 || header.tokens[0].text != "qbmg")
    throw ParseError(header.number, 1, "expected header 'qbmg 1'");
  if (header.tokens[1].text != "1")
    throw ParseError(header.number, header.tokens[1].column,
                     "unsupported format version '" + header.tokens[1].text + "'");

  auto read_class = [&](const char* key) {
    const auto& line = expect_line(key);
    if (line.tokens[0].text != key)
      throw ParseError(line.number, line.tokens[0].column, std::string("expected '") + key + "'");
    std::vector<VertexId> ids;
    std::set<VertexId> seen;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      VertexId v = detail::parse_vertex(line, line.tokens[i]);
      if (!seen.insert(v).second)
        throw ParseError(line.number, line.tokens[i].column, "duplicate vertex '" + v.str() + "'");
      ids.push_back(std::move(v));
    }
    return ids;
  };
  std::vector<VertexId> us = read_class("U:");
  std::vector<VertexId> ws = read_class("W:");
  std::set<VertexId> u_set(us.begin(), us.end()), all(us.begin(), us.end());
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (!all.insert(ws[i]).second)
      throw ParseError(lines[k - 1].number, 1, "vertex '" + ws[i].str() + "' is in both U and W");

  std::vector<LabeledEdge> edges;
  std::set<LabeledEdge> seen;
  for (; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens[0].text != "e" || line.tokens.size() != 3)
      throw ParseError(line.number, line.tokens[0].column, "expected 'e <tail> <head>'");
    VertexId t = detail::parse_vertex(line, line.tokens[1]);
    VertexId h = detail::parse_vertex(line, line.tokens[2]);
    for (std::size_t i : {1u, 2u})
      if (!all.count(detail::parse_vertex(line, line.tokens[i])))
        throw ParseError(line.number, line.tokens[i].column,
                         "unknown vertex '" + line.tokens[i].text + "'");
    if (t == h) throw ParseError(line.number, line.tokens[1].column, "loop at '" + t.str() + "'");
    if (u_set.count(t) == u_set.count(h))
      throw ParseError(line.number, line.tokens[1].column,
                       "edge " + t.str() + "->" + h.str() + " joins two vertices of one color");
    if (!seen.emplace(t, h).second)
      throw ParseError(line.number, line.tokens[1].column,
                       "duplicate edge " + t.str() + "->" + h.str());
    edges.emplace_back(std::move(t), std::move(h));
  }
  return ColoredDigraph::from_labels(std::move(us), std::move(ws), edges);
}

inline ColoredDigraph parse_qbmg(const std::string& text) {
  std::istringstream in(text);
  return read_qbmg(in);
}

/// Canonical text: classes and edges in token order, optional leading
/// comment lines.
inline void write_qbmg(std::ostream& out, const ColoredDigraph& g,
                       const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "qbmg 1\n";
  for (Color c : {Color::U, Color::W}) {
    out << (c == Color::U ? "U:" : "W:");
    for (const auto& v : g.color_labels(c)) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [t, h] : g.labeled_edges()) out << "e " << t << ' ' << h << '\n';
}

inline std::string format_qbmg(const ColoredDigraph& g, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  write_qbmg(os, g, comments);
  return os.str();
}

// ---------------------------------------------------------------------------
// Partition format: one block per line.

inline Partition read_partition(std::istream& in, const ColoredDigraph& g) {
  std::vector<std::vector<Index>> blocks;
  std::vector<std::size_t> seen_on(g.size(), 0);
  for (const auto& line : detail::tokenize(in)) {
    std::vector<Index> block;
    for (const auto& tok : line.tokens) {
      VertexId v = detail::parse_vertex(line, tok);
      auto i = g.find(v);
      if (!i) throw ParseError(line.number, tok.column, "unknown vertex '" + v.str() + "'");
      if (seen_on[*i])
        throw ParseError(line.number, tok.column,
                         "vertex '" + v.str() + "' already listed on line " +
                             std::to_string(seen_on[*i]));
      seen_on[*i] = line.number;
      block.push_back(*i);
    }
    blocks.push_back(std::move(block));
  }
  for (Index v = 0; v < g.size(); ++v)
    if (!seen_on[v]) throw InputError("partition misses vertex '" + g.label(v).str() + "'");
  return Partition(g.size(), std::move(blocks));
}

inline void write_partition(std::ostream& out, const ColoredDigraph& g, const Partition& p) {
  for (const auto& block : p.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) out << (i ? " " : "") << g.label(block[i]);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Construction spec format. Three headers:
//   layers s=<int> m=<int>      then  f <i> <i>: a->b ...  and  g <j> <j+1>: a->b ...
//   two-layer m=<int>           then  alpha: ...  beta: ...  gamma: ...
//   n2-trivial m=<int>          then  alpha: ...  beta: ...  gamma: ...

struct ConstructionSpec {
  enum class Kind { Layered, TwoLayer, N2Trivial };
  Kind kind = Kind::Layered;
  LayeredSpec layered;  // Layered and TwoLayer
  N2TrivialSpec n2;     // N2Trivial

  ColoredDigraph build() const {
    return kind == Kind::N2Trivial ? n2_trivial_layer(n2) : qbmg::layered(layered);
  }
};

inline ConstructionSpec read_spec(std::istream& in) {
  auto lines = detail::tokenize(in);
  if (lines.empty()) throw ParseError(1, 1, "empty spec");
  const auto& header = lines.front();
  const std::string& kind = header.tokens[0].text;
  ConstructionSpec spec;

  if (kind == "layers") {
    if (header.tokens.size() != 3) throw ParseError(header.number, 1, "expected 'layers s=<int> m=<int>'");
    int s = detail::parse_param(header, header.tokens[1], "s");
    int m = detail::parse_param(header, header.tokens[2], "m");
    if (s < 1 || m < 1) throw ParseError(header.number, 1, "s and m must be positive");
    std::vector<std::optional<BijectionTable>> f(s), g(s > 0 ? s - 1 : 0);
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const auto& line = lines[k];
      const auto& t = line.tokens;
      if (t.size() < 3 || (t[0].text != "f" && t[0].text != "g") || t[2].text.empty() ||
          t[2].text.back() != ':')
        throw ParseError(line.number, 1, "expected 'f <i> <i>:' or 'g <j> <j+1>:'");
      auto i = detail::parse_int(t[1].text);
      auto j = detail::parse_int(t[2].text.substr(0, t[2].text.size() - 1));
      if (!i || !j) throw ParseError(line.number, t[1].column, "expected two integer indices");
      const bool is_f = t[0].text == "f";
      if (is_f ? (*j != *i || *i < 1 || *i > s) : (*j != *i + 1 || *i < 1 || *j > s))
        throw ParseError(line.number, t[1].column,
                         is_f ? "diagonal table must be 'f i i' with 1 <= i <= s"
                              : "step table must be 'g j j+1' with 1 <= j < s");
      auto& slot = is_f ? f[*i - 1] : g[*i - 1];
      if (slot) throw ParseError(line.number, 1, "table given twice");
      slot = detail::at_line(line.number,
                             [&] { return BijectionTable::from_pairs(detail::parse_pairs(line, 3)); });
    }
    spec.layered = LayeredSpec{s, m, {}, {}};
    for (int i = 0; i < s; ++i) {
      if (!f[i]) throw ParseError(header.number, 1, "missing table f " + std::to_string(i + 1) + " " + std::to_string(i + 1));
      spec.layered.f_diag.push_back(*f[i]);
    }
    for (int j = 0; j + 1 < s; ++j) {
      if (!g[j]) throw ParseError(header.number, 1, "missing table g " + std::to_string(j + 1) + " " + std::to_string(j + 2));
      spec.layered.g_step.push_back(*g[j]);
    }
    detail::at_line(header.number, [&] { spec.layered.validate(); return 0; });
    spec.kind = ConstructionSpec::Kind::Layered;
    return spec;
  }

  if (kind == "two-layer" || kind == "n2-trivial") {
    if (header.tokens.size() != 2) throw ParseError(header.number, 1, "expected '" + kind + " m=<int>'");
    int m = detail::parse_param(header, header.tokens[1], "m");
    std::optional<BijectionTable> alpha, beta, gamma;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const auto& line = lines[k];
      const std::string& name = line.tokens[0].text;
      std::optional<BijectionTable>* slot = name == "alpha:"   ? &alpha
                                            : name == "beta:"  ? &beta
                                            : name == "gamma:" ? &gamma
                                                               : nullptr;
      if (!slot) throw ParseError(line.number, 1, "expected 'alpha:', 'beta:' or 'gamma:'");
      if (*slot) throw ParseError(line.number, 1, "table given twice");
      *slot = detail::at_line(line.number,
                              [&] { return BijectionTable::from_pairs(detail::parse_pairs(line, 1)); });
    }
    if (!alpha || !beta || !gamma) throw ParseError(header.number, 1, "need alpha, beta and gamma tables");
    if (kind == "two-layer") {
      spec.kind = ConstructionSpec::Kind::TwoLayer;
      spec.layered = detail::at_line(header.number, [&] { return two_layer_spec(m, *alpha, *beta, *gamma); });
    } else {
      spec.kind = ConstructionSpec::Kind::N2Trivial;
      spec.n2 = N2TrivialSpec{m, *alpha, *beta, *gamma};
      detail::at_line(header.number, [&] { spec.n2.validate(); return 0; });
    }
    return spec;
  }
  throw ParseError(header.number, 1, "unknown spec kind '" + kind + "'");
}

inline ConstructionSpec parse_spec(const std::string& text) {
  std::istringstream in(text);
  return read_spec(in);
}

inline void write_spec(std::ostream& out, const LayeredSpec& spec) {
  out << "layers s=" << spec.s << " m=" << spec.m << '\n';
  for (int i = 1; i <= spec.s; ++i)
    out << "f " << i << ' ' << i << ": " << format_table(spec.f_diag[i - 1]) << '\n';
  for (int j = 1; j < spec.s; ++j)
    out << "g " << j << ' ' << j + 1 << ": " << format_table(spec.g_step[j - 1]) << '\n';
}

inline void write_spec(std::ostream& out, const N2TrivialSpec& spec) {
  out << "n2-trivial m=" << spec.m << '\n';
  out << "alpha: " << format_table(spec.alpha) << '\n';
  out << "beta: " << format_table(spec.beta) << '\n';
  out << "gamma: " << format_table(spec.gamma) << '\n';
}

// ---------------------------------------------------------------------------

/// Plain DOT: U vertices as boxes, W vertices as ellipses, one line per edge.
inline void write_dot(std::ostream& out, const ColoredDigraph& g) {
  out << "digraph qbmg {\n";
  for (Index v = 0; v < g.size(); ++v)
    out << "  \"" << g.label(v) << "\" [shape=" << (g.color(v) == Color::U ? "box" : "ellipse")
        << "];\n";
  for (const auto& [t, h] : g.labeled_edges()) out << "  \"" << t << "\" -> \"" << h << "\";\n";
  out << "}\n";
}

template <class Reader>
auto read_file(const std::string& path, Reader&& reader) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return reader(in);
}

inline ColoredDigraph load_qbmg(const std::string& path) {
  return read_file(path, [](std::istream& in) { return read_qbmg(in); });
}

inline ConstructionSpec load_spec(const std::string& path) {
  return read_file(path, [](std::istream& in) { return read_spec(in); });
}

}  // namespace qbmg
