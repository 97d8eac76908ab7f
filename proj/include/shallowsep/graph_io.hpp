#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shallowsep/graph.hpp"

namespace shallowsep {

enum class GraphFormat { EdgeList, Dimacs };

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return x;
}

inline double parse_double(std::string_view tok, std::size_t line) {
  // from_chars for double is incomplete in some toolchains; strtod on a copy.
  std::string s(tok);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError(line, "expected a number, got '" + s + "'");
  return x;
}

}  // namespace detail

/*
 * Reads the line-oriented graph format:
 *
 *   c <comment>
 *   p <n> <m>            (DIMACS also accepts "p edge <n> <m>")
 *   w <vid> <float>      optional vertex weight, default 1
 *   e <u> <v>
 *
 * Edge-list ids are 0-based; DIMACS ids are 1-based and shifted on load.
 */
inline WeightedGraph load_graph(std::istream& in, GraphFormat format = GraphFormat::EdgeList) {
  const std::uint64_t base = format == GraphFormat::Dimacs ? 1 : 0;
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t n = 0, m_declared = 0;
  std::vector<double> weights;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;

  auto vertex = [&](std::string_view tok) -> Vertex {
    const std::uint64_t x = detail::parse_uint(tok, lineno);
    if (x < base || x - base >= n)
      throw ParseError(lineno, "vertex id " + std::string(tok) + " out of range");
    return static_cast<Vertex>(x - base);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const auto tok = detail::split_ws(raw);
    if (tok.empty() || tok[0] == "c" || tok[0][0] == '#') continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header line");
      std::size_t at = 1;
      if (tok.size() == 4) ++at;  // "p edge n m"
      if (tok.size() != at + 2) throw ParseError(lineno, "header must be 'p <n> <m>'");
      n = detail::parse_uint(tok[at], lineno);
      m_declared = detail::parse_uint(tok[at + 1], lineno);
      if (n >= kNoVertex) throw ParseError(lineno, "too many vertices");
      weights.assign(n, 1.0);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "record before 'p' header");
    if (tok[0] == "w") {
      if (tok.size() != 3) throw ParseError(lineno, "weight line must be 'w <vid> <float>'");
      const Vertex v = vertex(tok[1]);
      const double w = detail::parse_double(tok[2], lineno);
      if (!(w >= 0.0) || !std::isfinite(w)) throw ParseError(lineno, "weight must be finite and non-negative");
      weights[v] = w;
    } else if (tok[0] == "e") {
      if (tok.size() != 3) throw ParseError(lineno, "edge line must be 'e <u> <v>'");
      const Vertex u = vertex(tok[1]);
      const Vertex v = vertex(tok[2]);
      if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::string(tok[1]));
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
        throw ParseError(lineno, "duplicate edge " + std::string(tok[1]) + " " + std::string(tok[2]));
      edges.push_back({u, v});
    } else {
      throw ParseError(lineno, "unknown record type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'p' header");
  if (edges.size() != m_declared)
    throw ParseError(lineno, "header declares " + std::to_string(m_declared) + " edges, found " +
                                 std::to_string(edges.size()));
  return WeightedGraph::from_edges(n, edges, std::move(weights));
}

inline WeightedGraph load_graph_string(const std::string& text,
                                       GraphFormat format = GraphFormat::EdgeList) {
  std::istringstream in(text);
  return load_graph(in, format);
}

inline WeightedGraph load_graph_file(const std::string& path,
                                     GraphFormat format = GraphFormat::EdgeList) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_graph(in, format);
}

// Writes the edge-list format. Weights equal to 1 are omitted.
inline void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  char buf[64];
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.weight(v) != 1.0) {
      std::snprintf(buf, sizeof buf, "%.17g", g.weight(v));
      out << "w " << v << ' ' << buf << '\n';
    }
  }
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

}  // namespace shallowsep
