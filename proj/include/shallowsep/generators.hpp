#pragma once

// Deterministic graph families. Same arguments and seed, same edge list.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "shallowsep/graph.hpp"

namespace shallowsep::gen {

namespace detail {

struct EdgeSet {
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<Edge> edges;

  bool add(Vertex u, Vertex v) {
    if (u == v) return false;
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) return false;
    edges.push_back({std::min(u, v), std::max(u, v)});
    return true;
  }
};

inline void shuffle(std::vector<Vertex>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace detail

// w x h grid; vertex y*w + x.
inline WeightedGraph grid(Vertex w, Vertex h) {
  std::vector<Edge> e;
  e.reserve(2 * static_cast<std::size_t>(w) * h);
  for (Vertex y = 0; y < h; ++y)
    for (Vertex x = 0; x < w; ++x) {
      const Vertex v = y * w + x;
      if (x + 1 < w) e.push_back({v, v + 1});
      if (y + 1 < h) e.push_back({v, v + w});
    }
  return WeightedGraph::from_edges(static_cast<std::size_t>(w) * h, e);
}

inline WeightedGraph path(Vertex n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return WeightedGraph::from_edges(n, e);
}

inline WeightedGraph cycle(Vertex n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
  return WeightedGraph::from_edges(n, e);
}

inline WeightedGraph complete(Vertex k) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < k; ++u)
    for (Vertex v = u + 1; v < k; ++v) e.push_back({u, v});
  return WeightedGraph::from_edges(k, e);
}

// Uniform simple graph with exactly min(m, n(n-1)/2) edges.
inline WeightedGraph gnm(Vertex n, std::size_t m, std::uint64_t seed) {
  const std::size_t cap = n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
  m = std::min(m, cap);
  Rng rng(seed);
  detail::EdgeSet es;
  if (m * 2 > cap) {
    // Dense: choose from the explicit pair list.
    std::vector<std::pair<Vertex, Vertex>> all;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    for (std::size_t i = 0; i < m; ++i) {
      std::swap(all[i], all[i + rng.below(all.size() - i)]);
      es.add(all[i].first, all[i].second);
    }
  } else {
    while (es.edges.size() < m)
      es.add(static_cast<Vertex>(rng.below(n)), static_cast<Vertex>(rng.below(n)));
  }
  return WeightedGraph::from_edges(n, es.edges);
}

// Union of ceil(d/2) random Hamiltonian cycles; maximum degree <= 2*ceil(d/2).
inline WeightedGraph expander(Vertex n, unsigned d, std::uint64_t seed) {
  if (n < 3) throw Error("expander needs at least 3 vertices");
  if (d < 2) throw Error("expander degree must be at least 2");
  Rng rng(seed);
  detail::EdgeSet es;
  std::vector<Vertex> perm(n);
  for (unsigned c = 0; c < (d + 1) / 2; ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    detail::shuffle(perm, rng);
    for (Vertex i = 0; i < n; ++i) es.add(perm[i], perm[(i + 1) % n]);
  }
  return WeightedGraph::from_edges(n, es.edges);
}

// A sparse random host (n vertices, m edges) with a K_h planted on h random
// vertices.
inline WeightedGraph planted(Vertex n, std::size_t m, unsigned h, std::uint64_t seed) {
  if (h > n) throw Error("planted clique larger than host");
  WeightedGraph host = gnm(n, m, seed);
  detail::EdgeSet es;
  for (const Edge& e : host.edges()) es.add(e.u, e.v);
  Rng rng(seed ^ 0x5DEECE66Dull);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  detail::shuffle(perm, rng);
  for (unsigned i = 0; i < h; ++i)
    for (unsigned j = i + 1; j < h; ++j) es.add(perm[i], perm[j]);
  return WeightedGraph::from_edges(n, es.edges);
}

/*
 * K_h with every vertex replaced by a path on `len` vertices. Branch set i
 * occupies ids [i*len, (i+1)*len); branch sets i < j are joined by the edge
 * (i*len + j % len, j*len + i % len).
 */
inline WeightedGraph blown_up_clique(unsigned h, Vertex len) {
  if (len < 1) throw Error("branch paths need at least one vertex");
  std::vector<Edge> e;
  for (Vertex i = 0; i < h; ++i)
    for (Vertex p = 0; p + 1 < len; ++p) e.push_back({i * len + p, i * len + p + 1});
  for (Vertex i = 0; i < h; ++i)
    for (Vertex j = i + 1; j < h; ++j) e.push_back({i * len + j % len, j * len + i % len});
  return WeightedGraph::from_edges(static_cast<std::size_t>(h) * len, e);
}

inline const std::vector<std::string>& families() {
  static const std::vector<std::string> f = {"grid", "path", "cycle", "complete", "gnm", "expander", "planted", "blowup"};
  return f;
}

// Builds a family from positional integer arguments:
//   grid W H | path n | cycle n | complete k | gnm n m seed
//   expander n d seed | planted n m h seed | blowup h len
inline WeightedGraph generate(const std::string& family, const std::vector<std::uint64_t>& a) {
  auto need = [&](std::size_t k) {
    if (a.size() != k)
      throw Error("family '" + family + "' takes " + std::to_string(k) + " arguments, got " + std::to_string(a.size()));
  };
  auto vx = [](std::uint64_t x) {
    if (x > (1ull << 31)) throw Error("vertex count too large");
    return static_cast<Vertex>(x);
  };
  if (family == "grid") return need(2), grid(vx(a[0]), vx(a[1]));
  if (family == "path") return need(1), path(vx(a[0]));
  if (family == "cycle") return need(1), cycle(vx(a[0]));
  if (family == "complete") return need(1), complete(vx(a[0]));
  if (family == "gnm") return need(3), gnm(vx(a[0]), a[1], a[2]);
  if (family == "expander") return need(3), expander(vx(a[0]), static_cast<unsigned>(a[1]), a[2]);
  if (family == "planted") return need(4), planted(vx(a[0]), a[1], static_cast<unsigned>(a[2]), a[3]);
  if (family == "blowup") return need(2), blown_up_clique(static_cast<unsigned>(a[0]), vx(a[1]));
  throw Error("unknown graph family '" + family + "'");
}

}  // namespace shallowsep::gen
