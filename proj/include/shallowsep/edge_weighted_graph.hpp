#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "shallowsep/graph.hpp"

namespace shallowsep {

struct WeightedEdge {
  Vertex u;
  Vertex v;
  Dist w;
  Vertex other(Vertex x) const { return x == u ? v : u; }
};

struct Arc {
  Vertex to;
  EdgeId id;
};

// Undirected multigraph with integer edge lengths. Used for dense distance
// graphs, spanners and as the input of the decremental oracle.
class EdgeWeightedGraph {
 public:
  EdgeWeightedGraph() = default;

  static EdgeWeightedGraph from_edges(std::size_t n, std::vector<WeightedEdge> edges) {
    EdgeWeightedGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : g.edges_) {
      if (e.u >= n || e.v >= n) throw Error("edge endpoint out of range");
      if (e.u == e.v) throw Error("self-loop in edge-weighted graph");
      if (e.w < 0) throw Error("negative edge length");
      ++deg[e.u], ++deg[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.arcs_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId id = 0; id < g.edges_.size(); ++id) {
      const auto& e = g.edges_[id];
      g.arcs_[fill[e.u]++] = {e.v, id};
      g.arcs_[fill[e.v]++] = {e.u, id};
    }
    return g;
  }

  // Unit lengths over a vertex-weighted graph; edge ids are preserved.
  static EdgeWeightedGraph unit(const WeightedGraph& g) {
    std::vector<WeightedEdge> es;
    es.reserve(g.num_edges());
    for (const Edge& e : g.edges()) es.push_back({e.u, e.v, 1});
    return from_edges(g.num_vertices(), std::move(es));
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Arc> arcs(Vertex v) const {
    return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  const WeightedEdge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<WeightedEdge> edges_;
};

struct ShortestPathTree {
  std::vector<Dist> dist;
  std::vector<EdgeId> parent_edge;  // kNoEdge at sources and unreached vertices

  // Vertices from `target` back to its source (target first).
  std::vector<Vertex> path_to(const EdgeWeightedGraph& g, Vertex target) const {
    std::vector<Vertex> p;
    if (dist[target] >= kInfDist) return p;
    for (Vertex v = target;;) {
      p.push_back(v);
      const EdgeId e = parent_edge[v];
      if (e == kNoEdge) break;
      v = g.edge(e).other(v);
    }
    return p;
  }
};

// Multi-source Dijkstra. `usable(edge id)` filters edges; `expand(v)` says
// whether relaxation may continue out of v (used to stop at boundary
// vertices). Distances beyond `limit` are treated as unreachable.
template <class Usable, class Expand>
ShortestPathTree dijkstra(const EdgeWeightedGraph& g, std::span<const std::pair<Vertex, Dist>> sources,
                          Usable&& usable, Expand&& expand, Dist limit = kInfDist) {
  ShortestPathTree t{std::vector<Dist>(g.num_vertices(), kInfDist),
                     std::vector<EdgeId>(g.num_vertices(), kNoEdge)};
  using Item = std::pair<Dist, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (auto [s, d0] : sources)
    if (d0 < t.dist[s]) t.dist[s] = d0, pq.push({d0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != t.dist[v] || !expand(v)) continue;
    for (const Arc& a : g.arcs(v)) {
      if (!usable(a.id)) continue;
      const Dist nd = d + g.edge(a.id).w;
      if (nd <= limit && nd < t.dist[a.to]) {
        t.dist[a.to] = nd;
        t.parent_edge[a.to] = a.id;
        pq.push({nd, a.to});
      }
    }
  }
  return t;
}

inline ShortestPathTree dijkstra(const EdgeWeightedGraph& g, Vertex source) {
  const std::pair<Vertex, Dist> src[] = {{source, 0}};
  return dijkstra(g, src, [](EdgeId) { return true; }, [](Vertex) { return true; });
}

}  // namespace shallowsep
