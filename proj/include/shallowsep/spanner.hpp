#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "shallowsep/edge_weighted_graph.hpp"

namespace shallowsep {

// Largest odd integer 2k-1 not above 1/epsilon (at least 1).
inline Dist spanner_stretch(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("spanner epsilon must lie in (0, 1]");
  const auto k = static_cast<Dist>(std::floor((1.0 / epsilon + 1.0) / 2.0 + 1e-9));
  return 2 * std::max<Dist>(1, k) - 1;
}

struct Spanner {
  Dist stretch = 1;
  std::vector<EdgeId> kept;  // ids into the source graph, ascending
  EdgeWeightedGraph graph;   // same vertex set, kept edges only (source order)
};

/*
 * Greedy spanner: scan edges by (length, id); keep an edge unless the kept
 * edges already connect its ends within stretch * length. The greedy
 * (2k-1)-spanner has O(n^(1+1/k)) edges.
 */
inline Spanner build_spanner(const EdgeWeightedGraph& g, double epsilon) {
  Spanner sp;
  sp.stretch = spanner_stretch(epsilon);
  const std::size_t n = g.num_vertices();
  std::vector<EdgeId> order(g.num_edges());
  for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });

  std::vector<std::vector<std::pair<Vertex, Dist>>> adj(n);
  std::vector<Dist> dist(n, kInfDist);
  std::vector<Vertex> touched;
  using Item = std::pair<Dist, Vertex>;
  for (EdgeId e : order) {
    const auto& ed = g.edge(e);
    const Dist limit = sp.stretch * ed.w;
    // Bounded Dijkstra from ed.u in the current spanner.
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[ed.u] = 0;
    touched.push_back(ed.u);
    pq.push({0, ed.u});
    bool close = false;
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d != dist[x]) continue;
      if (x == ed.v) {
        close = true;
        break;
      }
      for (auto [y, w] : adj[x]) {
        const Dist nd = d + w;
        if (nd <= limit && nd < dist[y]) {
          if (dist[y] == kInfDist) touched.push_back(y);
          dist[y] = nd;
          pq.push({nd, y});
        }
      }
    }
    for (Vertex x : touched) dist[x] = kInfDist;
    touched.clear();
    if (close) continue;
    adj[ed.u].push_back({ed.v, ed.w});
    adj[ed.v].push_back({ed.u, ed.w});
    sp.kept.push_back(e);
  }
  std::sort(sp.kept.begin(), sp.kept.end());
  std::vector<WeightedEdge> es;
  es.reserve(sp.kept.size());
  for (EdgeId e : sp.kept) es.push_back(g.edge(e));
  sp.graph = EdgeWeightedGraph::from_edges(n, std::move(es));
  return sp;
}

}  // namespace shallowsep
