#pragma once

#include <algorithm>
#include <deque>
#include <span>
#include <vector>

#include "shallowsep/clustering.hpp"

namespace shallowsep {

// Complete graph over `vertices` (ascending ids of G); kInfDist marks pairs
// without a path.
struct DenseDistanceGraph {
  std::vector<Vertex> vertices;
  std::vector<Dist> weight;  // row-major

  std::size_t size() const { return vertices.size(); }
  Dist at(std::size_t i, std::size_t j) const { return weight[i * vertices.size() + j]; }
  std::size_t index_of(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw Error("vertex " + std::to_string(v) + " not in dense distance graph");
    return static_cast<std::size_t>(it - vertices.begin());
  }
  Dist between(Vertex u, Vertex v) const { return at(index_of(u), index_of(v)); }
  bool operator==(const DenseDistanceGraph&) const = default;
};

// A cluster's edges with local ids (positions in Cluster::vertices).
struct LocalCluster {
  std::vector<Vertex> to_global;
  std::vector<std::vector<Vertex>> adj;

  LocalCluster(const WeightedGraph& g, const Cluster& c) : to_global(c.vertices), adj(c.vertices.size()) {
    for (EdgeId e : c.edges) {
      const Vertex a = local(g.edge(e).u), b = local(g.edge(e).v);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }
  Vertex local(Vertex v) const {
    return static_cast<Vertex>(std::lower_bound(to_global.begin(), to_global.end(), v) - to_global.begin());
  }
};

/*
 * D_δC(C) plus one BFS tree per boundary vertex b of C. The BFS from b never
 * passes through another boundary vertex, so tree paths between boundary
 * vertices are exactly the paths the dense distance graph measures.
 */
struct ClusterDistances {
  int cluster = -1;
  DenseDistanceGraph full;
  std::vector<Vertex> members;                // cluster vertices, ascending
  std::vector<std::vector<Vertex>> parent;   // [boundary index][local vertex] -> local parent

  // Path from boundary vertex u to boundary vertex v (inclusive), in G ids.
  std::vector<Vertex> unpack(Vertex u, Vertex v) const {
    const std::size_t iu = full.index_of(u);
    const std::size_t iv = full.index_of(v);
    if (full.at(iu, iv) >= kInfDist) throw Error("no interior path between boundary vertices");
    auto local = [&](Vertex x) { return static_cast<Vertex>(std::lower_bound(members.begin(), members.end(), x) - members.begin()); };
    std::vector<Vertex> path;
    for (Vertex x = local(v); x != kNoVertex; x = parent[iu][x]) path.push_back(members[x]);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

inline ClusterDistances dense_distance_graph(const WeightedGraph& g, const Cluster& c) {
  ClusterDistances out;
  out.cluster = c.id;
  out.members = c.vertices;
  out.full.vertices = c.boundary;
  const std::size_t b = c.boundary.size();
  out.full.weight.assign(b * b, kInfDist);
  LocalCluster lc(g, c);
  const std::size_t n = c.vertices.size();
  std::vector<char> is_b(n, 0);
  for (Vertex v : c.boundary) is_b[lc.local(v)] = 1;
  out.parent.assign(b, {});
  std::vector<Dist> dist(n);
  for (std::size_t i = 0; i < b; ++i) {
    auto& par = out.parent[i];
    par.assign(n, kNoVertex);
    std::fill(dist.begin(), dist.end(), kInfDist);
    const Vertex s = lc.local(c.boundary[i]);
    dist[s] = 0;
    std::deque<Vertex> q{s};
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop_front();
      if (x != s && is_b[x]) continue;
      for (Vertex y : lc.adj[x])
        if (dist[y] == kInfDist) dist[y] = dist[x] + 1, par[y] = x, q.push_back(y);
    }
    for (std::size_t j = 0; j < b; ++j) out.full.weight[i * b + j] = dist[lc.local(c.boundary[j])];
  }
  return out;
}

// The subgraph of `full` induced by `keep`.
inline DenseDistanceGraph restrict_ddg(const DenseDistanceGraph& full, std::span<const Vertex> keep) {
  DenseDistanceGraph out;
  out.vertices.assign(keep.begin(), keep.end());
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  std::vector<std::size_t> idx;
  for (Vertex v : out.vertices) idx.push_back(full.index_of(v));
  const std::size_t k = idx.size();
  out.weight.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.weight[i * k + j] = full.at(idx[i], idx[j]);
  return out;
}

// Finite off-diagonal entries as an edge list (i < j) over local indices.
inline EdgeWeightedGraph ddg_edges(const DenseDistanceGraph& d) {
  std::vector<WeightedEdge> es;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d.at(i, j) < kInfDist) es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), d.at(i, j)});
  return EdgeWeightedGraph::from_edges(d.size(), std::move(es));
}

}  // namespace shallowsep
