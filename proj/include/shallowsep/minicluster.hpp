#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shallowsep/ddg.hpp"

namespace shallowsep {

enum class MiniKind : std::uint8_t { C1, C2 };

/*
 * A mini cluster. C1: the edges of an origin cluster reachable from interior
 * vertex w without passing through the origin boundary, i.e. one interior
 * component plus its boundary attachments. C2: one edge between two origin
 * boundary vertices. `cluster.boundary` is taken w.r.t. the mini clustering.
 */
struct MiniCluster {
  int id = -1;
  int origin = -1;
  MiniKind kind = MiniKind::C1;
  Vertex w = kNoVertex;  // C1 only: smallest interior vertex
  Cluster cluster;
  std::vector<std::pair<Vertex, Vertex>> pairs;  // associated boundary pairs, b1 < b2
  bool selected = false;                         // C2, or C1 with an associated pair

  const std::vector<Vertex>& vertices() const { return cluster.vertices; }
  const std::vector<Vertex>& boundary() const { return cluster.boundary; }
  bool interior(Vertex v) const { return cluster.contains(v) && !cluster.is_boundary(v); }
};

struct MiniClustering {
  std::vector<MiniCluster> minis;
  std::vector<std::vector<int>> of_vertex;  // vertex -> mini ids containing it
  std::string violation;                    // non-empty: a budget failed
  RunStats stats;
};

namespace minicluster_detail {

// BFS distances inside a set of edges (local ids into `vs`).
inline std::vector<Dist> bfs_in(const std::vector<std::vector<std::size_t>>& adj, std::size_t s) {
  std::vector<Dist> d(adj.size(), kInfDist);
  std::deque<std::size_t> q{s};
  d[s] = 0;
  while (!q.empty()) {
    const auto x = q.front();
    q.pop_front();
    for (auto y : adj[x])
      if (d[y] == kInfDist) d[y] = d[x] + 1, q.push_back(y);
  }
  return d;
}

struct Candidate {
  int mini = -1;
  Vertex w = kNoVertex;
  std::vector<Vertex> vs;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<Vertex> attached;  // origin boundary vertices inside, ascending

  std::size_t local(Vertex v) const {
    return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  }
};

}  // namespace minicluster_detail

/*
 * Splits every cluster of an l-clustering into its C_w pieces and its
 * boundary-boundary edges. Every C_w is kept so the result partitions E;
 * `selected` marks the C_w that win a boundary pair: the strictly smallest
 * d_{C_w}(b1, b2) among pieces containing both, ties to the smaller w.
 */
inline MiniClustering build_mini_clusters(const WeightedGraph& g, const Clustering& cl, const Budgets& budgets = {}) {
  using namespace minicluster_detail;
  MiniClustering out;
  out.of_vertex.assign(g.num_vertices(), {});
  for (const Cluster& c : cl.clusters) {
    if (cl.nested && c.level != 1) continue;
    const auto local = [&](Vertex v) {
      return static_cast<std::size_t>(std::lower_bound(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin());
    };
    const std::size_t n = c.vertices.size();
    std::vector<std::vector<std::pair<std::size_t, EdgeId>>> adj(n);
    std::vector<char> bd(n, 0);
    for (Vertex b : c.boundary) bd[local(b)] = 1;
    for (EdgeId e : c.edges) {
      const auto a = local(g.edge(e).u), b = local(g.edge(e).v);
      if (bd[a] && bd[b]) {
        MiniCluster m;
        m.origin = c.id;
        m.kind = MiniKind::C2;
        m.selected = true;
        m.cluster.edges = {e};
        m.cluster.vertices = {g.edge(e).u, g.edge(e).v};
        std::sort(m.cluster.vertices.begin(), m.cluster.vertices.end());
        out.minis.push_back(std::move(m));
        out.stats.add("c2", 1);
        continue;
      }
      adj[a].push_back({b, e}), adj[b].push_back({a, e});
    }
    // One C_w per interior component, in order of smallest interior vertex.
    std::vector<char> seen(n, 0);
    std::vector<Candidate> cands;
    for (std::size_t s = 0; s < n; ++s) {
      if (bd[s] || seen[s]) continue;
      MiniCluster m;
      m.origin = c.id;
      m.kind = MiniKind::C1;
      m.w = c.vertices[s];
      std::vector<std::size_t> stack{s}, members;
      seen[s] = 1;
      while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        members.push_back(x);
        for (auto [y, e] : adj[x]) {
          m.cluster.edges.push_back(e);
          if (bd[y]) {
            members.push_back(y);
          } else if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      std::sort(m.cluster.edges.begin(), m.cluster.edges.end());
      m.cluster.edges.erase(std::unique(m.cluster.edges.begin(), m.cluster.edges.end()), m.cluster.edges.end());
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      for (auto x : members) m.cluster.vertices.push_back(c.vertices[x]);
      // An isolated single vertex cannot occur: every cluster vertex has an edge.
      Candidate cd;
      cd.mini = static_cast<int>(out.minis.size());
      cd.w = m.w;
      cd.vs = m.cluster.vertices;
      cd.adj.resize(cd.vs.size());
      for (EdgeId e : m.cluster.edges) {
        const auto a = cd.local(g.edge(e).u), b = cd.local(g.edge(e).v);
        cd.adj[a].push_back(b), cd.adj[b].push_back(a);
      }
      for (auto x : members)
        if (bd[x]) cd.attached.push_back(c.vertices[x]);
      cands.push_back(std::move(cd));
      out.minis.push_back(std::move(m));
      out.stats.add("c1", 1);
    }
    // Association: best candidate per boundary pair.
    struct Best {
      Dist d = kInfDist;
      Vertex w = kNoVertex;
      int mini = -1;
    };
    std::map<std::pair<Vertex, Vertex>, Best> best;
    for (const auto& cd : cands)
      for (std::size_t i = 0; i < cd.attached.size(); ++i) {
        const auto dist = bfs_in(cd.adj, cd.local(cd.attached[i]));
        for (std::size_t j = i + 1; j < cd.attached.size(); ++j) {
          const Dist d = dist[cd.local(cd.attached[j])];
          if (d == kInfDist) continue;
          Best& b = best[{cd.attached[i], cd.attached[j]}];
          if (d < b.d || (d == b.d && cd.w < b.w)) b = {d, cd.w, cd.mini};
        }
      }
    for (auto& [pr, b] : best) {
      auto& m = out.minis[static_cast<std::size_t>(b.mini)];
      m.pairs.push_back(pr);
      m.selected = true;
    }
  }

  // Boundary w.r.t. the mini clustering.
  std::vector<std::uint32_t> count(g.num_vertices(), 0);
  for (auto& m : out.minis)
    for (Vertex v : m.vertices()) ++count[v];
  for (std::size_t i = 0; i < out.minis.size(); ++i) {
    auto& m = out.minis[i];
    m.id = static_cast<int>(i);
    m.cluster.id = m.id;
    for (Vertex v : m.vertices()) {
      if (count[v] >= 2) m.cluster.boundary.push_back(v);
      out.of_vertex[v].push_back(m.id);
    }
  }

  // Budgets: per origin cluster and overall.
  std::vector<double> per_origin(cl.clusters.size(), 0);
  double total = 0;
  for (const auto& m : out.minis) {
    per_origin[static_cast<std::size_t>(m.origin)] += static_cast<double>(m.boundary().size());
    total += static_cast<double>(m.boundary().size());
    if (m.selected) out.stats.add("selected", 1);
  }
  for (const Cluster& c : cl.clusters) {
    if (cl.nested && c.level != 1) continue;
    const double db = static_cast<double>(c.boundary.size());
    const double cap = budgets.b_m * db * std::log2(db + 2);
    if (per_origin[static_cast<std::size_t>(c.id)] > cap + 1e-9 && out.violation.empty())
      out.violation = "mini clusters of cluster " + std::to_string(c.id) + " have " +
                      std::to_string(static_cast<std::size_t>(per_origin[static_cast<std::size_t>(c.id)])) +
                      " boundary vertices, budget " + std::to_string(cap);
  }
  const double n = static_cast<double>(g.num_vertices());
  const double lg = std::log2(n + 1);
  const double cap = budgets.b_prime * n / std::sqrt(std::max(cl.r, 1.0)) * lg * lg;
  if (total > cap + 1e-9 && out.violation.empty())
    out.violation = "mini clusters have " + std::to_string(static_cast<std::size_t>(total)) +
                    " boundary vertices in total, budget " + std::to_string(cap);
  out.stats["mini_clusters"] = static_cast<double>(out.minis.size());
  out.stats["mini_boundary_total"] = total;
  return out;
}

/*
 * Grows t by the interior of every non-evicted mini cluster that shares a
 * vertex with it. New vertices hang off t through BFS over interior vertices,
 * so boundary vertices of a mini cluster are never added. `absorbed` receives
 * the ids of those mini clusters.
 */
inline TreeRecord expand_tree(const WeightedGraph& g, const TreeRecord& t, const MiniClustering& mc,
                              const std::vector<char>& evicted, std::vector<int>* absorbed = nullptr) {
  std::vector<int> touched;
  for (Vertex x : t.vertices)
    for (int m : mc.of_vertex[x])
      if (!evicted[static_cast<std::size_t>(m)]) touched.push_back(m);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  if (absorbed) *absorbed = touched;
  if (touched.empty()) return t;

  std::map<Vertex, Vertex> parent;
  std::map<Vertex, bool> in;
  for (std::size_t i = 0; i < t.size(); ++i) parent[t.vertices[i]] = t.parent[i], in[t.vertices[i]] = true;
  std::vector<Vertex> order(t.vertices);
  for (int id : touched) {
    const MiniCluster& m = mc.minis[static_cast<std::size_t>(id)];
    LocalCluster lc(g, m.cluster);
    std::deque<Vertex> q;
    for (Vertex x : m.vertices())
      if (in.count(x)) q.push_back(lc.local(x));
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop_front();
      for (Vertex y : lc.adj[x]) {
        const Vertex gy = lc.to_global[y];
        if (in.count(gy) || !m.interior(gy)) continue;
        in[gy] = true;
        parent[gy] = lc.to_global[x];
        order.push_back(gy);
        q.push_back(y);
      }
    }
  }
  return make_tree(t.slot, t.root, order, [&](Vertex v) { return parent.at(v); });
}

}  // namespace shallowsep
