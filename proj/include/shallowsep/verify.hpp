#pragma once

// Brute-force checkers. Nothing here calls the producing algorithms; only the
// graph's adjacency accessors are shared.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "shallowsep/clustering.hpp"
#include "shallowsep/graph.hpp"
#include "shallowsep/outcome.hpp"

namespace shallowsep {

struct VerifyResult {
  bool ok = true;
  std::string kind;    // empty when ok
  std::string detail;
  double weight = 0;   // offending component weight (separator check)

  static VerifyResult fail(std::string kind, std::string detail, double weight = 0) {
    return {false, std::move(kind), std::move(detail), weight};
  }
  explicit operator bool() const { return ok; }
};

namespace verify_detail {

inline double sorted_weight(const WeightedGraph& g, std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  double s = 0;
  for (Vertex v : vs) s += g.weight(v);
  return s;
}

}  // namespace verify_detail

// Every component of G - s has weight <= c * w(V), compared exactly.
inline VerifyResult verify_separator(const WeightedGraph& g, const std::vector<Vertex>& s, double c = 2.0 / 3.0) {
  const std::size_t n = g.num_vertices();
  std::vector<char> removed(n, 0), seen(n, 0);
  for (Vertex v : s) {
    if (v >= n) return VerifyResult::fail("range", "separator vertex " + std::to_string(v) + " out of range");
    removed[v] = 1;
  }
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  const double limit = c * verify_detail::sorted_weight(g, all);
  for (Vertex s0 = 0; s0 < n; ++s0) {
    if (removed[s0] || seen[s0]) continue;
    std::vector<Vertex> comp{s0};
    seen[s0] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex y : g.neighbors(comp[i]))
        if (!removed[y] && !seen[y]) seen[y] = 1, comp.push_back(y);
    const double w = verify_detail::sorted_weight(g, comp);
    if (w > limit)
      return VerifyResult::fail("balance", "component of " + std::to_string(comp.size()) + " vertices containing " +
                                               std::to_string(s0) + " has weight " + std::to_string(w) + " > " +
                                               std::to_string(limit), w);
  }
  return {};
}

/*
 * h pairwise vertex-disjoint trees, each a tree subgraph of g whose BFS
 * radius from its root (inside the tree) is at most radius_bound, and every
 * pair joined by an edge of g.
 */
inline VerifyResult verify_minor_certificate(const WeightedGraph& g, const std::vector<TreeRecord>& trees, int h,
                                             Dist radius_bound) {
  if (static_cast<int>(trees.size()) != h)
    return VerifyResult::fail("count", "expected " + std::to_string(h) + " trees, got " + std::to_string(trees.size()));
  const std::size_t n = g.num_vertices();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const TreeRecord& t = trees[i];
    if (t.vertices.empty()) return VerifyResult::fail("empty", "tree " + std::to_string(i) + " is empty");
    if (t.parent.size() != t.vertices.size()) return VerifyResult::fail("shape", "parent list size mismatch");
    for (Vertex v : t.vertices) {
      if (v >= n) return VerifyResult::fail("range", "tree vertex out of range");
      if (owner[v] >= 0)
        return VerifyResult::fail("disjointness", "vertex " + std::to_string(v) + " lies in trees " +
                                                      std::to_string(owner[v]) + " and " + std::to_string(i));
      owner[v] = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const TreeRecord& t = trees[i];
    // Edges: each non-root vertex has a parent inside the tree; exactly |V|-1
    // edges, so connectivity from the root implies acyclicity.
    std::map<Vertex, std::vector<Vertex>> adj;
    std::size_t roots = 0, edges = 0;
    for (std::size_t j = 0; j < t.vertices.size(); ++j) {
      const Vertex v = t.vertices[j], p = t.parent[j];
      if (p == kNoVertex) {
        ++roots;
        if (v != t.root) return VerifyResult::fail("shape", "parentless vertex is not the root");
        continue;
      }
      if (p >= n || owner[p] != static_cast<int>(i))
        return VerifyResult::fail("shape", "parent of " + std::to_string(v) + " is outside its tree");
      if (!g.has_edge(v, p))
        return VerifyResult::fail("edge", "tree edge (" + std::to_string(v) + "," + std::to_string(p) + ") not in graph");
      adj[v].push_back(p);
      adj[p].push_back(v);
      ++edges;
    }
    if (roots != 1) return VerifyResult::fail("shape", "tree " + std::to_string(i) + " must have exactly one root");
    std::map<Vertex, Dist> dist{{t.root, 0}};
    std::deque<Vertex> q{t.root};
    Dist radius = 0;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      radius = std::max(radius, dist[v]);
      for (Vertex y : adj[v])
        if (!dist.count(y)) dist[y] = dist[v] + 1, q.push_back(y);
    }
    if (dist.size() != t.vertices.size() || edges + 1 != t.vertices.size())
      return VerifyResult::fail("connectivity", "tree " + std::to_string(i) + " is not a spanning tree of its vertices");
    if (radius > radius_bound)
      return VerifyResult::fail("radius", "tree " + std::to_string(i) + " has radius " + std::to_string(radius) +
                                              " > " + std::to_string(radius_bound));
  }
  std::set<std::pair<int, int>> joined;
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] < 0) continue;
    for (Vertex y : g.neighbors(v))
      if (owner[y] >= 0 && owner[y] != owner[v]) joined.insert({std::min(owner[v], owner[y]), std::max(owner[v], owner[y])});
  }
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j)
      if (!joined.count({i, j}))
        return VerifyResult::fail("adjacency", "trees " + std::to_string(i) + " and " + std::to_string(j) + " are not adjacent");
  return {};
}

/*
 * Clustering checks: level-1 clusters partition E, every cluster is connected
 * through its own edges, level-1 clusters have <= r vertices and boundary =
 * vertices shared between level-1 clusters, within the per-cluster and total
 * boundary budgets. In a nested clustering children partition their parent's
 * edges, are strictly smaller, and carry the inherited-plus-shared boundary.
 */
inline VerifyResult verify_clustering(const WeightedGraph& g, const Clustering& cl, double r, const Budgets& b = {}) {
  const std::size_t n = g.num_vertices();
  auto fmt = [](const Cluster& c) { return "cluster " + std::to_string(c.id); };
  auto vertex_set = [&](const std::vector<EdgeId>& es) {
    std::set<Vertex> vs;
    for (EdgeId e : es) vs.insert(g.edge(e).u), vs.insert(g.edge(e).v);
    return std::vector<Vertex>(vs.begin(), vs.end());
  };
  for (std::size_t i = 0; i < cl.clusters.size(); ++i) {
    const Cluster& c = cl.clusters[i];
    if (c.id != static_cast<int>(i)) return VerifyResult::fail("ids", "cluster ids must equal their positions");
    if (c.edges.empty()) return VerifyResult::fail("empty", fmt(c) + " has no edges");
    for (EdgeId e : c.edges)
      if (e >= g.num_edges()) return VerifyResult::fail("range", fmt(c) + " has an unknown edge");
    if (vertex_set(c.edges) != c.vertices) return VerifyResult::fail("vertices", fmt(c) + " vertex list is not its edge endpoints");
    // Connectivity through the cluster's own edges.
    std::map<Vertex, std::vector<Vertex>> adj;
    for (EdgeId e : c.edges) adj[g.edge(e).u].push_back(g.edge(e).v), adj[g.edge(e).v].push_back(g.edge(e).u);
    std::set<Vertex> seen{c.vertices.front()};
    std::vector<Vertex> stack{c.vertices.front()};
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : adj[x])
        if (seen.insert(y).second) stack.push_back(y);
    }
    if (seen.size() != c.vertices.size()) return VerifyResult::fail("connectivity", fmt(c) + " is not connected");
    for (Vertex v : c.boundary)
      if (!std::binary_search(c.vertices.begin(), c.vertices.end(), v))
        return VerifyResult::fail("boundary", fmt(c) + " lists a boundary vertex outside it");
  }
  // Level 1: partition of E, size, boundary, budgets.
  std::vector<int> owner(g.num_edges(), -1);
  std::vector<int> count(n, 0);
  for (int id : cl.top) {
    const Cluster& c = cl.clusters.at(static_cast<std::size_t>(id));
    if (c.parent != -1 || c.level != 1) return VerifyResult::fail("levels", fmt(c) + " is listed as top but is not level 1");
    for (EdgeId e : c.edges) {
      if (owner[e] >= 0) return VerifyResult::fail("partition", "edge " + std::to_string(e) + " lies in two clusters");
      owner[e] = id;
    }
    for (Vertex v : c.vertices) ++count[v];
    if (static_cast<double>(c.vertices.size()) > r && c.edges.size() > 1)
      return VerifyResult::fail("size", fmt(c) + " has " + std::to_string(c.vertices.size()) + " vertices > r");
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (owner[e] < 0) return VerifyResult::fail("partition", "edge " + std::to_string(e) + " lies in no cluster");
  const double lg = std::log2(static_cast<double>(n) + 1);
  const double per = b.b_c * std::sqrt(r) * lg;
  double total = 0;
  for (int id : cl.top) {
    const Cluster& c = cl.clusters[static_cast<std::size_t>(id)];
    std::vector<Vertex> want;
    for (Vertex v : c.vertices)
      if (count[v] >= 2) want.push_back(v);
    if (want != c.boundary) return VerifyResult::fail("boundary", fmt(c) + " boundary is not the set of shared vertices");
    if (static_cast<double>(c.boundary.size()) > per)
      return VerifyResult::fail("budget", fmt(c) + " boundary " + std::to_string(c.boundary.size()) + " > " + std::to_string(per));
    total += static_cast<double>(c.boundary.size());
  }
  const double total_cap = b.b_t * static_cast<double>(n) / std::sqrt(r) * lg * lg;
  if (total > total_cap)
    return VerifyResult::fail("budget", "total boundary " + std::to_string(total) + " > " + std::to_string(total_cap));
  // Nesting.
  for (const Cluster& c : cl.clusters) {
    if (c.children.empty()) {
      if (cl.nested && c.edges.size() != 1) return VerifyResult::fail("nesting", fmt(c) + " is a leaf with several edges");
      continue;
    }
    std::vector<EdgeId> union_edges;
    std::map<Vertex, int> shared;
    for (int k : c.children) {
      const Cluster& ch = cl.clusters.at(static_cast<std::size_t>(k));
      if (ch.parent != c.id || ch.level != c.level + 1) return VerifyResult::fail("nesting", fmt(ch) + " has a wrong parent or level");
      if (ch.edges.size() >= c.edges.size()) return VerifyResult::fail("nesting", fmt(ch) + " is not smaller than its parent");
      union_edges.insert(union_edges.end(), ch.edges.begin(), ch.edges.end());
      for (Vertex v : ch.vertices) ++shared[v];
    }
    std::sort(union_edges.begin(), union_edges.end());
    if (union_edges != c.edges) return VerifyResult::fail("nesting", "children of " + fmt(c) + " do not partition its edges");
    for (int k : c.children) {
      const Cluster& ch = cl.clusters[static_cast<std::size_t>(k)];
      std::vector<Vertex> want;
      for (Vertex v : ch.vertices)
        if (shared[v] >= 2 || std::binary_search(c.boundary.begin(), c.boundary.end(), v)) want.push_back(v);
      if (want != ch.boundary) return VerifyResult::fail("boundary", fmt(ch) + " boundary is not inherited plus shared");
    }
  }
  return {};
}

// Checks an outcome against the verifier that matches its kind.
inline VerifyResult verify_outcome(const WeightedGraph& g, const SeparatorOutcome& out, int h) {
  switch (out.kind) {
    case OutcomeKind::Separator: return verify_separator(g, out.vertices);
    case OutcomeKind::Certificate: return verify_minor_certificate(g, out.trees, h, out.radius_bound);
    case OutcomeKind::Rejected: return {};
  }
  return {};
}

// BFS distances in g with `forbidden` vertices deleted; one BFS per source,
// cached until the next source is asked for.
class ExactDistanceOracle {
 public:
  ExactDistanceOracle(const WeightedGraph& g, std::vector<Vertex> forbidden = {})
      : g_(&g), blocked_(g.num_vertices(), 0) {
    for (Vertex v : forbidden) blocked_[v] = 1;
  }

  Dist query(Vertex u, Vertex v) {
    if (u != source_) run(u);
    return dist_[v];
  }

 private:
  void run(Vertex s) {
    source_ = s;
    dist_.assign(g_->num_vertices(), kInfDist);
    if (blocked_[s]) return;
    dist_[s] = 0;
    std::deque<Vertex> q{s};
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop_front();
      for (Vertex y : g_->neighbors(x))
        if (!blocked_[y] && dist_[y] == kInfDist) dist_[y] = dist_[x] + 1, q.push_back(y);
    }
  }

  const WeightedGraph* g_;
  std::vector<char> blocked_;
  std::vector<Dist> dist_;
  Vertex source_ = kNoVertex;
};

}  // namespace shallowsep
