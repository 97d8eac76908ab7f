#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "shallowsep/algo1.hpp"

namespace shallowsep {

// Raised when the separator recursion stops making progress.
struct ClusteringError : Error {
  using Error::Error;
};

// A connected subgraph given by its edges. Vertices are the edge endpoints.
struct Cluster {
  int id = -1;
  int level = 1;
  int parent = -1;
  std::vector<int> children;
  std::vector<Vertex> vertices;  // ascending
  std::vector<EdgeId> edges;     // ascending
  std::vector<Vertex> boundary;  // ascending, subset of vertices

  bool contains(Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
  bool is_boundary(Vertex v) const { return std::binary_search(boundary.begin(), boundary.end(), v); }
  std::size_t size() const { return vertices.size(); }
};

/*
 * Edge-partition of G into clusters. `top` lists the level-1 clusters; in a
 * nested clustering every non-leaf cluster's children partition its edges and
 * a child's boundary is its parent's boundary inside it plus the vertices it
 * shares with siblings.
 */
struct Clustering {
  std::size_t n = 0;
  double r = 0;
  bool nested = false;
  std::vector<Cluster> clusters;
  std::vector<int> top;
  std::vector<std::string> diagnostics;  // budget overruns, never fatal
  RunStats stats;

  const Cluster& at(int id) const { return clusters.at(static_cast<std::size_t>(id)); }
  int depth() const {
    int d = 0;
    for (const auto& c : clusters) d = std::max(d, c.level);
    return d;
  }
};

struct ClusteringResult {
  std::optional<Clustering> clustering;
  std::optional<SeparatorOutcome> minor;  // certificate found by a recursive call
};

// Explicit forms of the soft budgets.
inline double cluster_boundary_budget(const Budgets& b, double r, std::size_t n) {
  return b.b_c * std::sqrt(r) * std::log2(static_cast<double>(n) + 1);
}
inline double total_boundary_budget(const Budgets& b, double r, std::size_t n) {
  const double lg = std::log2(static_cast<double>(n) + 1);
  return b.b_t * static_cast<double>(n) / std::sqrt(r) * lg * lg;
}

namespace clustering_detail {

inline std::vector<Vertex> endpoints(const WeightedGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<Vertex> vs;
  vs.reserve(2 * edges.size());
  for (EdgeId e : edges) vs.push_back(g.edge(e).u), vs.push_back(g.edge(e).v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Groups edges into connected pieces, ordered by smallest edge id.
inline std::vector<std::vector<EdgeId>> connected_pieces(const WeightedGraph& g, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  const auto vs = endpoints(g, edges);
  auto local = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
  std::vector<std::size_t> dsu(vs.size());
  for (std::size_t i = 0; i < dsu.size(); ++i) dsu[i] = i;
  auto find = [&](std::size_t x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  for (EdgeId e : edges) {
    auto a = find(local(g.edge(e).u)), b = find(local(g.edge(e).v));
    if (a != b) dsu[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> slot(vs.size(), -1);
  std::vector<std::vector<EdgeId>> out;
  for (EdgeId e : edges) {
    const auto root = find(local(g.edge(e).u));
    if (slot[root] < 0) slot[root] = static_cast<int>(out.size()), out.emplace_back();
    out[static_cast<std::size_t>(slot[root])].push_back(e);
  }
  return out;
}

struct Split {
  std::vector<std::vector<EdgeId>> children;
  std::optional<SeparatorOutcome> minor;
  std::size_t separator = 0;
  bool fallback = false;
};

/*
 * Separates the connected edge set `edges` with Algorithm 1 at depth `ell`
 * and returns the pieces H_C = G[V(C) ∪ B_C]. An edge between two separator
 * vertices goes to the first component adjacent to both, or into a leftover
 * piece. If no piece is smaller than the input, edges touching the
 * separator are split off as single edges.
 */
inline Split split(const WeightedGraph& g, const std::vector<EdgeId>& edges, const std::vector<Vertex>& heavy,
                   int ell, double epsilon, const ProblemParams& p, const Budgets& budgets, std::uint64_t seed) {
  Split out;
  Subgraph sub = edge_subgraph(g, edges);
  const std::size_t n = sub.to_parent.size();
  if (!heavy.empty()) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (std::binary_search(heavy.begin(), heavy.end(), sub.to_parent[i])) w[i] = 1.0;
    sub.graph = sub.graph.with_weights(std::move(w));
  }
  ProblemParams q = p;
  q.ell = std::max(1, ell);
  q.epsilon = epsilon;
  q.seed = seed;
  SeparatorOutcome res = run_algorithm1(sub.graph, q, budgets);
  if (res.is_certificate()) {
    for (auto& t : res.trees) {
      for (auto& v : t.vertices) v = sub.to_parent[v];
      for (auto& v : t.parent)
        if (v != kNoVertex) v = sub.to_parent[v];
      t.root = sub.to_parent[t.root];
    }
    for (auto& e : res.cross_edges) e = {sub.to_parent[e.u], sub.to_parent[e.v]};
    out.minor = std::move(res);
    return out;
  }
  out.separator = res.vertices.size();
  std::vector<char> in_s(n, 0);
  for (Vertex v : res.vertices) in_s[v] = 1;
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (in_s[s] || comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : sub.graph.neighbors(x))
        if (!in_s[y] && comp[y] < 0) comp[y] = ncomp, stack.push_back(y);
    }
    ++ncomp;
  }
  // Components adjacent to each separator vertex, ascending.
  std::vector<std::vector<int>> touches(n);
  for (Vertex v : res.vertices) {
    for (Vertex y : sub.graph.neighbors(v))
      if (!in_s[y]) touches[v].push_back(comp[y]);
    std::sort(touches[v].begin(), touches[v].end());
    touches[v].erase(std::unique(touches[v].begin(), touches[v].end()), touches[v].end());
  }
  std::vector<std::vector<EdgeId>> by_comp(static_cast<std::size_t>(ncomp));
  std::vector<EdgeId> leftover;
  for (EdgeId le = 0; le < sub.graph.num_edges(); ++le) {
    const Edge& e = sub.graph.edge(le);
    const EdgeId ge = edges[le];
    if (!in_s[e.u] || !in_s[e.v]) {
      by_comp[static_cast<std::size_t>(comp[in_s[e.u] ? e.v : e.u])].push_back(ge);
      continue;
    }
    const auto& a = touches[e.u];
    const auto& b = touches[e.v];
    std::vector<int> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (both.empty()) leftover.push_back(ge);
    else by_comp[static_cast<std::size_t>(both.front())].push_back(ge);
  }
  for (auto& c : by_comp)
    if (!c.empty()) out.children.push_back(std::move(c));
  for (auto& piece : connected_pieces(g, leftover)) out.children.push_back(std::move(piece));

  bool progress = true;
  for (const auto& c : out.children)
    if (c.size() == edges.size()) progress = false;
  if (progress) return out;

  // No piece got smaller: peel the separator's edges off as single edges.
  out.fallback = true;
  out.children.clear();
  std::vector<EdgeId> inner;
  for (EdgeId le = 0; le < sub.graph.num_edges(); ++le) {
    const Edge& e = sub.graph.edge(le);
    if (in_s[e.u] || in_s[e.v] || res.vertices.empty()) out.children.push_back({edges[le]});
    else inner.push_back(edges[le]);
  }
  for (auto& piece : connected_pieces(g, inner)) out.children.push_back(std::move(piece));
  std::sort(out.children.begin(), out.children.end());
  return out;
}

inline int depth_limit(std::size_t n) {
  return std::max(4, static_cast<int>(std::ceil(4 * std::log2(static_cast<double>(n) + 1))));
}

// Boundary = vertices lying in two or more of the given clusters.
inline void assign_shared_boundary(std::size_t n, std::vector<Cluster*> cs) {
  std::vector<std::uint32_t> count(n, 0);
  for (auto* c : cs)
    for (Vertex v : c->vertices) ++count[v];
  for (auto* c : cs) {
    c->boundary.clear();
    for (Vertex v : c->vertices)
      if (count[v] >= 2) c->boundary.push_back(v);
  }
}

}  // namespace clustering_detail

/*
 * r-clustering by recursive separation: pieces with more than r vertices are
 * split by Algorithm 1 at depth r^(1/2 - e') * n_cur^(e'), e' = epsilon / 3.
 * Clusters over the per-cluster boundary budget are then re-split with unit
 * weight on their boundary vertices only.
 */
inline ClusteringResult build_r_clustering(const WeightedGraph& g, const ProblemParams& p, double r,
                                           const Budgets& budgets = {}) {
  using namespace clustering_detail;
  p.validate();
  if (!(r >= 1)) throw RegimeError("cluster size r must be at least 1");
  const std::size_t n = g.num_vertices();
  const double eps3 = p.epsilon / 3;
  const int limit = depth_limit(n);
  ClusteringResult result;
  Clustering cl;
  cl.n = n;
  cl.r = r;
  std::uint64_t seed = p.seed;

  std::vector<EdgeId> all(g.num_edges());
  for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
  std::deque<std::pair<std::vector<EdgeId>, int>> work;
  for (auto& piece : connected_pieces(g, all)) work.emplace_back(std::move(piece), 0);
  std::vector<std::vector<EdgeId>> done;
  while (!work.empty()) {
    auto [edges, depth] = std::move(work.front());
    work.pop_front();
    const auto vs = endpoints(g, edges);
    if (static_cast<double>(vs.size()) <= r || edges.size() == 1) {
      done.push_back(std::move(edges));
      continue;
    }
    if (depth >= limit) throw ClusteringError("r-clustering recursion exceeded depth " + std::to_string(limit));
    const double nc = static_cast<double>(vs.size());
    const int ell = static_cast<int>(std::ceil(std::pow(r, 0.5 - eps3) * std::pow(nc, eps3)));
    Split s = split(g, edges, {}, ell, eps3, p, budgets, ++seed);
    if (s.minor) {
      result.minor = std::move(s.minor);
      return result;
    }
    cl.stats.add("splits", 1);
    cl.stats.add("fallback_splits", s.fallback ? 1 : 0);
    cl.stats.add("separator_vertices", static_cast<double>(s.separator));
    for (auto& c : s.children) work.emplace_back(std::move(c), depth + 1);
  }

  auto make = [&](std::vector<std::vector<EdgeId>>& pieces) {
    std::vector<Cluster> out;
    for (auto& e : pieces) {
      Cluster c;
      std::sort(e.begin(), e.end());
      c.vertices = endpoints(g, e);
      c.edges = std::move(e);
      out.push_back(std::move(c));
    }
    std::vector<Cluster*> ptrs;
    for (auto& c : out) ptrs.push_back(&c);
    assign_shared_boundary(n, ptrs);
    return out;
  };
  std::vector<Cluster> clusters = make(done);

  // Boundary re-splitting.
  const double per = cluster_boundary_budget(budgets, r, n);
  for (int round = 0; round < limit; ++round) {
    bool changed = false;
    std::vector<std::vector<EdgeId>> next;
    for (auto& c : clusters) {
      if (static_cast<double>(c.boundary.size()) <= per || c.edges.size() == 1) {
        next.push_back(c.edges);
        continue;
      }
      const double nc = static_cast<double>(c.size());
      const int ell = static_cast<int>(std::ceil(std::pow(r, 0.5 - eps3) * std::pow(nc, eps3)));
      Split s = split(g, c.edges, c.boundary, ell, eps3, p, budgets, ++seed);
      if (s.minor) {
        result.minor = std::move(s.minor);
        return result;
      }
      cl.stats.add("boundary_splits", 1);
      for (auto& ch : s.children) next.push_back(std::move(ch));
      changed = true;
    }
    clusters = make(next);
    if (!changed) break;
  }

  double total = 0;
  for (auto& c : clusters) {
    total += static_cast<double>(c.boundary.size());
    if (static_cast<double>(c.boundary.size()) > per)
      cl.diagnostics.push_back("cluster boundary " + std::to_string(c.boundary.size()) + " exceeds budget " +
                               std::to_string(per));
  }
  if (total > total_boundary_budget(budgets, r, n))
    cl.diagnostics.push_back("total boundary " + std::to_string(total) + " exceeds budget " +
                             std::to_string(total_boundary_budget(budgets, r, n)));
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    clusters[i].id = static_cast<int>(i);
    cl.top.push_back(static_cast<int>(i));
  }
  cl.clusters = std::move(clusters);
  cl.stats["clusters"] = static_cast<double>(cl.clusters.size());
  cl.stats["total_boundary"] = total;
  result.clustering = std::move(cl);
  return result;
}

/*
 * Nested r-clustering: every level-1 cluster is split at depth sqrt(|V(C)|)
 * until single edges remain.
 */
inline ClusteringResult build_nested(const WeightedGraph& g, const ProblemParams& p, double r,
                                     const Budgets& budgets = {}) {
  using namespace clustering_detail;
  ClusteringResult result = build_r_clustering(g, p, r, budgets);
  if (!result.clustering) return result;
  Clustering& cl = *result.clustering;
  cl.nested = true;
  const int limit = depth_limit(g.num_vertices()) + 1;
  std::uint64_t seed = p.seed * 7919;
  for (std::size_t i = 0; i < cl.clusters.size(); ++i) {
    if (cl.clusters[i].edges.size() <= 1) continue;
    if (cl.clusters[i].level >= limit) throw ClusteringError("nested recursion exceeded depth " + std::to_string(limit));
    const int ell = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cl.clusters[i].size()))));
    Split s = split(g, cl.clusters[i].edges, {}, ell, p.epsilon, p, budgets, ++seed);
    if (s.minor) {
      result.minor = std::move(s.minor);
      result.clustering.reset();
      return result;
    }
    cl.stats.add("nested_splits", 1);
    const Cluster& parent = cl.clusters[i];
    std::vector<Cluster> kids;
    for (auto& e : s.children) {
      Cluster c;
      std::sort(e.begin(), e.end());
      c.vertices = endpoints(g, e);
      c.edges = std::move(e);
      c.level = parent.level + 1;
      c.parent = static_cast<int>(i);
      kids.push_back(std::move(c));
    }
    std::vector<Cluster*> ptrs;
    for (auto& c : kids) ptrs.push_back(&c);
    assign_shared_boundary(g.num_vertices(), ptrs);
    for (auto& c : kids) {
      std::vector<Vertex> inherited;
      for (Vertex v : parent.boundary)
        if (c.contains(v)) inherited.push_back(v);
      std::vector<Vertex> merged;
      std::set_union(c.boundary.begin(), c.boundary.end(), inherited.begin(), inherited.end(), std::back_inserter(merged));
      c.boundary = std::move(merged);
    }
    for (auto& c : kids) {
      c.id = static_cast<int>(cl.clusters.size());
      cl.clusters[i].children.push_back(c.id);
      cl.clusters.push_back(std::move(c));
    }
  }
  cl.stats["clusters"] = static_cast<double>(cl.clusters.size());
  cl.stats["levels"] = cl.depth();
  return result;
}

}  // namespace shallowsep
