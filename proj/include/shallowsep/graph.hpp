#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shallowsep/types.hpp"

namespace shallowsep {

struct Edge {
  Vertex u;
  Vertex v;
  Vertex other(Vertex x) const { return x == u ? v : u; }
};

/*
 * Undirected simple graph with non-negative vertex weights, stored as a
 * compressed adjacency array. Immutable after construction; every algorithm
 * keeps its mutable scratch state in its own context object.
 *
 * Adjacency lists are sorted by neighbor id, which fixes iteration order and
 * makes edge lookup a binary search.
 */
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Validates endpoints, rejects self-loops and duplicate edges. Edge ids
  // follow the order of `edges`. Missing weights default to 1.
  static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                  std::vector<double> weights = {}) {
    WeightedGraph g;
    g.n_ = n;
    if (weights.empty()) weights.assign(n, 1.0);
    if (weights.size() != n) throw Error("weight vector size does not match vertex count");
    for (double w : weights)
      if (!(w >= 0.0) || !std::isfinite(w)) throw Error("vertex weights must be finite and non-negative");
    g.weights_ = std::move(weights);
    g.edges_.assign(edges.begin(), edges.end());

    std::vector<std::size_t> deg(n, 0);
    for (const Edge& e : g.edges_) {
      if (e.u >= n || e.v >= n) throw Error("edge endpoint out of range");
      if (e.u == e.v) throw Error("self-loop at vertex " + std::to_string(e.u));
      ++deg[e.u];
      ++deg[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    std::vector<std::pair<Vertex, EdgeId>> slots(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId id = 0; id < g.edges_.size(); ++id) {
      const Edge& e = g.edges_[id];
      slots[fill[e.u]++] = {e.v, id};
      slots[fill[e.v]++] = {e.u, id};
    }
    g.adj_.resize(slots.size());
    g.adj_edge_.resize(slots.size());
    for (std::size_t v = 0; v < n; ++v) {
      auto first = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto last = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      std::sort(first, last);
      for (auto it = first; it != last; ++it) {
        if (it != first && it->first == std::prev(it)->first)
          throw Error("duplicate edge (" + std::to_string(v) + "," + std::to_string(it->first) + ")");
        const std::size_t pos = static_cast<std::size_t>(it - slots.begin());
        g.adj_[pos] = it->first;
        g.adj_edge_[pos] = it->second;
      }
    }
    return g;
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  // Parallel to neighbors(v): the id of the edge to each neighbor.
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {adj_edge_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return adj_edge_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
  }
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  double weight(Vertex v) const { return weights_[v]; }
  const std::vector<double>& weights() const { return weights_; }

  // Summed in ascending vertex id order.
  double total_weight() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
  }
  // Sum over `vs` after sorting a copy, so the result is order independent.
  double weight_of(std::span<const Vertex> vs) const {
    std::vector<Vertex> sorted(vs.begin(), vs.end());
    std::sort(sorted.begin(), sorted.end());
    double s = 0.0;
    for (Vertex v : sorted) s += weights_[v];
    return s;
  }

  WeightedGraph with_weights(std::vector<double> weights) const {
    return from_edges(n_, edges_, std::move(weights));
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edge_;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
};

// Per-edge boolean scratch flags, cleared in O(1) by bumping a generation.
class EdgeMarks {
 public:
  explicit EdgeMarks(std::size_t m = 0) : set_(m) {}
  void reset() { set_.clear(); }
  void mark(EdgeId e) { set_.insert(e); }
  bool marked(EdgeId e) const { return set_.contains(e); }

 private:
  StampSet set_;
};

// A subgraph relabeled to dense ids, with the map back to the parent graph.
struct Subgraph {
  WeightedGraph graph;
  std::vector<Vertex> to_parent;

  std::vector<Vertex> lift(std::span<const Vertex> local) const {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(to_parent[v]);
    return out;
  }
};

// G[vertices]; local ids follow the order of `vertices`.
inline Subgraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> vertices,
                                 std::span<const double> weights = {}) {
  std::vector<Vertex> local(g.num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex v : vertices) {
    for (Vertex w : g.neighbors(v))
      if (v < w && local[w] != kNoVertex) edges.push_back({local[v], local[w]});
  }
  std::vector<double> ws;
  ws.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    ws.push_back(weights.empty() ? g.weight(vertices[i]) : weights[i]);
  return {WeightedGraph::from_edges(vertices.size(), edges, std::move(ws)),
          std::vector<Vertex>(vertices.begin(), vertices.end())};
}

// The subgraph formed by a set of edges; vertices are the touched endpoints in
// ascending id order.
inline Subgraph edge_subgraph(const WeightedGraph& g, std::span<const EdgeId> edge_ids) {
  std::vector<Vertex> vs;
  for (EdgeId e : edge_ids) {
    vs.push_back(g.edge(e).u);
    vs.push_back(g.edge(e).v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<Edge> edges;
  edges.reserve(edge_ids.size());
  auto local = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  for (EdgeId e : edge_ids) edges.push_back({local(g.edge(e).u), local(g.edge(e).v)});
  std::vector<double> ws;
  for (Vertex v : vs) ws.push_back(g.weight(v));
  return {WeightedGraph::from_edges(vs.size(), edges, std::move(ws)), std::move(vs)};
}

}  // namespace shallowsep
