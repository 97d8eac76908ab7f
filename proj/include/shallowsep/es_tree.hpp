#pragma once

#include <memory>
#include <queue>
#include <span>
#include <vector>

#include "shallowsep/edge_weighted_graph.hpp"

namespace shallowsep {

// An edge-weighted graph under edge deletions. The base graph is shared
// between several oracles; each owns its own liveness flags.
class DecrementalGraph {
 public:
  explicit DecrementalGraph(std::shared_ptr<const EdgeWeightedGraph> base)
      : base_(std::move(base)), alive_(base_->num_edges(), 1), live_count_(base_->num_edges()) {
    unit_ = true;
    for (const auto& e : base_->edges()) {
      if (e.w < 1) throw Error("decremental graph requires integer edge lengths >= 1");
      if (e.w != 1) unit_ = false;
    }
  }

  const EdgeWeightedGraph& base() const { return *base_; }
  std::size_t num_vertices() const { return base_->num_vertices(); }
  bool alive(EdgeId e) const { return alive_[e] != 0; }
  bool unit_lengths() const { return unit_; }
  std::size_t live_edges() const { return live_count_; }

  void kill(EdgeId e) {
    if (!alive_[e]) throw Error("edge " + std::to_string(e) + " already deleted");
    alive_[e] = 0;
    --live_count_;
  }

  // Live edge between u and v, or kNoEdge.
  EdgeId find_live(Vertex u, Vertex v) const {
    auto au = base_->arcs(u), av = base_->arcs(v);
    const Vertex from = au.size() <= av.size() ? u : v;
    const Vertex to = from == u ? v : u;
    for (const Arc& a : base_->arcs(from))
      if (a.to == to && alive_[a.id]) return a.id;
    return kNoEdge;
  }

 private:
  std::shared_ptr<const EdgeWeightedGraph> base_;
  std::vector<std::uint8_t> alive_;
  std::size_t live_count_;
  bool unit_ = true;
};

/*
 * Shortest-path tree from a set of sources, truncated at `depth`, maintained
 * under edge deletions: distances only grow. A vertex that loses its parent
 * edge first looks for another neighbor supporting its current distance; the
 * ones that find none are re-settled together by a local Dijkstra.
 *
 * Distances beyond `depth` are reported as kInfDist.
 */
class EsTree {
 public:
  // Lengths are >= 1, so the sources are exactly the vertices at distance 0.
  EsTree(const DecrementalGraph& g, std::span<const Vertex> sources, Dist depth)
      : g_(&g), depth_(depth), dist_(g.num_vertices(), kUnreached), parent_(g.num_vertices(), kNoEdge) {
    if (depth >= kUnreached) throw Error("ES tree depth too large");
    build(sources);
  }

  Dist dist(Vertex v) const { return dist_[v] == kUnreached ? kInfDist : dist_[v]; }
  EdgeId parent_edge(Vertex v) const { return parent_[v]; }
  bool reached(Vertex v) const { return dist_[v] != kUnreached; }
  Dist depth() const { return depth_; }

  // Next vertex on the tree path from v towards its source.
  Vertex parent(Vertex v) const {
    const EdgeId e = parent_[v];
    return e == kNoEdge ? kNoVertex : g_->base().edge(e).other(v);
  }

  // The source at the top of v's tree path. Cached between deletions.
  Vertex root(Vertex v) {
    if (!reached(v)) return kNoVertex;
    if (root_.empty()) root_.assign(dist_.size(), kNoVertex), root_epoch_.assign(dist_.size(), 0);
    std::vector<Vertex> walk;
    Vertex x = v;
    while (root_epoch_[x] != epoch_ && parent_[x] != kNoEdge) {
      walk.push_back(x);
      x = parent(x);
    }
    const Vertex r = root_epoch_[x] == epoch_ ? root_[x] : x;
    root_[x] = r, root_epoch_[x] = epoch_;
    for (Vertex y : walk) root_[y] = r, root_epoch_[y] = epoch_;
    return r;
  }

  // Must be called after `e` has been killed in the underlying graph.
  // Vertices whose distance increased are appended to *raised.
  void on_delete(EdgeId e, std::vector<Vertex>* raised = nullptr) {
    const auto& ed = g_->base().edge(e);
    Vertex child = kNoVertex;
    if (parent_[ed.u] == e) child = ed.u;
    else if (parent_[ed.v] == e) child = ed.v;
    if (child == kNoVertex) return;
    ++epoch_;

    // Phase 1: in order of old distance, find the vertices left without a
    // neighbor that supports their current level. Only tree descendants of
    // such vertices can lose support.
    thread_local StampSet lost;
    thread_local std::vector<Vertex> affected;
    if (lost.capacity() < dist_.size()) lost.resize(dist_.size());
    lost.clear();
    affected.clear();
    using Item = std::pair<Level, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> work;
    work.push({dist_[child], child});
    while (!work.empty()) {
      const Vertex x = work.top().second;
      work.pop();
      if (lost.contains(x)) continue;
      EdgeId support = kNoEdge;
      for (const Arc& a : g_->base().arcs(x)) {
        if (!g_->alive(a.id) || lost.contains(a.to) || dist_[a.to] == kUnreached) continue;
        if (dist_[a.to] + g_->base().edge(a.id).w == dist_[x]) {
          support = a.id;
          break;
        }
      }
      if (support != kNoEdge) {
        parent_[x] = support;
        continue;
      }
      lost.insert(x);
      affected.push_back(x);
      for (const Arc& a : g_->base().arcs(x))
        if (parent_[a.to] == a.id && !lost.contains(a.to)) work.push({dist_[a.to], a.to});
    }

    // Phase 2: Dijkstra over the affected vertices, seeded from their
    // unaffected neighbors.
    for (Vertex x : affected) {
      Dist best = kUnreached;
      EdgeId best_edge = kNoEdge;
      for (const Arc& a : g_->base().arcs(x)) {
        if (!g_->alive(a.id) || lost.contains(a.to) || dist_[a.to] == kUnreached) continue;
        const Dist cand = dist_[a.to] + g_->base().edge(a.id).w;
        if (cand < best) best = cand, best_edge = a.id;
      }
      if (best > depth_) best = kUnreached, best_edge = kNoEdge;
      dist_[x] = static_cast<Level>(best);
      parent_[x] = best_edge;
      if (best != kUnreached) work.push({dist_[x], x});
    }
    while (!work.empty()) {
      const auto [key, x] = work.top();
      work.pop();
      if (key != dist_[x]) continue;
      for (const Arc& a : g_->base().arcs(x)) {
        if (!g_->alive(a.id) || !lost.contains(a.to)) continue;
        const Dist cand = static_cast<Dist>(key) + g_->base().edge(a.id).w;
        if (cand <= depth_ && cand < dist_[a.to]) {
          dist_[a.to] = static_cast<Level>(cand);
          parent_[a.to] = a.id;
          work.push({dist_[a.to], a.to});
        }
      }
    }
    if (raised) raised->insert(raised->end(), affected.begin(), affected.end());
  }

 private:
  void build(std::span<const Vertex> sources) {
    for (Vertex s : sources) dist_[s] = 0;
    if (g_->unit_lengths()) {
      std::vector<Vertex> frontier(sources.begin(), sources.end()), next;
      for (Level level = 0; !frontier.empty() && level < depth_; ++level) {
        next.clear();
        for (Vertex v : frontier)
          for (const Arc& a : g_->base().arcs(v))
            if (g_->alive(a.id) && dist_[a.to] == kUnreached) {
              dist_[a.to] = level + 1;
              parent_[a.to] = a.id;
              next.push_back(a.to);
            }
        frontier.swap(next);
      }
      return;
    }
    using Item = std::pair<Dist, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Vertex s : sources) pq.push({0, s});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d != dist_[v]) continue;
      for (const Arc& a : g_->base().arcs(v)) {
        if (!g_->alive(a.id)) continue;
        const Dist nd = d + g_->base().edge(a.id).w;
        if (nd <= depth_ && nd < dist_[a.to]) {
          dist_[a.to] = static_cast<Level>(nd);
          parent_[a.to] = a.id;
          pq.push({nd, a.to});
        }
      }
    }
  }

  using Level = std::int32_t;
  static constexpr Level kUnreached = std::numeric_limits<Level>::max();

  const DecrementalGraph* g_;
  Dist depth_;
  std::vector<Level> dist_;
  std::vector<EdgeId> parent_;
  std::vector<Vertex> root_;
  std::vector<std::uint64_t> root_epoch_;
  std::uint64_t epoch_ = 1;
};

}  // namespace shallowsep
