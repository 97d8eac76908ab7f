#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "shallowsep/clustering.hpp"

namespace shallowsep {

enum class ActiveState : std::uint8_t { Never, Active, Retired };

// Each vertex goes passive -> active -> passive at most once.
class ActiveSet {
 public:
  explicit ActiveSet(std::size_t n = 0) : state_(n, ActiveState::Never) {}

  bool active(Vertex v) const { return state_[v] == ActiveState::Active; }
  ActiveState state(Vertex v) const { return state_[v]; }
  std::size_t size() const { return count_; }
  std::size_t peak() const { return peak_; }

  void activate(Vertex v) {
    if (state_[v] != ActiveState::Never) throw Error("vertex " + std::to_string(v) + " cannot be activated twice");
    state_[v] = ActiveState::Active;
    peak_ = std::max(peak_, ++count_);
  }
  void deactivate(Vertex v) {
    if (state_[v] != ActiveState::Active) throw Error("vertex " + std::to_string(v) + " is not active");
    state_[v] = ActiveState::Retired;
    --count_;
  }

 private:
  std::vector<ActiveState> state_;
  std::size_t count_ = 0, peak_ = 0;
};

// A component of C \ (δC ∩ X). X-clusters hold a passive boundary vertex;
// closed pieces hold none and are whole components of G \ X when C is in C_X.
struct XCluster {
  int cluster = -1;
  std::vector<Vertex> vertices;  // ascending
  std::vector<Vertex> boundary;  // passive δC vertices inside, ascending
  double weight = 0;
};

struct WeightedComponent {
  Vertex min_vertex = kNoVertex;
  double weight = 0;
  bool operator==(const WeightedComponent&) const = default;
};

/*
 * X-clusters of every cluster of a nested clustering under the active/passive
 * scenario. A cluster's X-clusters are recomputed when one of its boundary
 * vertices changes state (for single-edge leaves, any of its vertices, since
 * a leaf cannot be refined further and so may keep an active interior).
 */
class XClusterIndex {
 public:
  XClusterIndex(const WeightedGraph& g, const Clustering& cl)
      : g_(&g), cl_(&cl), active_(g.num_vertices()), boundary_of_(g.num_vertices()), interior_of_(g.num_vertices()),
        active_interior_(cl.clusters.size(), 0), xc_(cl.clusters.size()), closed_(cl.clusters.size()),
        in_cluster_(g.num_vertices(), 0) {
    if (!cl.nested) throw Error("X-clusters need a nested clustering");
    for (const Cluster& c : cl.clusters) {
      for (Vertex v : c.vertices) {
        (c.is_boundary(v) ? boundary_of_ : interior_of_)[v].push_back(c.id);
        in_cluster_[v] = 1;
      }
      recompute(c.id);
    }
  }

  const ActiveSet& active() const { return active_; }
  const std::vector<XCluster>& xclusters(int c) const { return xc_[static_cast<std::size_t>(c)]; }
  const std::vector<XCluster>& closed(int c) const { return closed_[static_cast<std::size_t>(c)]; }
  std::size_t recomputations() const { return recomputations_; }

  // Every cluster holding v, at any level.
  std::vector<int> clusters_of(Vertex v) const {
    std::vector<int> out = boundary_of_[v];
    out.insert(out.end(), interior_of_[v].begin(), interior_of_[v].end());
    return out;
  }

  // Returns the clusters whose passive boundary changed.
  std::vector<int> activate(Vertex v) {
    active_.activate(v);
    return update(v, +1);
  }
  std::vector<int> deactivate(Vertex v) {
    active_.deactivate(v);
    return update(v, -1);
  }

  // C_X: start at level 1; replace any cluster with an active interior vertex
  // by its children.
  std::vector<int> refine_cx() const {
    std::vector<int> out, stack(cl_->top.rbegin(), cl_->top.rend());
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const Cluster& cc = cl_->at(c);
      if (active_interior_[static_cast<std::size_t>(c)] > 0 && !cc.children.empty())
        stack.insert(stack.end(), cc.children.rbegin(), cc.children.rend());
      else
        out.push_back(c);
    }
    return out;
  }

  // Components of G \ X with their weights, ordered by smallest vertex. X-clusters
  // of C_X are glued at shared passive boundary vertices; each shared vertex
  // is counted once.
  std::vector<WeightedComponent> component_weights() const {
    const auto cx = refine_cx();
    std::vector<const XCluster*> pieces;
    std::vector<WeightedComponent> out;
    for (int c : cx) {
      for (const auto& x : xclusters(c)) pieces.push_back(&x);
      for (const auto& x : closed(c)) out.push_back({x.vertices.front(), x.weight});
    }
    std::vector<std::size_t> dsu(pieces.size());
    for (std::size_t i = 0; i < dsu.size(); ++i) dsu[i] = i;
    auto find = [&](std::size_t x) {
      while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
      return x;
    };
    std::vector<std::size_t> first(g_->num_vertices(), SIZE_MAX);
    std::vector<Vertex> shared;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (Vertex b : pieces[i]->boundary) {
        if (first[b] == SIZE_MAX) {
          first[b] = i;
          continue;
        }
        shared.push_back(b);
        auto a = find(first[b]), z = find(i);
        if (a != z) dsu[std::max(a, z)] = std::min(a, z);
      }
    std::vector<WeightedComponent> glued(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      auto& w = glued[find(i)];
      w.weight += pieces[i]->weight;
      w.min_vertex = std::min(w.min_vertex, pieces[i]->vertices.front());
    }
    for (Vertex b : shared) glued[find(first[b])].weight -= g_->weight(b);
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (find(i) == i) out.push_back(glued[i]);
    for (Vertex v = 0; v < g_->num_vertices(); ++v)
      if (!in_cluster_[v] && !active_.active(v)) out.push_back({v, g_->weight(v)});
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.min_vertex < b.min_vertex; });
    return out;
  }

 private:
  std::vector<int> update(Vertex v, int delta) {
    for (int c : interior_of_[v]) {
      active_interior_[static_cast<std::size_t>(c)] += delta;
      if (cl_->at(c).children.empty()) recompute(c);
    }
    for (int c : boundary_of_[v]) recompute(c);
    return boundary_of_[v];
  }

  void recompute(int id) {
    ++recomputations_;
    const Cluster& c = cl_->at(id);
    const bool leaf = c.children.empty();
    auto removed = [&](Vertex v) { return active_.active(v) && (leaf || c.is_boundary(v)); };
    auto& xs = xc_[static_cast<std::size_t>(id)];
    auto& cs = closed_[static_cast<std::size_t>(id)];
    xs.clear(), cs.clear();
    const std::size_t n = c.vertices.size();
    auto local = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin()); };
    std::vector<std::vector<std::size_t>> adj(n);
    for (EdgeId e : c.edges) {
      const auto a = local(g_->edge(e).u), b = local(g_->edge(e).v);
      adj[a].push_back(b), adj[b].push_back(a);
    }
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s] || removed(c.vertices[s])) continue;
      XCluster x;
      x.cluster = id;
      std::vector<std::size_t> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        x.vertices.push_back(c.vertices[i]);
        for (auto j : adj[i])
          if (!seen[j] && !removed(c.vertices[j])) seen[j] = 1, stack.push_back(j);
      }
      std::sort(x.vertices.begin(), x.vertices.end());
      for (Vertex v : x.vertices) {
        x.weight += g_->weight(v);
        if (c.is_boundary(v)) x.boundary.push_back(v);
      }
      (x.boundary.empty() ? cs : xs).push_back(std::move(x));
    }
  }

  const WeightedGraph* g_;
  const Clustering* cl_;
  ActiveSet active_;
  std::vector<std::vector<int>> boundary_of_, interior_of_;
  std::vector<int> active_interior_;
  std::vector<std::vector<XCluster>> xc_, closed_;
  std::vector<char> in_cluster_;
  std::size_t recomputations_ = 0;
};

}  // namespace shallowsep
