#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "shallowsep/graph.hpp"

namespace shallowsep {

struct Component {
  std::vector<Vertex> vertices;  // ascending
  double weight = 0.0;
};

// Connected components of G[within], ordered by their smallest vertex.
inline std::vector<Component> components(const WeightedGraph& g, std::span<const Vertex> within) {
  std::vector<std::uint8_t> state(g.num_vertices(), 0);  // 1 = in set, 2 = visited
  for (Vertex v : within) state[v] = 1;
  std::vector<Vertex> order(within.begin(), within.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<Component> out;
  std::vector<Vertex> stack;
  for (Vertex s : order) {
    if (state[s] != 1) continue;
    Component c;
    state[s] = 2;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      c.vertices.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (state[w] == 1) state[w] = 2, stack.push_back(w);
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    for (Vertex v : c.vertices) c.weight += g.weight(v);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Component> components(const WeightedGraph& g) {
  std::vector<Vertex> all(g.num_vertices());
  std::iota(all.begin(), all.end(), Vertex{0});
  return components(g, all);
}

/*
 * Breadth-first search from one source inside the subgraph induced by the
 * vertices accepted by `in_set`, exposed layer by layer. The search can be
 * advanced one adjacency entry at a time so two searches may be interleaved.
 *
 * layers()[i] holds exactly the vertices at distance i from the source; the
 * explored set S is the union of all layers produced so far.
 */
template <class InSet>
class LayeredBfs {
 public:
  enum class Step { Scanned, LayerDone, Exhausted };

  LayeredBfs(const WeightedGraph& g, Vertex source, InSet in_set, StampSet& visited)
      : g_(&g), in_set_(std::move(in_set)), visited_(&visited) {
    visited_->clear();
    visited_->insert(source);
    layers_.push_back({source});
    explored_count_ = 1;
    explored_weight_ = g.weight(source);
  }

  Vertex source() const { return layers_.front().front(); }
  const std::vector<std::vector<Vertex>>& layers() const { return layers_; }
  std::span<const Vertex> last_layer() const { return layers_.back(); }
  std::size_t explored_count() const { return explored_count_; }
  double explored_weight() const { return explored_weight_; }
  bool exhausted() const { return exhausted_; }
  bool explored(Vertex v) const { return visited_->contains(v); }

  // Advances by one adjacency entry, or closes the current layer. When an edge
  // is scanned its id is written to *scanned_edge.
  Step step(EdgeId* scanned_edge = nullptr) {
    if (exhausted_) return Step::Exhausted;
    for (;;) {
      const auto& layer = layers_[cur_];
      if (vi_ == layer.size()) {
        if (pending_.empty()) {
          exhausted_ = true;
          return Step::Exhausted;
        }
        for (Vertex v : pending_) explored_weight_ += g_->weight(v);
        explored_count_ += pending_.size();
        layers_.push_back(std::move(pending_));
        pending_.clear();
        ++cur_;
        vi_ = ai_ = 0;
        return Step::LayerDone;
      }
      const Vertex v = layer[vi_];
      auto nb = g_->neighbors(v);
      if (ai_ == nb.size()) {
        ++vi_;
        ai_ = 0;
        continue;
      }
      const Vertex w = nb[ai_];
      if (scanned_edge) *scanned_edge = g_->incident_edges(v)[ai_];
      ++ai_;
      if (in_set_(w) && visited_->insert(w)) pending_.push_back(w);
      return Step::Scanned;
    }
  }

  // Runs until the next layer is complete; nullopt once no further layer exists.
  std::optional<std::span<const Vertex>> next_layer() {
    for (;;) {
      switch (step()) {
        case Step::LayerDone: return last_layer();
        case Step::Exhausted: return std::nullopt;
        case Step::Scanned: break;
      }
    }
  }

 private:
  const WeightedGraph* g_;
  InSet in_set_;
  StampSet* visited_;
  std::vector<std::vector<Vertex>> layers_;
  std::vector<Vertex> pending_;
  std::size_t cur_ = 0, vi_ = 0, ai_ = 0;
  std::size_t explored_count_ = 0;
  double explored_weight_ = 0.0;
  bool exhausted_ = false;
};

template <class InSet>
LayeredBfs(const WeightedGraph&, Vertex, InSet, StampSet&) -> LayeredBfs<InSet>;

// Edge budget per vertex for K_h-minor-free graphs: c_sp * h * sqrt(log2 h).
inline double sparsity_coefficient(int h, double c_sp) {
  const double hh = std::max(h, 2);
  return c_sp * hh * std::sqrt(std::log2(hh));
}

// False ("reject") iff m exceeds sparsity_coefficient(h) * n. A rejection
// means the graph contains K_h as a shallow minor; no certificate is produced.
inline bool sparsity_gate(const WeightedGraph& g, int h, double c_sp) {
  return static_cast<double>(g.num_edges()) <=
         sparsity_coefficient(h, c_sp) * static_cast<double>(g.num_vertices());
}

struct DegreeSplit {
  std::vector<Vertex> high;  // degree > delta, ascending
  Subgraph rest;             // G minus `high`, relabeled
};

inline DegreeSplit split_high_degree(const WeightedGraph& g, std::size_t delta) {
  if (delta < 1) throw Error("degree threshold must be at least 1");
  DegreeSplit out;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    (g.degree(v) > delta ? out.high : keep).push_back(v);
  out.rest = induced_subgraph(g, keep);
  return out;
}

}  // namespace shallowsep
