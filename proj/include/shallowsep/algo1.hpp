#pragma once

#include <map>
#include <memory>

#include "shallowsep/dec_oracle.hpp"
#include "shallowsep/generic.hpp"

namespace shallowsep {

/*
 * Tree finding with one decremental oracle per tree slot. Oracle D_i holds
 * the graph G_i' = G[(V \ (M ∪ A)) ∪ V(T_i)] without the non-tree edges
 * inside T_i; it is kept in sync purely by deletions.
 */
class Algo1Finder {
 public:
  Algo1Finder(const WeightedGraph& g, const ProblemParams& p, const Budgets& budgets = {})
      : g_(g), budgets_(budgets) {
    k_ = p.oracle_k();
    d_ = std::max<Dist>(1, 4 * static_cast<Dist>(k_) * p.rho(g.num_vertices()));
    auto base = std::make_shared<const EdgeWeightedGraph>(EdgeWeightedGraph::unit(g));
    for (int i = 0; i + 1 < p.h; ++i)
      oracles_.push_back(std::make_unique<DecOracle>(
          base, OracleConfig{.k = k_, .d = d_, .seed = p.seed * 1000003 + static_cast<std::uint64_t>(i)}));
  }

  int k() const { return k_; }
  Dist d() const { return d_; }
  Dist radius_bound(const GenericState&) const { return d_; }
  std::uint64_t oracle_deletions() const {
    std::uint64_t s = 0;
    for (const auto& o : oracles_) s += o->deletions();
    return s;
  }

  FindResult find(GenericState& st, Vertex u) {
    const auto slots = st.proper_slots();
    std::vector<std::pair<int, DistEstimate>> best;
    for (std::size_t s = 1; s < slots.size(); ++s) {
      const int i = slots[s];
      DecOracle& o = *oracles_[static_cast<std::size_t>(i)];
      DistEstimate b;
      for (Vertex t : st.tree(i).vertices) {
        auto est = o.query(u, t);
        if (est.value < b.value) b = est;
      }
      if (b.value > d_) return {std::nullopt, st.lowest_active_neighbor(i)};
      best.emplace_back(i, b);
    }

    // Union of the oracle paths, each cut at its first vertex adjacent to T_i.
    std::map<Vertex, std::vector<Vertex>> adj;
    adj[u];
    for (auto& [i, est] : best) {
      Vertex prev = kNoVertex;
      oracles_[static_cast<std::size_t>(i)]->retrieve_path(est, PathEnd::U, [&](Vertex x) {
        SHALLOWSEP_CHECK(st.free(x), "oracle path left V \\ (M ∪ A) before reaching its tree");
        if (prev != kNoVertex) adj[prev].push_back(x), adj[x].push_back(prev);
        adj[x];
        prev = x;
        return !adjacent_to_slot(st, x, i);
      });
    }
    std::map<Vertex, Vertex> parent;
    std::map<Vertex, Dist> depth;
    std::vector<Vertex> order{u};
    depth[u] = 0;
    for (std::size_t q = 0; q < order.size(); ++q)
      for (Vertex y : adj[order[q]])
        if (!depth.count(y)) depth[y] = depth[order[q]] + 1, parent[y] = order[q], order.push_back(y);
    if (budgets_.pad_trees > 0) pad(st, order, parent, depth);
    return {make_tree(-1, u, order, [&](Vertex v) { return parent.at(v); }), kNoVertex};
  }

  void adopted(GenericState& st, int slot) {
    const TreeRecord& t = st.tree(slot);
    for (std::size_t j = 0; j < oracles_.size(); ++j) {
      if (static_cast<int>(j) == slot) continue;
      for (Vertex x : t.vertices) kill_incident(*oracles_[j], x, [](Vertex) { return true; });
    }
    // In D_slot only the tree edges survive inside T.
    std::map<std::pair<Vertex, Vertex>, bool> tree_edge;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (t.parent[j] != kNoVertex)
        tree_edge[{std::min(t.vertices[j], t.parent[j]), std::max(t.vertices[j], t.parent[j])}] = true;
    DecOracle& own = *oracles_[static_cast<std::size_t>(slot)];
    for (Vertex x : t.vertices)
      kill_incident(own, x, [&](Vertex y) {
        return y > x && st.in_m(y) && st.slot_of(y) == slot && !tree_edge.count({x, y});
      });
  }

  void pruned(GenericState&, int slot, const TreeRecord& t) {
    for (Vertex x : t.vertices) kill_incident(*oracles_[static_cast<std::size_t>(slot)], x, [](Vertex) { return true; });
  }

  void cut(GenericState&, std::span<const Vertex>) {}

  // Every oracle graph equals its defining G_i'.
  void check(const GenericState& st) const {
    for (std::size_t i = 0; i < oracles_.size(); ++i) {
      const int slot = static_cast<int>(i);
      const TreeRecord& t = st.tree(slot);
      std::map<std::pair<Vertex, Vertex>, bool> tree_edge;
      for (std::size_t j = 0; j < t.size(); ++j)
        if (t.parent[j] != kNoVertex)
          tree_edge[{std::min(t.vertices[j], t.parent[j]), std::max(t.vertices[j], t.parent[j])}] = true;
      auto in_vi = [&](Vertex x) { return st.free(x) || (st.in_m(x) && st.slot_of(x) == slot); };
      for (EdgeId e = 0; e < g_.num_edges(); ++e) {
        const Edge& ed = g_.edge(e);
        bool want = in_vi(ed.u) && in_vi(ed.v);
        if (want && st.in_m(ed.u) && st.in_m(ed.v))
          want = tree_edge.count({std::min(ed.u, ed.v), std::max(ed.u, ed.v)}) > 0;
        SHALLOWSEP_CHECK(oracles_[i]->graph().alive(e) == want, "oracle graph out of sync with G_i'");
      }
    }
  }

 private:
  bool adjacent_to_slot(const GenericState& st, Vertex x, int slot) const {
    for (Vertex y : g_.neighbors(x))
      if (st.in_m(y) && st.slot_of(y) == slot) return true;
    return false;
  }

  template <class Pred>
  void kill_incident(DecOracle& o, Vertex x, Pred&& pred) {
    auto nb = g_.neighbors(x);
    auto ids = g_.incident_edges(x);
    for (std::size_t j = 0; j < nb.size(); ++j)
      if (o.graph().alive(ids[j]) && pred(nb[j])) o.delete_edge_id(ids[j]);
  }

  // Grows the tree by BFS through V \ (M ∪ A) until it has d vertices,
  // keeping depth <= d.
  void pad(const GenericState& st, std::vector<Vertex>& order, std::map<Vertex, Vertex>& parent,
           std::map<Vertex, Dist>& depth) const {
    for (std::size_t q = 0; q < order.size() && static_cast<Dist>(order.size()) < d_; ++q) {
      const Vertex x = order[q];
      if (depth[x] >= d_) continue;
      for (Vertex y : g_.neighbors(x)) {
        if (static_cast<Dist>(order.size()) >= d_) break;
        if (!st.free(y) || depth.count(y)) continue;
        depth[y] = depth[x] + 1;
        parent[y] = x;
        order.push_back(y);
      }
    }
  }

  const WeightedGraph& g_;
  Budgets budgets_;
  int k_ = 1;
  Dist d_ = 1;
  std::vector<std::unique_ptr<DecOracle>> oracles_;
};

inline SeparatorOutcome run_algorithm1(const WeightedGraph& g, const ProblemParams& p, const Budgets& budgets = {},
                                       RunOptions opt = {}) {
  p.validate();
  Algo1Finder finder(g, p, budgets);
  GenericEngine<Algo1Finder> engine(g, p, finder, opt);
  SeparatorOutcome out = engine.run();
  out.stats["oracle_k"] = finder.k();
  out.stats["oracle_d"] = static_cast<double>(finder.d());
  out.stats["oracle_deletions"] = static_cast<double>(finder.oracle_deletions());
  return out;
}

}  // namespace shallowsep
