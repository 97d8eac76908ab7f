#pragma once

#include <cmath>
#include <map>
#include <memory>

#include "shallowsep/minicluster.hpp"
#include "shallowsep/spanner.hpp"

namespace shallowsep {

// Stretches of Algorithm 3: the largest odd values not above 6 / epsilon.
inline Dist algo3_spanner_stretch(double epsilon) { return spanner_stretch(epsilon / 6.0); }
inline int algo3_oracle_k(double epsilon) { return static_cast<int>((spanner_stretch(epsilon / 6.0) + 1) / 2); }

/*
 * Tree finding for Algorithm 3 on the degree-filtered graph. All h-1 oracles
 * of the description would see the same deletions, so one oracle over
 * S = union of S(C) serves every tree. A mini cluster leaves S as soon as
 * one of its vertices joins M; at that moment its whole interior joins M
 * through expand_tree, so every live S edge has a free interior behind it.
 */
class Algo3Finder {
 public:
  Algo3Finder(const WeightedGraph& g, const ProblemParams& p, const MiniClustering& mc, const Budgets& budgets)
      : g_(g), mc_(mc), evicted_(mc.minis.size(), 0), ell_(p.ell) {
    t_sp_ = algo3_spanner_stretch(p.epsilon);
    k_ = algo3_oracle_k(p.epsilon);
    d3_ = std::max<Dist>(1, t_sp_ * p.rho(g.num_vertices()));
    tau_ = static_cast<Dist>(2 * k_ - 1) * d3_;
    const double n = static_cast<double>(g.num_vertices());
    size_cap_ = budgets.c_e * p.ell * std::sqrt(n) * std::log2(n + 1);

    std::vector<WeightedEdge> es;
    s_edges_of_.resize(mc.minis.size());
    for (const MiniCluster& m : mc.minis) {
      if (m.boundary().size() < 2) {
        distances_.emplace_back();
        continue;
      }
      auto cd = std::make_unique<ClusterDistances>(dense_distance_graph(g, m.cluster));
      const auto sp = build_spanner(ddg_edges(cd->full), p.epsilon / 6.0);
      for (const auto& e : sp.graph.edges()) {
        const Vertex a = cd->full.vertices[e.u], b = cd->full.vertices[e.v];
        s_edges_of_[static_cast<std::size_t>(m.id)].push_back(static_cast<EdgeId>(es.size()));
        owner_.push_back(m.id);
        es.push_back({a, b, e.w});
      }
      distances_.push_back(std::move(cd));
    }
    auto s = std::make_shared<const EdgeWeightedGraph>(EdgeWeightedGraph::from_edges(g.num_vertices(), std::move(es)));
    stats_["spanner_edges"] = static_cast<double>(s->num_edges());
    oracle_ = std::make_unique<DecOracle>(s, OracleConfig{.k = k_, .d = d3_, .seed = p.seed * 1000003 + 17});
  }

  Dist spanner_stretch_used() const { return t_sp_; }
  int oracle_k() const { return k_; }
  Dist d3() const { return d3_; }
  Dist tau() const { return tau_; }
  Dist radius_bound(const GenericState&) const { return tau_ + 2 * static_cast<Dist>(ell_); }
  const RunStats& stats() const { return stats_; }
  const std::vector<char>& evicted() const { return evicted_; }
  std::uint64_t oracle_deletions() const { return oracle_->deletions(); }

  FindResult find(GenericState& st, Vertex u) {
    const auto slots = st.proper_slots();
    TreeRecord t;
    if (slots.size() <= 1) {
      t = make_tree(-1, u, {u}, [](Vertex) { return kNoVertex; });
    } else {
      std::map<Vertex, std::vector<Vertex>> adj;
      adj[u];
      for (std::size_t s = 1; s < slots.size(); ++s) {
        const int i = slots[s];
        DistEstimate best;
        for (Vertex x : st.tree(i).vertices)
          for (Vertex y : g_.neighbors(x)) {
            if (!st.free(y)) continue;
            auto est = oracle_->query(u, y);
            if (est.value < best.value) best = est;
          }
        if (best.value > tau_) return {std::nullopt, st.lowest_active_neighbor(i)};
        const auto walk = unpack(oracle_->retrieve_path(best, PathEnd::U));
        for (std::size_t j = 0; j < walk.size(); ++j) {
          SHALLOWSEP_CHECK(st.free(walk[j]), "oracle path left V \\ (M ∪ A)");
          adj[walk[j]];
          if (j > 0 && walk[j] != walk[j - 1]) adj[walk[j - 1]].push_back(walk[j]), adj[walk[j]].push_back(walk[j - 1]);
          if (adjacent_to_slot(st, walk[j], i)) break;
        }
      }
      std::map<Vertex, Vertex> parent;
      std::map<Vertex, bool> seen{{u, true}};
      std::vector<Vertex> order{u};
      for (std::size_t q = 0; q < order.size(); ++q)
        for (Vertex y : adj[order[q]])
          if (!seen[y]) seen[y] = true, parent[y] = order[q], order.push_back(y);
      t = make_tree(-1, u, order, [&](Vertex v) { return parent.at(v); });
    }
    const std::size_t before = t.size();
    t = expand_tree(g_, t, mc_, evicted_);
    stats_.add("expanded_vertices", static_cast<double>(t.size() - before));
    stats_.max("max_expanded_tree", static_cast<double>(t.size()));
    if (static_cast<double>(t.size()) > size_cap_ && !stats_.get("tree_over_budget")) stats_["tree_over_budget"] = 1;
    return {std::move(t), kNoVertex};
  }

  void adopted(GenericState& st, int slot) {
    for (Vertex x : st.tree(slot).vertices)
      for (int m : mc_.of_vertex[x])
        if (!evicted_[static_cast<std::size_t>(m)]) evict(m);
  }
  void pruned(GenericState&, int, const TreeRecord&) {}
  void cut(GenericState&, std::span<const Vertex>) {}

  void evict(int m) {
    auto& flag = evicted_[static_cast<std::size_t>(m)];
    if (flag) throw Error("mini cluster " + std::to_string(m) + " evicted twice");
    flag = 1;
    for (EdgeId e : s_edges_of_[static_cast<std::size_t>(m)]) oracle_->delete_edge_id(e);
    stats_.add("evictions", 1);
    stats_.add("spanner_deletions", static_cast<double>(s_edges_of_[static_cast<std::size_t>(m)].size()));
  }

  // All-or-nothing over interiors: a live mini cluster has its interior in
  // V \ (M ∪ A), an evicted one has it in M ∪ A; live S edges belong to live
  // mini clusters.
  void check(const GenericState& st) const {
    for (const MiniCluster& m : mc_.minis) {
      const bool ev = evicted_[static_cast<std::size_t>(m.id)];
      for (Vertex v : m.vertices())
        if (m.interior(v)) SHALLOWSEP_CHECK(st.free(v) != ev, "mini cluster interior split across V \\ (M ∪ A)");
      if (!ev)
        for (Vertex v : m.vertices()) SHALLOWSEP_CHECK(!st.in_m(v), "live mini cluster touches M");
      for (EdgeId e : s_edges_of_[static_cast<std::size_t>(m.id)])
        SHALLOWSEP_CHECK(oracle_->graph().alive(e) == !ev, "spanner edge state differs from its mini cluster");
    }
  }

 private:
  // Spanner walk -> walk in G.
  std::vector<Vertex> unpack(const std::vector<Vertex>& walk) {
    std::vector<Vertex> out{walk.front()};
    for (std::size_t j = 1; j < walk.size(); ++j) {
      const Vertex a = walk[j - 1], b = walk[j];
      EdgeId pick = kNoEdge;
      for (const Arc& arc : oracle_->graph().base().arcs(a))
        if (arc.to == b && oracle_->graph().alive(arc.id) &&
            (pick == kNoEdge || oracle_->graph().base().edge(arc.id).w < oracle_->graph().base().edge(pick).w))
          pick = arc.id;
      SHALLOWSEP_CHECK(pick != kNoEdge, "oracle walk uses a deleted spanner edge");
      const auto piece = distances_[static_cast<std::size_t>(owner_[pick])]->unpack(a, b);
      out.insert(out.end(), piece.begin() + 1, piece.end());
      stats_.add("unpacked_edges", static_cast<double>(piece.size() - 1));
    }
    return out;
  }

  bool adjacent_to_slot(const GenericState& st, Vertex x, int slot) const {
    for (Vertex y : g_.neighbors(x))
      if (st.in_m(y) && st.slot_of(y) == slot) return true;
    return false;
  }

  const WeightedGraph& g_;
  const MiniClustering& mc_;
  std::vector<char> evicted_;
  int ell_ = 1;
  Dist t_sp_ = 1, d3_ = 1, tau_ = 1;
  int k_ = 1;
  double size_cap_ = 0;
  std::vector<std::unique_ptr<ClusterDistances>> distances_;
  std::vector<std::vector<EdgeId>> s_edges_of_;
  std::vector<int> owner_;
  std::unique_ptr<DecOracle> oracle_;
  RunStats stats_;
};

// Lifts a certificate found on a relabeled subgraph back to G.
inline SeparatorOutcome lift_outcome(SeparatorOutcome out, const Subgraph& sub) {
  for (Vertex& v : out.vertices) v = sub.to_parent[v];
  std::sort(out.vertices.begin(), out.vertices.end());
  for (auto& t : out.trees) {
    t.root = sub.to_parent[t.root];
    for (Vertex& v : t.vertices) v = sub.to_parent[v];
    for (Vertex& v : t.parent)
      if (v != kNoVertex) v = sub.to_parent[v];
  }
  for (Edge& e : out.cross_edges) e = {sub.to_parent[e.u], sub.to_parent[e.v]};
  return out;
}

/*
 * Algorithm 3: sparsity gate, removal of vertices of degree above
 * ceil(sqrt(n) / l), l-clustering, mini clusters, then the generic loop on
 * the filtered graph. The removed vertices join the separator.
 */
inline SeparatorOutcome run_algorithm3(const WeightedGraph& g, const ProblemParams& p, const Budgets& budgets = {},
                                       RunOptions opt = {}) {
  p.validate();
  if (!sparsity_gate(g, p.h, budgets.c_sp)) {
    auto out = SeparatorOutcome::rejected("sparsity gate: too many edges for a K_h-minor-free graph");
    out.stats["rejected_sparsity"] = 1;
    return out;
  }
  const double n = static_cast<double>(g.num_vertices());
  const auto delta = static_cast<std::size_t>(std::max(1.0, std::ceil(std::sqrt(n) / p.ell - 1e-12)));
  DegreeSplit split = split_high_degree(g, delta);
  const WeightedGraph& h = split.rest.graph;

  ClusteringResult res = build_r_clustering(h, p, static_cast<double>(p.ell), budgets);
  if (res.minor) {
    auto out = lift_outcome(std::move(*res.minor), split.rest);
    out.stats["found_in_clustering"] = 1;
    return out;
  }
  MiniClustering mc = build_mini_clusters(h, *res.clustering, budgets);
  if (!mc.violation.empty()) {
    auto out = SeparatorOutcome::rejected("mini-cluster budget: " + mc.violation);
    out.stats["rejected_budget"] = 1;
    return out;
  }
  Algo3Finder finder(h, p, mc, budgets);
  GenericEngine<Algo3Finder> engine(h, p, finder, opt);
  SeparatorOutcome out = lift_outcome(engine.run(), split.rest);
  out.stats.values.insert(finder.stats().values.begin(), finder.stats().values.end());
  out.stats.values.insert(mc.stats.values.begin(), mc.stats.values.end());
  out.stats["delta"] = static_cast<double>(delta);
  out.stats["high_degree"] = static_cast<double>(split.high.size());
  out.stats["oracle_k"] = finder.oracle_k();
  out.stats["oracle_d"] = static_cast<double>(finder.d3());
  out.stats["spanner_stretch"] = static_cast<double>(finder.spanner_stretch_used());
  out.stats["case2_threshold"] = static_cast<double>(finder.tau());
  out.stats["oracle_deletions"] = static_cast<double>(finder.oracle_deletions());
  if (out.is_separator()) {
    std::vector<Vertex> s = out.vertices;
    s.insert(s.end(), split.high.begin(), split.high.end());
    std::sort(s.begin(), s.end());
    out.vertices = std::move(s);
    out.stats["sep_size"] = static_cast<double>(out.vertices.size());
  }
  return out;
}

}  // namespace shallowsep
