#pragma once

#include <cmath>
#include <map>
#include <queue>
#include <unordered_map>

#include "shallowsep/ddg.hpp"
#include "shallowsep/spanner.hpp"
#include "shallowsep/xclusters.hpp"

namespace shallowsep {

/*
 * Tree finding over a nested l-clustering with X = M ∪ B. V' is always a
 * component of G \ X, so searches from u in G \ X never leave V'.
 *
 * A query runs Dijkstra over a mixed graph: the spanners S(C) of the dense
 * distance graphs on the passive boundary of every C in C_X, plus the real
 * edges of the clusters holding u or a target. Every edge weighs at least
 * the true distance of its ends in G \ X, and a shortest path costs at most
 * stretch times the true distance.
 */
class Algo2Finder {
 public:
  Algo2Finder(const WeightedGraph& g, const ProblemParams& p, const Clustering& cl, const Budgets& budgets = {})
      : g_(g), cl_(cl), budgets_(budgets), index_(g, cl), eps_(p.epsilon), dist_(g.num_vertices(), kInfDist),
        from_(g.num_vertices(), kNoVertex), via_(g.num_vertices(), -1), expanded_(cl.clusters.size(), 0),
        in_cx_(cl.clusters.size(), 0), spanners_(cl.clusters.size()), distances_(cl.clusters.size()),
        locals_(cl.clusters.size()) {
    stretch_ = spanner_stretch(p.epsilon);
    d_ = std::max<Dist>(1, stretch_ * p.rho(g.num_vertices()));
    active_cap_ = budgets.active * (p.ell * std::log2(static_cast<double>(g.num_vertices()) + 1) +
                                    static_cast<double>(g.num_vertices()) / p.ell);
  }

  Dist stretch() const { return stretch_; }
  Dist d() const { return d_; }
  Dist radius_bound(const GenericState&) const { return d_; }
  const XClusterIndex& index() const { return index_; }
  const RunStats& stats() const { return stats_; }

  FindResult find(GenericState& st, Vertex u) {
    const auto slots = st.proper_slots();
    if (slots.size() <= 1) return {tree_of({u}, u), kNoVertex};
    // Targets: V' neighbours of every tree but the first.
    std::map<Vertex, std::vector<int>> targets;
    for (std::size_t s = 1; s < slots.size(); ++s)
      for (Vertex x : st.tree(slots[s]).vertices)
        for (Vertex y : g_.neighbors(x))
          if (st.active(y)) {
            auto& v = targets[y];
            if (v.empty() || v.back() != slots[s]) v.push_back(slots[s]);
          }
    search(u, targets);
    std::map<int, Vertex> best;
    for (auto& [y, owners] : targets)
      for (int i : owners) {
        auto it = best.find(i);
        if (dist_[y] <= d_ && (it == best.end() || dist_[y] < dist_[it->second])) best[i] = y;
      }
    for (std::size_t s = 1; s < slots.size(); ++s)
      if (!best.count(slots[s])) return {std::nullopt, st.lowest_active_neighbor(slots[s])};

    std::map<Vertex, std::vector<Vertex>> adj;
    adj[u];
    for (auto& [i, y] : best) {
      const auto walk = unpack(u, y);
      for (std::size_t j = 0; j < walk.size(); ++j) {
        SHALLOWSEP_CHECK(st.active(walk[j]), "search path left V'");
        adj[walk[j]];
        if (j > 0 && walk[j] != walk[j - 1]) adj[walk[j - 1]].push_back(walk[j]), adj[walk[j]].push_back(walk[j - 1]);
        if (adjacent_to_slot(st, walk[j], i)) break;
      }
    }
    std::map<Vertex, Vertex> parent;
    std::vector<Vertex> order{u};
    std::map<Vertex, bool> seen{{u, true}};
    for (std::size_t q = 0; q < order.size(); ++q)
      for (Vertex y : adj[order[q]])
        if (!seen[y]) seen[y] = true, parent[y] = order[q], order.push_back(y);
    return {make_tree(-1, u, order, [&](Vertex v) { return parent.at(v); }), kNoVertex};
  }

  void adopted(GenericState& st, int slot) {
    for (Vertex x : st.tree(slot).vertices) activate(x);
  }
  void pruned(GenericState&, int, const TreeRecord& t) {
    for (Vertex x : t.vertices)
      for (int c : index_.deactivate(x)) spanners_[static_cast<std::size_t>(c)].reset();
  }
  void cut(GenericState&, std::span<const Vertex> layer) {
    for (Vertex x : layer) activate(x);
  }

  // The active set is exactly M ∪ B, and component weights through C_X match
  // the components of G \ X.
  void check(const GenericState& st) const {
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      SHALLOWSEP_CHECK(index_.active().active(v) == (st.in_m(v) || st.in_b(v)), "active set differs from M ∪ B");
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (!index_.active().active(v)) rest.push_back(v);
    std::vector<WeightedComponent> brute;
    for (const auto& c : components(g_, rest)) brute.push_back({c.vertices.front(), c.weight});
    const auto via = index_.component_weights();
    SHALLOWSEP_CHECK(via.size() == brute.size(), "component count through C_X differs from G \\ X");
    for (std::size_t i = 0; i < via.size(); ++i)
      SHALLOWSEP_CHECK(via[i].min_vertex == brute[i].min_vertex &&
                           std::abs(via[i].weight - brute[i].weight) <= 1e-6 * std::max(1.0, st.total_weight()),
                       "component weight through C_X differs from G \\ X");
  }

 private:
  struct ClusterSpanner {
    std::vector<Vertex> passive;                                // ascending
    std::vector<std::vector<std::pair<std::size_t, Dist>>> adj;  // over passive indices
  };

  void activate(Vertex x) {
    for (int c : index_.activate(x)) spanners_[static_cast<std::size_t>(c)].reset();
    stats_.max("max_active", static_cast<double>(index_.active().size()));
    if (static_cast<double>(index_.active().size()) > active_cap_ && !stats_.get("active_over_budget"))
      stats_["active_over_budget"] = 1;
  }

  const ClusterDistances& distances(int c) {
    auto& d = distances_[static_cast<std::size_t>(c)];
    if (!d) d = std::make_unique<ClusterDistances>(dense_distance_graph(g_, cl_.at(c)));
    return *d;
  }
  const LocalCluster& local(int c) {
    auto& l = locals_[static_cast<std::size_t>(c)];
    if (!l) l = std::make_unique<LocalCluster>(g_, cl_.at(c));
    return *l;
  }
  const ClusterSpanner& spanner(int c) {
    auto& s = spanners_[static_cast<std::size_t>(c)];
    if (s) return *s;
    s = std::make_unique<ClusterSpanner>();
    for (Vertex b : cl_.at(c).boundary)
      if (!index_.active().active(b)) s->passive.push_back(b);
    const auto ddg = restrict_ddg(distances(c).full, s->passive);
    const auto sp = build_spanner(ddg_edges(ddg), eps_);
    s->adj.resize(s->passive.size());
    for (const auto& e : sp.graph.edges()) {
      s->adj[e.u].push_back({e.v, e.w});
      s->adj[e.v].push_back({e.u, e.w});
    }
    stats_.add("spanner_builds", 1);
    return *s;
  }

  std::vector<int> clusters_of(Vertex v) const {
    std::vector<int> out;
    for (int c : index_.clusters_of(v))
      if (in_cx_[static_cast<std::size_t>(c)]) out.push_back(c);
    return out;
  }

  // Bounded Dijkstra from u; dist_ holds estimates afterwards.
  void search(Vertex u, const std::map<Vertex, std::vector<int>>& targets) {
    for (Vertex x : touched_) dist_[x] = kInfDist, from_[x] = kNoVertex, via_[x] = -1;
    touched_.clear();
    std::fill(in_cx_.begin(), in_cx_.end(), 0);
    for (int c : index_.refine_cx()) in_cx_[static_cast<std::size_t>(c)] = 1;
    std::fill(expanded_.begin(), expanded_.end(), 0);
    for (int c : clusters_of(u)) expanded_[static_cast<std::size_t>(c)] = 1;
    for (auto& [y, _] : targets)
      for (int c : clusters_of(y)) expanded_[static_cast<std::size_t>(c)] = 1;

    const auto& act = index_.active();
    using Item = std::pair<Dist, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist_[u] = 0;
    touched_.push_back(u);
    pq.push({0, u});
    std::size_t remaining = targets.size();
    auto relax = [&](Vertex x, Vertex y, Dist w, int via) {
      if (act.active(y)) return;
      const Dist nd = dist_[x] + w;
      if (nd > d_ || nd >= dist_[y]) return;
      if (dist_[y] == kInfDist) touched_.push_back(y);
      dist_[y] = nd, from_[y] = x, via_[y] = via;
      pq.push({nd, y});
    };
    while (!pq.empty() && remaining > 0) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d != dist_[x]) continue;
      stats_.add("search_pops", 1);
      if (targets.count(x)) --remaining;
      for (int c : clusters_of(x)) {
        const Cluster& cc = cl_.at(c);
        if (expanded_[static_cast<std::size_t>(c)]) {
          const LocalCluster& lc = local(c);
          for (Vertex y : lc.adj[lc.local(x)]) relax(x, lc.to_global[y], 1, -1);
        } else if (cc.is_boundary(x)) {
          const ClusterSpanner& s = spanner(c);
          const auto i = static_cast<std::size_t>(std::lower_bound(s.passive.begin(), s.passive.end(), x) - s.passive.begin());
          for (auto [j, w] : s.adj[i]) relax(x, s.passive[j], w, c);
        }
      }
    }
  }

  // The walk from u to y in G ids.
  std::vector<Vertex> unpack(Vertex u, Vertex y) {
    std::vector<Vertex> rev{y};
    for (Vertex x = y; x != u; x = from_[x]) {
      const Vertex p = from_[x];
      if (via_[x] < 0) {
        rev.push_back(p);
        continue;
      }
      auto piece = distances(via_[x]).unpack(p, x);
      stats_.add("unpacked_edges", static_cast<double>(piece.size() - 1));
      for (auto it = piece.rbegin() + 1; it != piece.rend(); ++it) rev.push_back(*it);
    }
    return {rev.rbegin(), rev.rend()};
  }

  bool adjacent_to_slot(const GenericState& st, Vertex x, int slot) const {
    for (Vertex y : g_.neighbors(x))
      if (st.in_m(y) && st.slot_of(y) == slot) return true;
    return false;
  }

  static TreeRecord tree_of(const std::vector<Vertex>& members, Vertex root) {
    return make_tree(-1, root, members, [](Vertex) { return kNoVertex; });
  }

  const WeightedGraph& g_;
  const Clustering& cl_;
  Budgets budgets_;
  XClusterIndex index_;
  double eps_;
  Dist stretch_ = 1, d_ = 1;
  double active_cap_ = 0;
  std::vector<Dist> dist_;
  std::vector<Vertex> from_;
  std::vector<int> via_;
  std::vector<Vertex> touched_;
  std::vector<char> expanded_, in_cx_;
  std::vector<std::unique_ptr<ClusterSpanner>> spanners_;
  std::vector<std::unique_ptr<ClusterDistances>> distances_;
  std::vector<std::unique_ptr<LocalCluster>> locals_;
  RunStats stats_;
};

/*
 * Algorithm 2: nested l-clustering, then the generic loop with trees found
 * through the clustering. A minor met while clustering is returned as is.
 * `pre` supplies a nested clustering built earlier for the same graph.
 */
inline SeparatorOutcome run_algorithm2(const WeightedGraph& g, const ProblemParams& p, const Budgets& budgets = {},
                                       RunOptions opt = {}, const Clustering* pre = nullptr) {
  p.validate();
  const double n = static_cast<double>(g.num_vertices());
  if (static_cast<double>(p.ell) > std::sqrt(n))
    throw RegimeError("algorithm 2 needs ell <= sqrt(n) (ell = " + std::to_string(p.ell) + ", n = " +
                      std::to_string(g.num_vertices()) + ")");
  ClusteringResult res;
  if (pre) {
    if (!pre->nested || pre->n != g.num_vertices()) throw Error("precomputed clustering is not a nested clustering of this graph");
  } else {
    res = build_nested(g, p, static_cast<double>(p.ell), budgets);
    if (res.minor) {
      res.minor->stats["found_in_clustering"] = 1;
      return std::move(*res.minor);
    }
  }
  const Clustering& cl = pre ? *pre : *res.clustering;
  Algo2Finder finder(g, p, cl, budgets);
  GenericEngine<Algo2Finder> engine(g, p, finder, opt);
  SeparatorOutcome out = engine.run();
  out.stats.values.insert(finder.stats().values.begin(), finder.stats().values.end());
  out.stats["spanner_stretch"] = static_cast<double>(finder.stretch());
  out.stats["search_horizon"] = static_cast<double>(finder.d());
  out.stats["clusters"] = static_cast<double>(cl.clusters.size());
  out.stats["clustering_diagnostics"] = static_cast<double>(cl.diagnostics.size());
  out.stats["xcluster_recomputations"] = static_cast<double>(finder.index().recomputations());
  return out;
}

}  // namespace shallowsep
