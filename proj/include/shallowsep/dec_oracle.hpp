#pragma once

#include <cmath>
#include <list>
#include <memory>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <vector>

#include "shallowsep/es_tree.hpp"

namespace shallowsep {

struct OracleConfig {
  int k = 1;
  Dist d = 1;
  std::uint64_t seed = 1;
  std::size_t max_ball_trees = 0;  // 0 picks a size from n

  int stretch() const { return 2 * k - 1; }
};

enum class PathEnd { U, V };

/*
 * Result of a query. When finite, `value` is the length of a concrete walk
 * u -> center -> v in the graph at query time; the remaining fields say which
 * tree holds each half of that walk.
 */
struct DistEstimate {
  Dist value = kInfDist;
  Vertex u = kNoVertex, v = kNoVertex;
  Vertex center = kNoVertex;
  int u_level = -1;  // pivot tree level holding u's half; -1 = center's cluster
  int v_level = -1;
  std::uint64_t version = 0;

  bool finite() const { return value < kInfDist; }
};

/*
 * Decremental approximate distance oracle with stretch 2k-1 for pairs at
 * distance at most d.
 *
 * Levels A_0 = V ⊇ A_1 ⊇ ... ⊇ A_{k-1} are sampled once from the seed. For
 * each level i >= 1 an Even-Shiloach tree from A_i gives d(A_i, .) and the
 * pivots p_i. The cluster of a center w whose top level is L is
 *   C(w) = { x : d(w,x) < d(A_{L+1}, x) }      (A_k = {} so top-level
 * clusters are balls). Clusters below the top level are small and are
 * recomputed on demand after a deletion could have changed them; top-level
 * balls are kept as ES trees in a bounded cache.
 *
 * Every internal tree is cut at depth k*d so that all distances the query
 * walk touches for a pair at distance <= d are represented.
 */
class DecOracle {
 public:
  DecOracle(std::shared_ptr<const EdgeWeightedGraph> g, OracleConfig cfg)
      : cfg_(cfg), g_(std::move(g)) {
    if (cfg_.k < 1) throw Error("oracle stretch parameter k must be >= 1");
    if (cfg_.d < 1) throw Error("oracle horizon d must be >= 1");
    const std::size_t n = g_.num_vertices();
    depth_ = static_cast<Dist>(cfg_.k) * cfg_.d;
    if (cfg_.max_ball_trees == 0) {
      // About 128 MiB of ball trees at 8 bytes per vertex.
      const std::size_t budget = (std::size_t{1} << 24) / std::max<std::size_t>(n, 1);
      cfg_.max_ball_trees = std::clamp<std::size_t>(budget, 4, 256);
    }
    sample_levels();
    for (int i = 1; i < cfg_.k; ++i) {
      std::vector<Vertex> sources;
      for (Vertex v = 0; v < n; ++v)
        if (level_[v] >= i) sources.push_back(v);
      pivots_.push_back(std::make_unique<EsTree>(g_, sources, depth_));
    }
    member_of_.resize(n);
  }

  DecOracle(const WeightedGraph& g, OracleConfig cfg)
      : DecOracle(std::make_shared<const EdgeWeightedGraph>(EdgeWeightedGraph::unit(g)), cfg) {}

  const OracleConfig& config() const { return cfg_; }
  std::size_t num_vertices() const { return g_.num_vertices(); }
  const DecrementalGraph& graph() const { return g_; }
  bool has_edge(Vertex u, Vertex v) const { return g_.find_live(u, v) != kNoEdge; }
  std::uint64_t deletions() const { return deletions_; }
  int level(Vertex v) const { return level_[v]; }

  void delete_edge(Vertex u, Vertex v) {
    const EdgeId e = g_.find_live(u, v);
    if (e == kNoEdge)
      throw Error("delete_edge: no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    delete_edge_id(e);
  }

  void delete_edge_id(EdgeId e) {
    g_.kill(e);
    ++version_;
    ++deletions_;
    const auto& ed = g_.base().edge(e);

    // A cluster keeps its distances unless the edge ran inside it.
    std::vector<Vertex> drop;
    for (Vertex c : member_of_[ed.u]) {
      auto it = clusters_.find(c);
      if (it != clusters_.end() && it->second.dist.count(ed.v)) drop.push_back(c);
    }
    // A cluster's membership test depends on d(A_{L+1}, .) at its members
    // and at their neighbors (which could join).
    std::vector<Vertex> raised;
    for (int i = 1; i < cfg_.k; ++i) {
      raised.clear();
      pivots_[i - 1]->on_delete(e, &raised);
      for (Vertex x : raised) {
        collect_level(x, i - 1, drop);
        for (const Arc& a : g_.base().arcs(x))
          if (g_.alive(a.id)) collect_level(a.to, i - 1, drop);
      }
    }
    for (Vertex c : drop) drop_cluster(c);
    for (auto& [c, entry] : balls_) entry.tree->on_delete(e);
  }

  DistEstimate query(Vertex u, Vertex v) {
    DistEstimate est;
    est.u = u, est.v = v, est.version = version_;
    if (u == v) {
      est.value = 0, est.center = u;
      return est;
    }
    // Invariant: w = p_i(a), and a is the endpoint whose half uses pivots.
    Vertex a = u, b = v, w = u;
    bool swapped = false;
    for (int i = 0;;) {
      const Dist db = center_dist(w, b);
      if (db < kInfDist) {
        const Dist da = i == 0 ? 0 : pivots_[i - 1]->dist(a);
        est.value = da + db;
        est.center = w;
        const int a_level = i == 0 ? -1 : i - 1;
        (swapped ? est.v_level : est.u_level) = a_level;
        (swapped ? est.u_level : est.v_level) = -1;
        return est;
      }
      if (++i >= cfg_.k) return est;
      std::swap(a, b);
      swapped = !swapped;
      w = pivots_[i - 1]->root(a);
      if (w == kNoVertex) return est;
    }
  }

  // Walks the witnessed path starting at the chosen end. `visit(x)` is called
  // for every vertex in order and may return false to stop early.
  template <class Visit>
  void retrieve_path(const DistEstimate& est, PathEnd from, Visit&& visit) {
    if (est.version != version_) throw Error("stale distance estimate: graph changed since query");
    if (!est.finite()) throw Error("no path for an infinite estimate");
    std::vector<Vertex> first = half(est.center, from == PathEnd::U ? est.u : est.v,
                                     from == PathEnd::U ? est.u_level : est.v_level);
    for (Vertex x : first)
      if (!visit(x)) return;
    std::vector<Vertex> second = half(est.center, from == PathEnd::U ? est.v : est.u,
                                      from == PathEnd::U ? est.v_level : est.u_level);
    for (auto it = std::next(second.rbegin()); it != second.rend(); ++it)
      if (!visit(*it)) return;
  }

  std::vector<Vertex> retrieve_path(const DistEstimate& est, PathEnd from = PathEnd::U) {
    std::vector<Vertex> out;
    retrieve_path(est, from, [&](Vertex x) {
      out.push_back(x);
      return true;
    });
    return out;
  }

  void dump(std::ostream& os) const {
    std::vector<std::size_t> per_level(static_cast<std::size_t>(cfg_.k), 0);
    for (int l : level_) ++per_level[static_cast<std::size_t>(l)];
    os << "oracle k=" << cfg_.k << " d=" << cfg_.d << " depth=" << depth_ << " levels:";
    for (std::size_t c : per_level) os << ' ' << c;
    os << " clusters=" << clusters_.size() << " balls=" << balls_.size() << '\n';
  }

 private:
  struct Cluster {
    std::unordered_map<Vertex, Dist> dist;
    std::unordered_map<Vertex, EdgeId> parent;
  };
  struct Ball {
    std::unique_ptr<EsTree> tree;
    std::list<Vertex>::iterator lru;
  };

  void sample_levels() {
    const std::size_t n = g_.num_vertices();
    level_.assign(n, 0);
    if (cfg_.k == 1 || n == 0) return;
    Rng rng(cfg_.seed);
    const double p = std::pow(static_cast<double>(n), -1.0 / cfg_.k);
    for (int i = 1; i < cfg_.k; ++i) {
      Vertex first = kNoVertex;
      bool any = false;
      for (Vertex v = 0; v < n; ++v) {
        if (level_[v] != i - 1) continue;
        if (first == kNoVertex) first = v;
        if (rng.unit() < p) level_[v] = i, any = true;
      }
      if (!any && first != kNoVertex) level_[first] = i;
    }
  }

  void collect_level(Vertex x, int level, std::vector<Vertex>& out) const {
    for (Vertex c : member_of_[x])
      if (level_[c] == level) out.push_back(c);
  }

  void drop_cluster(Vertex c) {
    auto it = clusters_.find(c);
    if (it == clusters_.end()) return;
    for (const auto& [x, dx] : it->second.dist) {
      auto& list = member_of_[x];
      auto pos = std::find(list.begin(), list.end(), c);
      if (pos != list.end()) {
        *pos = list.back();
        list.pop_back();
      }
    }
    clusters_.erase(it);
  }

  const Cluster& cluster(Vertex c) {
    auto it = clusters_.find(c);
    if (it != clusters_.end()) return it->second;
    const EsTree& bound = *pivots_[static_cast<std::size_t>(level_[c])];
    Cluster cl;
    using Item = std::pair<Dist, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    cl.dist[c] = 0;
    cl.parent[c] = kNoEdge;
    pq.push({0, c});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (cl.dist[x] != d) continue;
      for (const Arc& a : g_.base().arcs(x)) {
        if (!g_.alive(a.id)) continue;
        const Dist nd = d + g_.base().edge(a.id).w;
        if (nd > depth_ || nd >= bound.dist(a.to)) continue;
        auto [pos, fresh] = cl.dist.try_emplace(a.to, nd);
        if (fresh || nd < pos->second) {
          pos->second = nd;
          cl.parent[a.to] = a.id;
          pq.push({nd, a.to});
        }
      }
    }
    for (const auto& [x, dx] : cl.dist) member_of_[x].push_back(c);
    return clusters_.emplace(c, std::move(cl)).first->second;
  }

  EsTree& ball(Vertex c) {
    auto it = balls_.find(c);
    if (it != balls_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.lru);
      return *it->second.tree;
    }
    if (balls_.size() >= cfg_.max_ball_trees) {
      balls_.erase(lru_.back());
      lru_.pop_back();
    }
    lru_.push_front(c);
    const Vertex src[] = {c};
    auto tree = std::make_unique<EsTree>(g_, src, depth_);
    EsTree& ref = *tree;
    balls_.emplace(c, Ball{std::move(tree), lru_.begin()});
    return ref;
  }

  bool top_level(Vertex c) const { return level_[c] == cfg_.k - 1; }

  // d(c, x) if x lies in C(c), else kInfDist.
  Dist center_dist(Vertex c, Vertex x) {
    if (c == x) return 0;
    if (top_level(c)) return ball(c).dist(x);
    const Cluster& cl = cluster(c);
    auto it = cl.dist.find(x);
    return it == cl.dist.end() ? kInfDist : it->second;
  }

  // Vertices from x to the center, x first.
  std::vector<Vertex> half(Vertex center, Vertex x, int pivot_level) {
    std::vector<Vertex> out{x};
    if (x == center) return out;
    if (pivot_level >= 0) {
      EsTree& t = *pivots_[static_cast<std::size_t>(pivot_level)];
      for (Vertex y = x; y != center;) out.push_back(y = t.parent(y));
      return out;
    }
    if (top_level(center)) {
      EsTree& t = ball(center);
      for (Vertex y = x; y != center;) out.push_back(y = t.parent(y));
      return out;
    }
    const Cluster& cl = cluster(center);
    for (Vertex y = x; y != center;) {
      y = g_.base().edge(cl.parent.at(y)).other(y);
      out.push_back(y);
    }
    return out;
  }

  OracleConfig cfg_;
  DecrementalGraph g_;
  Dist depth_ = 0;
  std::vector<int> level_;
  std::vector<std::unique_ptr<EsTree>> pivots_;  // pivots_[i-1] spans A_i
  std::unordered_map<Vertex, Cluster> clusters_;
  std::vector<std::vector<Vertex>> member_of_;
  std::unordered_map<Vertex, Ball> balls_;
  std::list<Vertex> lru_;
  std::uint64_t version_ = 1;
  std::uint64_t deletions_ = 0;
};

}  // namespace shallowsep
