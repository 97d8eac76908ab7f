#pragma once

#include <chrono>
#include <numeric>
#include <optional>

#include "shallowsep/graph_algorithms.hpp"
#include "shallowsep/outcome.hpp"
#include "shallowsep/params.hpp"

namespace shallowsep {

/*
 * Shared state of the generic separator loop. Membership is kept as per-vertex
 * flags because M may overlap B and V_r (trees are searched for in
 * V \ (M ∪ A), not only in V'). A ⊆ V_r holds the vertices of pruned trees.
 */
class GenericState {
 public:
  enum Flag : std::uint8_t { kActive = 1, kM = 2, kB = 4, kR = 8, kA = 16 };

  GenericState(const WeightedGraph& g, const ProblemParams& p)
      : g_(&g), params_(p), flags_(g.num_vertices(), 0), slot_of_(g.num_vertices(), -1),
        pos_(g.num_vertices(), 0), slots_(static_cast<std::size_t>(p.h - 1)),
        incidence_(static_cast<std::size_t>(p.h - 1), 0) {
    rho_ = p.rho(g.num_vertices());
    total_ = g.total_weight();
    active_.resize(g.num_vertices());
    std::iota(active_.begin(), active_.end(), Vertex{0});
    for (Vertex v = 0; v < g.num_vertices(); ++v) flags_[v] = kActive, pos_[v] = v;
    w_active_ = total_;
  }

  const WeightedGraph& graph() const { return *g_; }
  const ProblemParams& params() const { return params_; }
  Dist rho() const { return rho_; }
  double total_weight() const { return total_; }
  double active_weight() const { return w_active_; }

  bool active(Vertex v) const { return flags_[v] & kActive; }
  bool in_m(Vertex v) const { return flags_[v] & kM; }
  bool in_b(Vertex v) const { return flags_[v] & kB; }
  bool in_r(Vertex v) const { return flags_[v] & kR; }
  bool in_a(Vertex v) const { return flags_[v] & kA; }
  // V \ (M ∪ A)
  bool free(Vertex v) const { return !(flags_[v] & (kM | kA)); }
  int slot_of(Vertex v) const { return slot_of_[v]; }

  const std::vector<Vertex>& active_vertices() const { return active_; }
  std::size_t num_slots() const { return slots_.size(); }
  const TreeRecord& tree(int slot) const { return slots_[static_cast<std::size_t>(slot)]; }
  bool proper(int slot) const { return !slots_[static_cast<std::size_t>(slot)].empty(); }
  std::vector<int> proper_slots() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(slots_.size()); ++i)
      if (proper(i)) out.push_back(i);
    return out;
  }
  int free_slot() const {
    for (int i = 0; i < static_cast<int>(slots_.size()); ++i)
      if (!proper(i)) return i;
    return -1;
  }
  // Number of graph edges between tree `slot` and V'.
  std::size_t incidence(int slot) const { return incidence_[static_cast<std::size_t>(slot)]; }

  // Lowest-id vertex of V' adjacent to tree `slot`, or kNoVertex.
  Vertex lowest_active_neighbor(int slot) const {
    Vertex best = kNoVertex;
    for (Vertex x : tree(slot).vertices)
      for (Vertex y : g_->neighbors(x))
        if (active(y)) best = std::min(best, y);
    return best;
  }
  Vertex lowest_active() {
    while (cursor_ < flags_.size() && !active(static_cast<Vertex>(cursor_))) ++cursor_;
    return cursor_ < flags_.size() ? static_cast<Vertex>(cursor_) : kNoVertex;
  }

  std::vector<Vertex> separator() const {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < flags_.size(); ++v)
      if (flags_[v] & (kM | kB)) s.push_back(v);
    return s;
  }

 private:
  template <class Finder>
  friend class GenericEngine;

  void leave_active(Vertex v) {
    flags_[v] &= static_cast<std::uint8_t>(~kActive);
    w_active_ -= g_->weight(v);
    const std::size_t p = pos_[v];
    active_[p] = active_.back();
    pos_[active_[p]] = p;
    active_.pop_back();
    for (Vertex x : g_->neighbors(v))
      if (flags_[x] & kM) --incidence_[static_cast<std::size_t>(slot_of_[x])];
  }
  void add_r(Vertex v) {
    if (!(flags_[v] & kR)) flags_[v] |= kR, w_r_ += g_->weight(v);
  }

  const WeightedGraph* g_;
  ProblemParams params_;
  Dist rho_ = 0;
  double total_ = 0, w_active_ = 0, w_r_ = 0;
  std::vector<std::uint8_t> flags_;
  std::vector<int> slot_of_;
  std::vector<Vertex> active_;
  std::vector<std::size_t> pos_;
  std::vector<TreeRecord> slots_;
  std::vector<std::size_t> incidence_;
  std::size_t cursor_ = 0;
};

// What a tree finder reports for a chosen root u: either a tree for line 7,
// or a vertex v of V' adjacent to M with d_{G[V']}(u, v) > rho.
struct FindResult {
  std::optional<TreeRecord> tree;
  Vertex distant = kNoVertex;
};

/*
 * The generic loop. `Finder` supplies line 7/10 and may observe state
 * changes:
 *
 *   FindResult find(GenericState&, Vertex u);
 *   void adopted(GenericState&, int slot);
 *   void pruned(GenericState&, int slot, const TreeRecord&);
 *   void cut(GenericState&, std::span<const Vertex> layer);
 *   void check(const GenericState&);          (invariant hook)
 *   Dist radius_bound(const GenericState&);
 */
template <class Finder>
class GenericEngine {
 public:
  GenericEngine(const WeightedGraph& g, const ProblemParams& p, Finder& finder, RunOptions opt = {})
      : g_(g), st_(g, p), finder_(finder), opt_(opt), visit_u_(g.num_vertices()), visit_v_(g.num_vertices()),
        marks_u_(g.num_edges()), marks_v_(g.num_edges()), fill_owner_(g.num_vertices(), kNoFill) {}

  GenericState& state() { return st_; }

  SeparatorOutcome run() {
    const auto t0 = std::chrono::steady_clock::now();
    SeparatorOutcome out = loop();
    out.stats.values.insert(stats_.values.begin(), stats_.values.end());
    if (opt_.timing)
      out.stats["wall_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

 private:
  static constexpr std::uint32_t kNoFill = std::numeric_limits<std::uint32_t>::max();

  double threshold() const { return kBalance * st_.total_; }

  SeparatorOutcome loop() {
    stats_["rho"] = static_cast<double>(st_.rho_);
    restrict_initial();
    while (heavy()) {
      stats_.add("iterations", 1);
      if (opt_.check_invariants) check_invariants();
      prune();
      const Vertex u = pick_u();
      FindResult found = finder_.find(st_, u);
      if (found.tree) {
        if (st_.free_slot() < 0) return certificate(std::move(*found.tree));
        adopt(std::move(*found.tree));
      } else {
        const Vertex v = found.distant;
        SHALLOWSEP_CHECK(v != kNoVertex && st_.active(v), "line 10: no distant vertex v in V' could be found");
        dual_bfs_cut(u, v);
      }
    }
    if (opt_.check_invariants) check_invariants();
    SeparatorOutcome out;
    out.kind = OutcomeKind::Separator;
    out.vertices = st_.separator();
    std::size_t in_m = 0, in_b_only = 0;
    for (Vertex v : out.vertices) (st_.in_m(v) ? in_m : in_b_only)++;
    stats_["sep_tree_part"] = static_cast<double>(in_m);
    stats_["sep_cut_part"] = static_cast<double>(in_b_only);
    stats_["sep_size"] = static_cast<double>(out.vertices.size());
    out.radius_bound = finder_.radius_bound(st_);
    return out;
  }

  // Line 2: V' is kept as a single component, so this is its weight test.
  bool heavy() {
    if (st_.active_.empty()) return false;
    if (std::abs(st_.w_active_ - threshold()) <= 1e-9 * std::max(1.0, st_.total_))
      st_.w_active_ = g_.weight_of(st_.active_);
    return st_.w_active_ > threshold();
  }

  Vertex pick_u() {
    const auto slots = st_.proper_slots();
    if (slots.empty()) return st_.lowest_active();
    const Vertex u = st_.lowest_active_neighbor(slots.front());
    SHALLOWSEP_CHECK(u != kNoVertex, "proper tree survived pruning without a neighbor in V'");
    return u;
  }

  // Lines 4-5.
  void prune() {
    for (int i : st_.proper_slots()) {
      if (st_.incidence(i) != 0) continue;
      TreeRecord t = std::move(st_.slots_[static_cast<std::size_t>(i)]);
      st_.slots_[static_cast<std::size_t>(i)] = TreeRecord{};
      for (Vertex x : t.vertices) {
        st_.flags_[x] &= static_cast<std::uint8_t>(~GenericState::kM);
        st_.flags_[x] |= GenericState::kA;
        st_.slot_of_[x] = -1;
        st_.add_r(x);
      }
      stats_.add("trees_pruned", 1);
      finder_.pruned(st_, i, t);
    }
  }

  // Line 8.
  void adopt(TreeRecord t) {
    const int slot = st_.free_slot();
    std::vector<Vertex> removed;
    for (Vertex x : t.vertices) {
      SHALLOWSEP_CHECK(st_.free(x), "line 7 tree uses a vertex of M or A");
      if (st_.active(x)) {
        st_.leave_active(x);
        removed.push_back(x);
      }
    }
    std::size_t inc = 0;
    for (Vertex x : t.vertices) {
      st_.flags_[x] |= GenericState::kM;
      st_.slot_of_[x] = slot;
      for (Vertex y : g_.neighbors(x)) inc += st_.active(y);
    }
    t.slot = slot;
    stats_.add("trees_adopted", 1);
    stats_.max("max_tree_size", static_cast<double>(t.size()));
    stats_.max("max_tree_radius", static_cast<double>(t.radius));
    st_.incidence_[static_cast<std::size_t>(slot)] = inc;
    st_.slots_[static_cast<std::size_t>(slot)] = std::move(t);
    finder_.adopted(st_, slot);
    restrict_active(removed);
  }

  // Line 18: the proper trees plus the new one are pairwise adjacent.
  SeparatorOutcome certificate(TreeRecord last) {
    SeparatorOutcome out;
    out.kind = OutcomeKind::Certificate;
    for (int i : st_.proper_slots()) out.trees.push_back(st_.tree(i));
    last.slot = static_cast<int>(st_.num_slots());
    out.trees.push_back(std::move(last));
    std::vector<int> owner(g_.num_vertices(), -1);
    for (std::size_t i = 0; i < out.trees.size(); ++i)
      for (Vertex x : out.trees[i].vertices) owner[x] = static_cast<int>(i);
    const std::size_t h = out.trees.size();
    std::vector<Edge> pair_edge(h * h, Edge{kNoVertex, kNoVertex});
    for (std::size_t i = 0; i < h; ++i)
      for (Vertex x : out.trees[i].vertices)
        for (Vertex y : g_.neighbors(x)) {
          const int j = owner[y];
          if (j > static_cast<int>(i) && pair_edge[i * h + j].u == kNoVertex) pair_edge[i * h + j] = {x, y};
        }
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = i + 1; j < h; ++j) {
        SHALLOWSEP_CHECK(pair_edge[i * h + j].u != kNoVertex, "certificate trees are not pairwise adjacent");
        out.cross_edges.push_back(pair_edge[i * h + j]);
      }
    out.radius_bound = finder_.radius_bound(st_);
    stats_["sep_size"] = 0;
    return out;
  }

  // Lines 10-17 with the two searches interleaved edge by edge.
  void dual_bfs_cut(Vertex u, Vertex v) {
    stats_.add("cuts", 1);
    auto in_active = [this](Vertex x) { return st_.active(x); };
    LayeredBfs<decltype(in_active)> from_u(g_, u, in_active, visit_u_);
    LayeredBfs<decltype(in_active)> from_v(g_, v, in_active, visit_v_);
    marks_u_.reset();
    marks_v_.reset();
    const double w_before = st_.w_active_;

    using Bfs = LayeredBfs<decltype(in_active)>;
    auto try_layer = [&](Bfs& bfs) -> bool {
      const auto layer = bfs.last_layer();
      const double w_s = bfs.explored_weight();
      const double w_n = g_.weight_of(layer);
      const double w_complement = st_.w_active_ - (w_s - w_n);
      const bool take_s = w_s <= w_complement;
      const std::size_t size_s_prime =
          take_s ? bfs.explored_count() : st_.active_.size() - bfs.explored_count() + layer.size();
      if (static_cast<double>(layer.size()) * st_.params_.ell > static_cast<double>(size_s_prime)) return false;
      apply_cut(bfs, take_s);
      stats_.max("max_cut_layer", static_cast<double>(bfs.layers().size() - 1));
      return true;
    };
    // Layer 0 of either search.
    bool done = try_layer(from_u) || try_layer(from_v);
    bool turn_u = true;
    while (!done) {
      Bfs& bfs = turn_u ? from_u : from_v;
      EdgeMarks& mine = turn_u ? marks_u_ : marks_v_;
      EdgeMarks& other = turn_u ? marks_v_ : marks_u_;
      EdgeId e = kNoEdge;
      const auto step = bfs.step(&e);
      if (step == Bfs::Step::Exhausted)
        throw InvariantViolation("dual BFS exhausted V' without finding a small layer");
      if (step == Bfs::Step::Scanned && opt_.check_invariants) {
        const Edge& ed = g_.edge(e);
        if (st_.active(ed.u) && st_.active(ed.v)) {
          SHALLOWSEP_CHECK(!other.marked(e), "dual BFS searches visited a common edge");
          mine.mark(e);
        }
      }
      if (step == Bfs::Step::LayerDone) done = try_layer(bfs);
      turn_u = !turn_u;
    }
    // Balance ledger of the correctness argument.
    const double bound = st_.total_ - w_before / 2;
    SHALLOWSEP_CHECK(st_.w_r_ <= bound + 1e-9 * std::max(1.0, st_.total_),
                     "balance ledger violated: w(V_r) exceeds w(V) - W'/2");
  }

  template <class Bfs>
  void apply_cut(Bfs& bfs, bool take_s) {
    std::vector<Vertex> layer(bfs.last_layer().begin(), bfs.last_layer().end());
    std::vector<Vertex> removed;
    for (Vertex x : layer) {
      st_.leave_active(x);
      st_.flags_[x] |= GenericState::kB;
      removed.push_back(x);
    }
    stats_.add("cut_vertices", static_cast<double>(layer.size()));
    if (take_s) {
      for (std::size_t i = 0; i + 1 < bfs.layers().size(); ++i)
        for (Vertex x : bfs.layers()[i]) {
          st_.leave_active(x);
          st_.add_r(x);
          removed.push_back(x);
        }
    } else {
      // V' \ S goes to V_r; S \ N stays.
      std::vector<Vertex> rest;
      for (Vertex x : st_.active_)
        if (!bfs.explored(x)) rest.push_back(x);
      for (Vertex x : rest) {
        st_.leave_active(x);
        st_.add_r(x);
        removed.push_back(x);
      }
    }
    finder_.cut(st_, layer);
    restrict_active(removed);
  }

  // Line 3 for the initial V' = V.
  void restrict_initial() {
    auto comps = components(g_);
    if (comps.size() <= 1) return;
    std::size_t keep = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
      if (comps[i].weight > comps[keep].weight) keep = i;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (i != keep)
        for (Vertex x : comps[i].vertices) st_.leave_active(x), st_.add_r(x);
    st_.w_active_ = comps[keep].weight;
    stats_.add("components_moved", static_cast<double>(comps.size() - 1));
  }

  /*
   * Line 3 after `removed` left V'.
   * Flood fills start at the V'-neighbors of the removed set and advance in
   * round-robin; fills that meet are merged. Once at most one fill is still
   * running, the finished ones are complete components and the running one
   * is the rest of V'. Work is proportional to the smaller parts.
   */
  void restrict_active(const std::vector<Vertex>& removed) {
    if (st_.active_.empty()) return;
    std::vector<Vertex> seeds;
    for (Vertex x : removed)
      for (Vertex y : g_.neighbors(x))
        if (st_.active(y) && fill_owner_[y] == kNoFill) {
          fill_owner_[y] = 0;  // dedupe marker, reset below
          seeds.push_back(y);
        }
    for (Vertex y : seeds) fill_owner_[y] = kNoFill;
    std::sort(seeds.begin(), seeds.end());
    if (seeds.size() <= 1) return;

    const auto nf = static_cast<std::uint32_t>(seeds.size());
    std::vector<std::uint32_t> dsu(nf);
    std::iota(dsu.begin(), dsu.end(), 0u);
    auto find = [&](std::uint32_t a) {
      while (dsu[a] != a) a = dsu[a] = dsu[dsu[a]];
      return a;
    };
    std::vector<std::vector<Vertex>> queue(nf), members(nf);
    std::vector<std::size_t> head(nf, 0), pending(nf, 0);  // pending: running fills per group
    std::size_t running_groups = 0;
    std::vector<Vertex> touched;
    for (std::uint32_t f = 0; f < nf; ++f) {
      const Vertex s = seeds[f];
      fill_owner_[s] = f;
      touched.push_back(s);
      queue[f].push_back(s);
      pending[f] = 1;
      ++running_groups;
    }
    std::vector<std::uint32_t> live;
    for (std::uint32_t f = 0; f < nf; ++f)
      if (pending[f]) live.push_back(f);

    while (running_groups > 1) {
      std::vector<std::uint32_t> next_live;
      for (std::uint32_t f : live) {
        if (running_groups <= 1) {
          next_live.push_back(f);
          continue;
        }
        if (head[f] == queue[f].size()) continue;
        const Vertex x = queue[f][head[f]++];
        for (Vertex y : g_.neighbors(x)) {
          if (!st_.active(y)) continue;
          if (fill_owner_[y] == kNoFill) {
            fill_owner_[y] = f;
            touched.push_back(y);
            queue[f].push_back(y);
          } else {
            const std::uint32_t a = find(f), b = find(fill_owner_[y]);
            if (a != b) {
              dsu[b] = a;
              pending[a] += pending[b];
              --running_groups;
            }
          }
        }
        if (head[f] == queue[f].size()) {
          const std::uint32_t g = find(f);
          if (--pending[g] == 0) --running_groups;
        } else {
          next_live.push_back(f);
        }
      }
      live.swap(next_live);
    }

    // Collect groups. A group is finished iff it has no pending fills.
    std::vector<std::vector<Vertex>> finished_parts;
    std::vector<double> finished_weight;
    std::vector<std::uint32_t> group_index(nf, kNoFill);
    int running_root = -1;
    for (std::uint32_t f = 0; f < nf; ++f) {
      if (queue[f].empty()) continue;
      const std::uint32_t g = find(f);
      if (pending[g] > 0) {
        running_root = static_cast<int>(g);
        continue;
      }
      if (group_index[g] == kNoFill) {
        group_index[g] = static_cast<std::uint32_t>(finished_parts.size());
        finished_parts.emplace_back();
      }
      auto& part = finished_parts[group_index[g]];
      part.insert(part.end(), queue[f].begin(), queue[f].end());
    }
    for (Vertex y : touched) fill_owner_[y] = kNoFill;
    for (auto& part : finished_parts) finished_weight.push_back(g_.weight_of(part));

    // The component that stays as V': a heavy finished part if any, else the
    // running remainder, else the heaviest finished part.
    int keep = -1;
    for (std::size_t i = 0; i < finished_parts.size(); ++i)
      if (finished_weight[i] > threshold()) keep = static_cast<int>(i);
    if (keep < 0 && running_root < 0) {
      for (std::size_t i = 0; i < finished_parts.size(); ++i)
        if (keep < 0 || finished_weight[i] > finished_weight[static_cast<std::size_t>(keep)]) keep = static_cast<int>(i);
    }
    if (keep >= 0) {
      // Everything else in V' leaves: mark the kept part, sweep V'.
      std::vector<std::uint8_t> stay(g_.num_vertices(), 0);
      for (Vertex x : finished_parts[static_cast<std::size_t>(keep)]) stay[x] = 1;
      std::vector<Vertex> leave;
      for (Vertex x : st_.active_)
        if (!stay[x]) leave.push_back(x);
      for (Vertex x : leave) st_.leave_active(x), st_.add_r(x);
      st_.w_active_ = finished_weight[static_cast<std::size_t>(keep)];
    } else {
      for (auto& part : finished_parts)
        for (Vertex x : part) st_.leave_active(x), st_.add_r(x);
    }
    stats_.add("components_moved", static_cast<double>(finished_parts.size() - (keep >= 0 ? 1 : 0)));
  }

  void check_invariants() {
    const auto n = static_cast<Vertex>(g_.num_vertices());
    std::vector<int> owner(n, -1);
    for (int i : st_.proper_slots()) {
      const TreeRecord& t = st_.tree(i);
      for (std::size_t j = 0; j < t.size(); ++j) {
        const Vertex x = t.vertices[j];
        SHALLOWSEP_CHECK(owner[x] < 0, "trees share a vertex");
        owner[x] = i;
        if (t.parent[j] != kNoVertex) SHALLOWSEP_CHECK(g_.has_edge(x, t.parent[j]), "tree edge not in graph");
      }
    }
    double w_active = 0;
    for (Vertex v = 0; v < n; ++v) {
      const auto f = st_.flags_[v];
      using S = GenericState;
      SHALLOWSEP_CHECK(!(f & S::kActive) || !(f & (S::kM | S::kB | S::kR)), "V' intersects M ∪ B ∪ V_r");
      SHALLOWSEP_CHECK(f & (S::kActive | S::kM | S::kB | S::kR), "vertex in none of V', M, B, V_r");
      SHALLOWSEP_CHECK(!((f & S::kM) && (f & S::kA)), "M intersects A");
      SHALLOWSEP_CHECK(!(f & S::kA) || (f & S::kR), "A not contained in V_r");
      SHALLOWSEP_CHECK(((f & S::kM) != 0) == (owner[v] >= 0), "M differs from the union of tree vertex sets");
      if (f & S::kActive) w_active += g_.weight(v);
    }
    for (int i : st_.proper_slots()) {
      std::size_t inc = 0;
      for (Vertex x : st_.tree(i).vertices)
        for (Vertex y : g_.neighbors(x)) inc += st_.active(y);
      SHALLOWSEP_CHECK(inc == st_.incidence(i), "tree incidence counter out of date");
    }
    SHALLOWSEP_CHECK(std::abs(w_active - st_.w_active_) <= 1e-6 * std::max(1.0, st_.total_),
                     "tracked weight of V' drifted");
    if (!st_.active_.empty()) {
      auto comps = components(g_, st_.active_);
      SHALLOWSEP_CHECK(comps.size() == 1, "V' is not a single component after line 3");
    }
    finder_.check(st_);
    stats_.add("invariant_checks", 1);
  }

  const WeightedGraph& g_;
  GenericState st_;
  Finder& finder_;
  RunOptions opt_;
  RunStats stats_;
  StampSet visit_u_, visit_v_;
  EdgeMarks marks_u_, marks_v_;
  std::vector<std::uint32_t> fill_owner_;
};

}  // namespace shallowsep
