#pragma once

#include <map>
#include <string>
#include <vector>

#include "shallowsep/graph.hpp"

namespace shallowsep {

// A rooted tree given by parent pointers over its own vertex list.
struct TreeRecord {
  int slot = -1;
  Vertex root = kNoVertex;
  std::vector<Vertex> vertices;  // root first, then BFS order
  std::vector<Vertex> parent;    // parent[i] of vertices[i]; kNoVertex at the root
  Dist radius = 0;               // depth of the deepest vertex

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
};

// Counters keyed by stable identifiers. Values are integral unless the key
// says otherwise (e.g. wall_ms).
struct RunStats {
  std::map<std::string, double> values;

  double& operator[](const std::string& key) { return values[key]; }
  double get(const std::string& key) const {
    auto it = values.find(key);
    return it == values.end() ? 0.0 : it->second;
  }
  void add(const std::string& key, double x) { values[key] += x; }
  void max(const std::string& key, double x) {
    auto& v = values[key];
    v = std::max(v, x);
  }
};

enum class OutcomeKind { Separator, Certificate, Rejected };

inline const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Separator: return "separator";
    case OutcomeKind::Certificate: return "certificate";
    case OutcomeKind::Rejected: return "rejected";
  }
  return "?";
}

struct SeparatorOutcome {
  OutcomeKind kind = OutcomeKind::Separator;
  std::vector<Vertex> vertices;     // separator, ascending
  std::vector<TreeRecord> trees;    // certificate branch sets
  std::vector<Edge> cross_edges;    // one edge per tree pair (i<j), row-major
  Dist radius_bound = 0;            // radius every certificate tree respects
  std::string reason;               // why an instance was rejected
  RunStats stats;

  bool is_separator() const { return kind == OutcomeKind::Separator; }
  bool is_certificate() const { return kind == OutcomeKind::Certificate; }
  bool is_rejected() const { return kind == OutcomeKind::Rejected; }

  static SeparatorOutcome rejected(std::string why) {
    SeparatorOutcome o;
    o.kind = OutcomeKind::Rejected;
    o.reason = std::move(why);
    return o;
  }
};

// Builds a TreeRecord rooted at `root` from parent pointers given as a map
// over the tree's vertices. Vertices are listed in BFS order.
template <class ParentOf>
TreeRecord make_tree(int slot, Vertex root, const std::vector<Vertex>& members, ParentOf&& parent_of) {
  TreeRecord t;
  t.slot = slot;
  t.root = root;
  std::map<Vertex, std::vector<Vertex>> children;
  for (Vertex v : members)
    if (v != root) children[parent_of(v)].push_back(v);
  std::vector<Dist> depth{0};
  t.vertices.push_back(root);
  t.parent.push_back(kNoVertex);
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    auto it = children.find(t.vertices[i]);
    if (it == children.end()) continue;
    for (Vertex c : it->second) {
      t.vertices.push_back(c);
      t.parent.push_back(t.vertices[i]);
      depth.push_back(depth[i] + 1);
      t.radius = std::max(t.radius, depth.back());
    }
  }
  if (t.vertices.size() != members.size()) throw InvariantViolation("parent pointers do not form a tree");
  return t;
}

}  // namespace shallowsep
