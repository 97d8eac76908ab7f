#pragma once

// JSON forms of outcomes and clusterings. Needs nlohmann/json ("json.hpp",
// shipped in vendor/).

#include <string>

#include "json.hpp"
#include "shallowsep/clustering.hpp"
#include "shallowsep/outcome.hpp"

namespace shallowsep {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

inline Json tree_to_json(const TreeRecord& t) {
  return Json{{"root", t.root}, {"vertices", t.vertices}, {"parent", t.parent}, {"radius", t.radius}};
}

// {schema, type, vertices | trees, stats}. Keys come out sorted, so equal
// outcomes give equal bytes.
inline Json outcome_to_json(const SeparatorOutcome& out) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = to_string(out.kind);
  switch (out.kind) {
    case OutcomeKind::Separator:
      j["vertices"] = out.vertices;
      break;
    case OutcomeKind::Certificate: {
      j["trees"] = Json::array();
      for (const auto& t : out.trees) j["trees"].push_back(tree_to_json(t));
      Json cross = Json::array();
      for (const Edge& e : out.cross_edges) cross.push_back({e.u, e.v});
      j["cross_edges"] = cross;
      j["radius_bound"] = out.radius_bound;
      break;
    }
    case OutcomeKind::Rejected:
      j["reason"] = out.reason;
      break;
  }
  j["stats"] = out.stats.values;
  return j;
}

inline SeparatorOutcome outcome_from_json(const Json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion)
      throw Error("unsupported outcome schema " + j.at("schema").dump());
    SeparatorOutcome out;
    const auto type = j.at("type").get<std::string>();
    if (type == "separator") {
      out.kind = OutcomeKind::Separator;
      out.vertices = j.at("vertices").get<std::vector<Vertex>>();
    } else if (type == "certificate") {
      out.kind = OutcomeKind::Certificate;
      for (const auto& t : j.at("trees")) {
        TreeRecord r;
        r.root = t.at("root").get<Vertex>();
        r.vertices = t.at("vertices").get<std::vector<Vertex>>();
        r.parent = t.at("parent").get<std::vector<Vertex>>();
        r.radius = t.at("radius").get<Dist>();
        r.slot = static_cast<int>(out.trees.size());
        out.trees.push_back(std::move(r));
      }
      if (j.contains("cross_edges"))
        for (const auto& e : j.at("cross_edges")) out.cross_edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
      out.radius_bound = j.at("radius_bound").get<Dist>();
    } else if (type == "rejected") {
      out.kind = OutcomeKind::Rejected;
      out.reason = j.value("reason", "");
    } else {
      throw Error("unknown outcome type '" + type + "'");
    }
    if (j.contains("stats")) out.stats.values = j.at("stats").get<std::map<std::string, double>>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed outcome: ") + e.what());
  }
}

inline Json clustering_to_json(const Clustering& cl) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = cl.n;
  j["r"] = cl.r;
  j["nested"] = cl.nested;
  j["top"] = cl.top;
  j["diagnostics"] = cl.diagnostics;
  j["clusters"] = Json::array();
  for (const Cluster& c : cl.clusters)
    j["clusters"].push_back(Json{{"id", c.id},
                                 {"level", c.level},
                                 {"parent", c.parent},
                                 {"children", c.children},
                                 {"vertices", c.vertices},
                                 {"edges", c.edges},
                                 {"boundary", c.boundary}});
  j["stats"] = cl.stats.values;
  return j;
}

inline Clustering clustering_from_json(const Json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion)
      throw Error("unsupported clustering schema " + j.at("schema").dump());
    Clustering cl;
    cl.n = j.at("n").get<std::size_t>();
    cl.r = j.at("r").get<double>();
    cl.nested = j.at("nested").get<bool>();
    cl.top = j.at("top").get<std::vector<int>>();
    cl.diagnostics = j.value("diagnostics", std::vector<std::string>{});
    for (const auto& c : j.at("clusters")) {
      Cluster x;
      x.id = c.at("id").get<int>();
      x.level = c.at("level").get<int>();
      x.parent = c.at("parent").get<int>();
      x.children = c.at("children").get<std::vector<int>>();
      x.vertices = c.at("vertices").get<std::vector<Vertex>>();
      x.edges = c.at("edges").get<std::vector<EdgeId>>();
      x.boundary = c.at("boundary").get<std::vector<Vertex>>();
      if (x.id != static_cast<int>(cl.clusters.size())) throw Error("cluster ids must be 0..k-1 in order");
      cl.clusters.push_back(std::move(x));
    }
    if (j.contains("stats")) cl.stats.values = j.at("stats").get<std::map<std::string, double>>();
    return cl;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed clustering: ") + e.what());
  }
}

}  // namespace shallowsep
