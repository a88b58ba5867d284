#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cliquepool/error.hpp"
#include "cliquepool/io.hpp"

namespace cliquepool::io {

using nlohmann::json;

namespace {

json stats_to_json(const LevelStats& s) {
  return {{"nodes", s.nodes},
          {"edges", s.edges},
          {"cliques", s.cliques},
          {"max_clique_size", s.max_clique_size},
          {"mean_clique_size", s.mean_clique_size},
          {"multi_assigned", s.multi_assigned}};
}

LevelStats stats_from_json(const json& j) {
  LevelStats s;
  s.nodes = j.at("nodes").get<std::size_t>();
  s.edges = j.at("edges").get<std::size_t>();
  s.cliques = j.at("cliques").get<std::size_t>();
  s.max_clique_size = j.at("max_clique_size").get<std::size_t>();
  s.mean_clique_size = j.at("mean_clique_size").get<double>();
  s.multi_assigned = j.at("multi_assigned").get<std::size_t>();
  return s;
}

json level_to_json(const Level& level) {
  json edges = json::array();
  for (const Edge& e : level.graph.edges()) edges.push_back({e.u, e.v});
  json out = {{"nodes", level.graph.node_count()}, {"edges", std::move(edges)}};
  if (level.assignment) {
    json pools = json::array();
    for (const Pool& p : level.assignment->pools) {
      pools.push_back({{"members", p.members}, {"source_clique", p.source_clique}});
    }
    out["pools"] = std::move(pools);
    out["node_to_pools"] = level.assignment->node_to_pools;
  }
  return out;
}

Level level_from_json(const json& j, const json& stats) {
  Level level;
  const auto n = j.at("nodes").get<std::size_t>();
  std::vector<Edge> edges;
  for (const json& e : j.at("edges")) {
    edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
  }
  level.graph = build_graph(edges, n);
  if (j.contains("pools")) {
    Assignment a;
    for (const json& p : j.at("pools")) {
      a.pools.push_back({p.at("source_clique").get<std::size_t>(),
                         p.at("members").get<std::vector<NodeId>>()});
    }
    a.node_to_pools = j.at("node_to_pools").get<std::vector<std::vector<std::uint32_t>>>();
    if (a.node_to_pools.size() != n) throw ParseError("node_to_pools length differs from node count");
    for (std::size_t u = 0; u < n; ++u) {
      for (std::uint32_t p : a.node_to_pools[u]) {
        if (p >= a.pools.size()) throw ParseError("node_to_pools references a missing pool");
      }
    }
    level.assignment = std::move(a);
  }
  level.stats = stats_from_json(stats);
  return level;
}

}  // namespace

std::string hierarchy_to_json(const Hierarchy& h, bool include_dag) {
  json doc;
  doc["version"] = kHierarchyVersion;
  doc["readout"] = std::string(to_string(h.readout));
  json levels = json::array();
  json stats = json::array();
  for (const Level& l : h.levels) {
    levels.push_back(level_to_json(l));
    stats.push_back(stats_to_json(l.stats));
  }
  doc["levels"] = std::move(levels);
  doc["stats"] = std::move(stats);
  if (include_dag) {
    const DependencyDag dag = dependency_dag(h);
    json nodes = json::array();
    for (const DagNode& n : dag.nodes) nodes.push_back({n.level, n.node});
    json edges = json::array();
    for (const auto& [from, to] : dag.edges) {
      edges.push_back({json{from.level, from.node}, json{to.level, to.node}});
    }
    doc["dag"] = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  }
  return doc.dump(2) + "\n";
}

Hierarchy hierarchy_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("version").get<std::string>() != kHierarchyVersion) {
      throw ParseError("unsupported hierarchy version '" + doc.at("version").get<std::string>() + "'");
    }
    Hierarchy h;
    h.readout = parse_readout(doc.at("readout").get<std::string>());
    const json& levels = doc.at("levels");
    const json& stats = doc.at("stats");
    if (levels.size() != stats.size()) throw ParseError("levels and stats differ in length");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      h.levels.push_back(level_from_json(levels[i], stats[i]));
    }
    return h;
  } catch (const json::exception& e) {
    throw ParseError(std::string("hierarchy document: ") + e.what());
  } catch (const GraphError& e) {
    throw ParseError(std::string("hierarchy document: ") + e.what());
  }
}

void write_hierarchy(const Hierarchy& h, const std::filesystem::path& path, bool include_dag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << hierarchy_to_json(h, include_dag);
  if (!out) throw ParseError(path.string() + ": write failed");
}

Hierarchy read_hierarchy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return hierarchy_from_json(ss.str());
}

}  // namespace cliquepool::io
