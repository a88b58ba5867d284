#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cliquepool/error.hpp"
#include "cliquepool/io.hpp"

namespace cliquepool::io {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

// Non-empty lines split on commas and whitespace.
std::vector<Line> read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::vector<Line> out;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.fields.push_back(tok);
    if (!line.fields.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& msg) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

long long to_int(const std::filesystem::path& path, const Line& line, std::size_t field) {
  if (field >= line.fields.size()) fail(path, line.number, "missing value");
  const std::string& tok = line.fields[field];
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(path, line.number, "expected an integer, found '" + tok + "'");
  }
  return v;
}

}  // namespace

TuDataset read_tu_dataset(const std::filesystem::path& dir, const std::string& name) {
  const auto file = [&](const char* suffix) { return dir / (name + suffix); };
  const auto a_path = file("_A.txt");
  const auto ind_path = file("_graph_indicator.txt");
  const auto lab_path = file("_graph_labels.txt");

  // Node partition: indicator values must start at 1 and grow by at most one.
  const auto indicator = read_table(ind_path);
  std::vector<std::size_t> graph_of(indicator.size());
  std::vector<std::size_t> first_node;
  for (std::size_t i = 0; i < indicator.size(); ++i) {
    const long long gid = to_int(ind_path, indicator[i], 0);
    const auto expected_next = static_cast<long long>(first_node.size()) + 1;
    if (gid == expected_next) {
      first_node.push_back(i);
    } else if (gid != expected_next - 1 || first_node.empty()) {
      fail(ind_path, indicator[i].number,
           "graph id " + std::to_string(gid) + " breaks the contiguous 1-based node partition");
    }
    graph_of[i] = static_cast<std::size_t>(gid - 1);
  }
  const std::size_t n_nodes = indicator.size();
  const std::size_t n_graphs = first_node.size();
  first_node.push_back(n_nodes);

  TuDataset ds;
  const auto labels = read_table(lab_path);
  if (labels.size() != n_graphs) {
    throw ParseError(lab_path.string() + ": " + std::to_string(labels.size()) +
                     " graph labels for " + std::to_string(n_graphs) + " graphs");
  }
  for (const Line& l : labels) ds.graph_labels.push_back(static_cast<int>(to_int(lab_path, l, 0)));

  std::vector<std::vector<Edge>> edges(n_graphs);
  for (const Line& l : read_table(a_path)) {
    if (l.fields.size() != 2) fail(a_path, l.number, "expected 'i, j'");
    const long long i = to_int(a_path, l, 0);
    const long long j = to_int(a_path, l, 1);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n_nodes ||
        static_cast<std::size_t>(j) > n_nodes) {
      fail(a_path, l.number,
           "edge (" + std::to_string(i) + ", " + std::to_string(j) + ") references a node outside 1.." +
               std::to_string(n_nodes));
    }
    const std::size_t u = static_cast<std::size_t>(i) - 1;
    const std::size_t v = static_cast<std::size_t>(j) - 1;
    if (graph_of[u] != graph_of[v]) fail(a_path, l.number, "edge joins two different graphs");
    const std::size_t base = first_node[graph_of[u]];
    edges[graph_of[u]].push_back({static_cast<NodeId>(u - base), static_cast<NodeId>(v - base)});
  }
  for (std::size_t g = 0; g < n_graphs; ++g) {
    ds.graphs.push_back(build_graph(edges[g], first_node[g + 1] - first_node[g]));
  }

  const auto attr_path = file("_node_attributes.txt");
  const auto nlab_path = file("_node_labels.txt");
  Matrix all;
  if (std::filesystem::exists(attr_path)) {
    const auto rows = read_table(attr_path);
    if (rows.size() != n_nodes) {
      throw ParseError(attr_path.string() + ": " + std::to_string(rows.size()) +
                       " rows for " + std::to_string(n_nodes) + " nodes");
    }
    const std::size_t cols = rows.empty() ? 0 : rows.front().fields.size();
    all = Matrix(n_nodes, cols);
    for (std::size_t r = 0; r < n_nodes; ++r) {
      if (rows[r].fields.size() != cols) fail(attr_path, rows[r].number, "ragged attribute row");
      for (std::size_t c = 0; c < cols; ++c) {
        try {
          all(r, c) = std::stod(rows[r].fields[c]);
        } catch (const std::exception&) {
          fail(attr_path, rows[r].number, "bad number '" + rows[r].fields[c] + "'");
        }
      }
    }
  } else if (std::filesystem::exists(nlab_path)) {
    const auto rows = read_table(nlab_path);
    if (rows.size() != n_nodes) {
      throw ParseError(nlab_path.string() + ": " + std::to_string(rows.size()) +
                       " labels for " + std::to_string(n_nodes) + " nodes");
    }
    std::map<long long, std::size_t> column;
    std::vector<long long> value(n_nodes);
    for (std::size_t r = 0; r < n_nodes; ++r) {
      value[r] = to_int(nlab_path, rows[r], 0);
      column.emplace(value[r], 0);
    }
    std::size_t next = 0;
    for (auto& [label, col] : column) col = next++;
    all = Matrix(n_nodes, column.size());
    for (std::size_t r = 0; r < n_nodes; ++r) all(r, column[value[r]]) = 1.0;
  }
  if (all.rows() == n_nodes && n_nodes > 0) {
    for (std::size_t g = 0; g < n_graphs; ++g) {
      Matrix x(first_node[g + 1] - first_node[g], all.cols());
      for (std::size_t r = 0; r < x.rows(); ++r) {
        std::copy(all.row(first_node[g] + r).begin(), all.row(first_node[g] + r).end(),
                  x.row(r).begin());
      }
      ds.node_features.push_back(std::move(x));
    }
  }
  return ds;
}

}  // namespace cliquepool::io
