#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cliquepool/graph.hpp"
#include "cliquepool/hierarchy.hpp"
#include "cliquepool/matrix.hpp"

namespace cliquepool::io {

/// Graph-classification dataset in the TU multi-file text format.
struct TuDataset {
  std::vector<Graph> graphs;
  std::vector<int> graph_labels;
  /// Per-graph node features: node attributes when present, otherwise node
  /// labels one-hot encoded in ascending label order. Empty if neither file exists.
  std::vector<Matrix> node_features;
};

/// Reads <dir>/<name>_A.txt, _graph_indicator.txt and _graph_labels.txt, plus
/// the optional _node_labels.txt / _node_attributes.txt. Input ids are 1-based.
TuDataset read_tu_dataset(const std::filesystem::path& dir, const std::string& name);

/// Whitespace-separated "u v" pairs, '#' comments, optional leading "n <count>"
/// header. Without the header the node count is max index + 1.
Graph read_edge_list(const std::filesystem::path& path);
Graph parse_edge_list(const std::string& text, const std::string& source = "<string>");

/// One row of whitespace-separated reals per node.
Matrix read_feature_matrix(const std::filesystem::path& path);

inline constexpr const char* kHierarchyVersion = "cliquepool-hierarchy/1";

/// Canonical JSON text: sorted keys, sorted lists, two-space indent.
std::string hierarchy_to_json(const Hierarchy& h, bool include_dag = false);
Hierarchy hierarchy_from_json(const std::string& text);

void write_hierarchy(const Hierarchy& h, const std::filesystem::path& path,
                     bool include_dag = false);
Hierarchy read_hierarchy(const std::filesystem::path& path);

}  // namespace cliquepool::io
