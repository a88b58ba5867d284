#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "cliquepool/cliques.hpp"
#include "cliquepool/coarsen.hpp"
#include "cliquepool/error.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/grid.hpp"
#include "cliquepool/hierarchy.hpp"
#include "cliquepool/io.hpp"
#include "cliquepool/model.hpp"

namespace cliquepool::cli {

using nlohmann::json;

namespace {

std::string join(const std::vector<NodeId>& v) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? " " : "") << v[i];
  return ss.str();
}

void print_matrix(std::ostream& out, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << std::setprecision(10) << m(r, c);
    out << "\n";
  }
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

json stats_json(const LevelStats& s) {
  return {{"nodes", s.nodes},           {"edges", s.edges},
          {"cliques", s.cliques},       {"max_clique_size", s.max_clique_size},
          {"mean_clique_size", s.mean_clique_size}, {"multi_assigned", s.multi_assigned}};
}

std::optional<Matrix> load_features(const std::string& path, const Graph& g) {
  if (path.empty()) return std::nullopt;
  Matrix x = io::read_feature_matrix(path);
  if (x.rows() != g.node_count()) {
    throw ShapeError(path + ": " + std::to_string(x.rows()) + " feature rows for " +
                     std::to_string(g.node_count()) + " nodes");
  }
  return x;
}

int cmd_cliques(const std::string& path, bool oracle_check, bool as_json, std::ostream& out,
                std::ostream& err) {
  const Graph g = io::read_edge_list(path);
  const CliqueSet cliques = maximal_cliques(g);
  const DegeneracyOrder order = degeneracy_ordering(g);
  std::string oracle;
  int code = kExitOk;
  if (oracle_check) {
    try {
      oracle = maximal_cliques_bruteforce(g) == cliques ? "pass" : "fail";
    } catch (const PreconditionError& e) {
      err << "oracle check: " << e.what() << "\n";
      oracle = "refused";
    }
    if (oracle != "pass") code = kExitFailed;
  }
  if (as_json) {
    json j = {{"nodes", g.node_count()},
              {"edges", g.edge_count()},
              {"degeneracy", order.degeneracy},
              {"clique_count", cliques.size()},
              {"cliques", cliques.cliques()}};
    if (oracle_check) j["oracle"] = oracle;
    out << j.dump() << "\n";
  } else {
    out << "nodes " << g.node_count() << " edges " << g.edge_count() << " degeneracy "
        << order.degeneracy << "\n";
    out << "maximal cliques: " << cliques.size() << "\n";
    for (const Clique& c : cliques) out << "  " << join(c) << "\n";
    if (oracle_check) out << "oracle: " << (oracle == "pass" ? "PASS" : "FAIL") << "\n";
  }
  return code;
}

int cmd_coarsen(const std::string& path, const std::string& features_path, Readout readout,
                bool as_json, std::ostream& out) {
  const Graph g = io::read_edge_list(path);
  const auto x = load_features(features_path, g);
  const PoolStep step = pool_once(g, x ? &*x : nullptr, readout);
  if (as_json) {
    json pools = json::array();
    for (const Pool& p : step.assignment.pools) {
      pools.push_back({{"members", p.members}, {"source_clique", p.source_clique}});
    }
    json edges = json::array();
    for (const Edge& e : step.coarsened.edges()) edges.push_back({e.u, e.v});
    json j = {{"nodes", step.coarsened.node_count()},
              {"edges", std::move(edges)},
              {"pools", std::move(pools)},
              {"node_to_pools", step.assignment.node_to_pools},
              {"readout", std::string(to_string(readout))}};
    if (step.features) j["features"] = matrix_json(*step.features);
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "pools: " << step.assignment.pool_count() << " (from " << step.cliques.size()
      << " maximal cliques, " << step.assignment.multi_assigned_count() << " nodes shared)\n";
  for (std::size_t p = 0; p < step.assignment.pool_count(); ++p) {
    out << "  " << p << ": " << join(step.assignment.pools[p].members) << "\n";
  }
  out << "coarsened: " << step.coarsened.node_count() << " nodes, "
      << step.coarsened.edge_count() << " edges\n";
  for (const Edge& e : step.coarsened.edges()) out << "  " << e.u << " " << e.v << "\n";
  if (step.features) {
    out << "pooled features (" << to_string(readout) << "):\n";
    print_matrix(out, *step.features);
  }
  return kExitOk;
}

void print_stats_table(std::ostream& out, const Hierarchy& h) {
  out << "level  nodes  edges  cliques  max_clique  mean_clique  multi_assigned\n";
  const auto stats = level_stats(h);
  for (std::size_t k = 0; k < stats.size(); ++k) {
    const LevelStats& s = stats[k];
    out << std::setw(5) << k << std::setw(7) << s.nodes << std::setw(7) << s.edges << std::setw(9)
        << s.cliques << std::setw(12) << s.max_clique_size << std::setw(13) << std::fixed
        << std::setprecision(3) << s.mean_clique_size << std::defaultfloat << std::setw(16)
        << s.multi_assigned << "\n";
  }
}

struct HierarchyArgs {
  std::string graph;
  std::string features;
  std::string out_path;
  std::string dataset;
  std::string name;
  std::string readout = "mean";
  bool stats = false;
  bool dag = false;
  std::optional<std::size_t> max_levels;
};

int cmd_hierarchy_dataset(const HierarchyArgs& a, bool as_json, std::ostream& out,
                          std::ostream& err) {
  const io::TuDataset ds = io::read_tu_dataset(a.dataset, a.name);
  HierarchyOptions opt;
  opt.readout = parse_readout(a.readout);
  opt.max_levels = a.max_levels;
  std::size_t failures = 0;
  std::size_t deepest = 0;
  std::map<std::size_t, std::size_t> depth_histogram;
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
    try {
      const Hierarchy h = build_hierarchy(ds.graphs[i], nullptr, opt);
      deepest = std::max(deepest, h.depth());
      ++depth_histogram[h.depth()];
    } catch (const DivergenceError& e) {
      ++failures;
      err << "graph " << i << ": " << e.what() << "\n";
    }
  }
  if (as_json) {
    json hist = json::object();
    for (auto [d, c] : depth_histogram) hist[std::to_string(d)] = c;
    out << json{{"graphs", ds.graphs.size()},
                {"diverged", failures},
                {"max_depth", deepest},
                {"depth_histogram", hist}}
               .dump()
        << "\n";
  } else {
    out << "graphs " << ds.graphs.size() << " diverged " << failures << " max depth " << deepest
        << "\n";
    for (auto [d, c] : depth_histogram) out << "  depth " << d << ": " << c << "\n";
  }
  return failures == 0 ? kExitOk : kExitFailed;
}

int cmd_hierarchy(const HierarchyArgs& a, bool as_json, std::ostream& out, std::ostream& err) {
  if (!a.dataset.empty()) return cmd_hierarchy_dataset(a, as_json, out, err);
  const Graph g = io::read_edge_list(a.graph);
  const auto x = load_features(a.features, g);
  HierarchyOptions opt;
  opt.readout = parse_readout(a.readout);
  opt.max_levels = a.max_levels;
  Hierarchy h;
  try {
    h = build_hierarchy(g, x ? &*x : nullptr, opt);
  } catch (const DivergenceError& e) {
    err << e.what() << "; node counts:";
    for (std::size_t c : e.node_counts()) err << " " << c;
    err << "\n";
    return kExitFailed;
  }
  if (!a.out_path.empty()) io::write_hierarchy(h, a.out_path, a.dag);

  if (as_json) {
    json stats = json::array();
    for (const LevelStats& s : level_stats(h)) stats.push_back(stats_json(s));
    json j = {{"node_counts", h.node_counts()}, {"stats", std::move(stats)}};
    if (h.levels.back().features) j["final_features"] = matrix_json(*h.levels.back().features);
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "levels " << h.depth() << ":";
  for (std::size_t c : h.node_counts()) out << " " << c;
  out << "\n";
  if (a.stats) print_stats_table(out, h);
  if (h.levels.back().features) {
    out << "final features:\n";
    print_matrix(out, *h.levels.back().features);
  }
  if (!a.out_path.empty()) out << "wrote " << a.out_path << "\n";
  return kExitOk;
}

int cmd_grid_verify(std::size_t width, std::size_t height, std::size_t levels,
                    std::uint64_t seed, std::size_t channels, bool as_json, std::ostream& out) {
  std::mt19937_64 rng(seed);
  const Matrix image = gen::random_matrix(width * height, channels, rng, 0.0, 1.0);
  const grid::GridReport report = grid::verify_grid_equivalence({width, height}, image, levels);
  if (as_json) {
    json rows = json::array();
    for (const auto& l : report.levels) {
      rows.push_back({{"level", l.level},
                      {"expected_window", l.expected_window},
                      {"observed_window", l.observed_window},
                      {"cumulative_window", l.cumulative_window},
                      {"window_ok", l.window_ok},
                      {"positions_ok", l.positions_ok},
                      {"features_ok", l.features_ok},
                      {"mismatch", l.first_mismatch}});
    }
    out << json{{"pass", report.ok()}, {"levels", std::move(rows)}}.dump() << "\n";
  } else {
    for (const auto& l : report.levels) {
      out << "level " << l.level << ": pool " << l.observed_window << "x" << l.observed_window
          << " (expected " << l.expected_window << "x" << l.expected_window
          << "), window-max " << l.cumulative_window << "x" << l.cumulative_window << ": "
          << (l.ok() ? "PASS" : "FAIL") << "\n";
      if (!l.first_mismatch.empty()) out << "  " << l.first_mismatch << "\n";
    }
    out << (report.ok() ? "PASS" : "FAIL") << "\n";
  }
  return report.ok() ? kExitOk : kExitFailed;
}

int cmd_chain(std::size_t length, std::size_t pools, bool as_json, std::ostream& out,
              std::ostream& err) {
  const std::size_t predicted = grid::chain_length_after(length, pools);
  const Hierarchy h = build_hierarchy(grid::make_chain(length));
  const auto counts = h.node_counts();
  const std::size_t observed = pools < counts.size() ? counts[pools] : 1;
  if (as_json) {
    out << json{{"length", length}, {"pools", pools}, {"predicted", predicted},
                {"observed", observed}, {"node_counts", counts}}
               .dump()
        << "\n";
  } else {
    out << predicted << "\n";
  }
  if (observed != predicted) {
    err << "pooling the chain gave " << observed << " nodes, formula gives " << predicted << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

struct TrainArgs {
  std::string dataset;
  std::string name;
  bool synthetic = false;
  std::size_t samples = 200;
  std::string conv = "gcn";
  std::size_t hidden = 64;
  std::size_t epochs = 100;
  std::size_t batch_size = 0;
  double lr = 1e-4;
  double weight_decay = 1e-3;
};

int cmd_train(const TrainArgs& a, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  nn::ModelConfig cfg;
  cfg.conv = nn::parse_conv(a.conv);
  cfg.hidden = a.hidden;
  cfg.seed = seed;
  std::vector<nn::Sample> data;
  if (a.synthetic) {
    data = nn::clique_cycle_dataset(a.samples, seed);
    cfg.in_features = data.front().features.cols();
    cfg.n_classes = 2;
  } else {
    if (a.dataset.empty() || a.name.empty()) {
      err << "train: give --dataset DIR --name DS, or --synthetic\n";
      return kExitUsage;
    }
    const io::TuDataset ds = io::read_tu_dataset(a.dataset, a.name);
    if (ds.graphs.empty()) {
      err << "train: dataset has no graphs\n";
      return kExitFailed;
    }
    std::map<int, std::size_t> classes;
    for (int l : ds.graph_labels) classes.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, id] : classes) id = next++;
    std::size_t max_degree = 0;
    for (const Graph& g : ds.graphs)
      for (NodeId u = 0; u < g.node_count(); ++u) max_degree = std::max(max_degree, g.degree(u));
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
      Matrix x = ds.node_features.empty() ? nn::degree_one_hot(ds.graphs[i], max_degree + 1)
                                          : ds.node_features[i];
      if (ds.graphs[i].node_count() == 0) continue;
      data.push_back({nn::make_plan(ds.graphs[i]), std::move(x), classes[ds.graph_labels[i]]});
    }
    cfg.in_features = data.front().features.cols();
    cfg.n_classes = classes.size();
  }
  nn::TrainOptions opt;
  opt.epochs = a.epochs;
  opt.batch_size = a.batch_size;
  opt.adam.lr = a.lr;
  opt.adam.weight_decay = a.weight_decay;
  const nn::TrainResult r = nn::train(cfg, data, opt, [&](const nn::EpochMetrics& m) {
    out << json{{"epoch", m.epoch}, {"steps", m.steps}, {"loss", m.loss}, {"accuracy", m.accuracy}}
               .dump()
        << "\n";
  });
  out << json{{"final", true},
              {"steps", r.steps},
              {"loss", r.final_loss},
              {"accuracy", r.final_accuracy},
              {"parameters", r.params.count()},
              {"pooling_parameters", nn::Params::pooling_count()},
              {"conv", nn::to_string(cfg.conv)},
              {"hidden", cfg.hidden}}
             .dump()
      << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clique pooling: maximal cliques, coarsening hierarchies, grid checks, training"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  bool as_json = false;
  app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();
  app.add_flag("--json", as_json, "Machine-readable output");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed for every random draw");
    sub->add_flag("--json", as_json, "Machine-readable output");
  };

  std::string graph_path;
  bool oracle_check = false;
  auto* cliques = app.add_subcommand("cliques", "List maximal cliques of an edge-list graph");
  cliques->add_option("graph", graph_path, "Edge list file")->required()->check(CLI::ExistingFile);
  cliques->add_flag("--oracle-check", oracle_check, "Compare against brute force (n <= 20)");
  add_common(cliques);

  std::string features_path;
  std::string readout = "mean";
  auto* coarsen = app.add_subcommand("coarsen", "Pool a graph once");
  coarsen->add_option("graph", graph_path, "Edge list file")->required()->check(CLI::ExistingFile);
  coarsen->add_option("--features", features_path, "Node feature rows")->check(CLI::ExistingFile);
  coarsen->add_option("--readout", readout, "Pool readout")->check(CLI::IsMember({"mean", "max"}));
  add_common(coarsen);

  HierarchyArgs h;
  auto* hier = app.add_subcommand("hierarchy", "Pool repeatedly down to one node per component");
  auto* hier_graph = hier->add_option("graph", h.graph, "Edge list file")->check(CLI::ExistingFile);
  hier->add_option("--features", h.features, "Node feature rows")->check(CLI::ExistingFile);
  hier->add_option("--readout", h.readout, "Pool readout")->check(CLI::IsMember({"mean", "max"}));
  hier->add_option("--out", h.out_path, "Write the hierarchy document here");
  hier->add_flag("--stats", h.stats, "Print per-level statistics");
  hier->add_flag("--dag", h.dag, "Include the dependency DAG in --out");
  hier->add_option("--max-levels", h.max_levels, "Pooling step budget");
  auto* hier_ds = hier->add_option("--dataset", h.dataset, "TU dataset directory")
                      ->check(CLI::ExistingDirectory);
  hier->add_option("--name", h.name, "TU dataset name")->needs(hier_ds);
  hier_graph->excludes(hier_ds);
  add_common(hier);

  auto* grid_cmd = app.add_subcommand("grid", "Regular grid checks");
  grid_cmd->require_subcommand(1);
  std::size_t width = 8;
  std::size_t height = 8;
  std::size_t levels = 3;
  std::size_t channels = 3;
  auto* verify = grid_cmd->add_subcommand("verify", "Compare clique pooling with window max pooling");
  verify->add_option("--width", width)->required()->check(CLI::PositiveNumber);
  verify->add_option("--height", height)->required()->check(CLI::PositiveNumber);
  verify->add_option("--levels", levels)->required()->check(CLI::PositiveNumber);
  verify->add_option("--channels", channels, "Feature channels")->check(CLI::PositiveNumber);
  add_common(verify);

  std::size_t length = 0;
  std::size_t pools = 0;
  auto* chain = app.add_subcommand("chain", "Chain length after repeated pooling");
  chain->add_option("--length", length)->required()->check(CLI::PositiveNumber);
  chain->add_option("--pools", pools)->required();
  add_common(chain);

  TrainArgs t;
  auto* train = app.add_subcommand("train", "Train the conv+pool classifier; JSON lines per epoch");
  auto* train_ds = train->add_option("--dataset", t.dataset, "TU dataset directory")
                       ->check(CLI::ExistingDirectory);
  train->add_option("--name", t.name, "TU dataset name")->needs(train_ds);
  train->add_flag("--synthetic", t.synthetic, "Clique-vs-cycle toy task")->excludes(train_ds);
  train->add_option("--samples", t.samples, "Synthetic sample count");
  train->add_option("--conv", t.conv)->check(CLI::IsMember({"gcn", "sage", "sage-mean"}));
  train->add_option("--hidden", t.hidden)->check(CLI::PositiveNumber);
  train->add_option("--epochs", t.epochs);
  train->add_option("--batch-size", t.batch_size, "0 for full batch");
  train->add_option("--lr", t.lr);
  train->add_option("--weight-decay", t.weight_decay);
  add_common(train);

  std::vector<std::string> rev;  // CLI11 consumes arguments from the back
  for (std::size_t i = args.size(); i-- > 1;) rev.push_back(args[i]);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*cliques) return cmd_cliques(graph_path, oracle_check, as_json, out, err);
    if (*coarsen) return cmd_coarsen(graph_path, features_path, parse_readout(readout), as_json, out);
    if (*hier) {
      if (h.graph.empty() == h.dataset.empty() || (!h.dataset.empty() && h.name.empty())) {
        err << "error: hierarchy needs a graph file or --dataset DIR --name DS\n";
        return kExitUsage;
      }
      return cmd_hierarchy(h, as_json, out, err);
    }
    if (*verify) return cmd_grid_verify(width, height, levels, seed, channels, as_json, out);
    if (*chain) return cmd_chain(length, pools, as_json, out, err);
    if (*train) return cmd_train(t, seed, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace cliquepool::cli
