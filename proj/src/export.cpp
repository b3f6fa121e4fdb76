#include "mcc/export.hpp"

#include "mcc/rng.hpp"

#include <fmt/format.h>

#include <cmath>

namespace mcc {

using json = nlohmann::ordered_json;

double round6(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

json cell_json(const Schema& schema, NodeId cell) { return schema.cell_labels(cell); }

namespace {

json tree_node_json(const ClusterTree& tree, std::int32_t index, const Schema& schema) {
  const auto& node = tree.nodes[static_cast<std::size_t>(index)];
  json j;
  j["threshold"] = round6(node.threshold);
  j["cells"] = json::array();
  for (NodeId c : node.cells) j["cells"].push_back(cell_json(schema, c));
  if (node.mode != kNoParent) j["mode"] = cell_json(schema, node.mode);
  j["children"] = json::array();
  for (std::int32_t child : node.children)
    j["children"].push_back(tree_node_json(tree, child, schema));
  return j;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string node_label(const Schema& schema, NodeId cell) {
  std::string label;
  for (const auto& part : schema.cell_labels(cell)) {
    if (!label.empty()) label += ", ";
    label += part;
  }
  return dot_escape("(" + label + ")");
}

}  // namespace

json tree_to_json(const ClusterTree& tree, const Schema& schema) {
  json j;
  j["thresholds"] = json::array();
  for (double t : tree.thresholds) j["thresholds"].push_back(round6(t));
  j["roots"] = json::array();
  for (std::int32_t top : tree.top_level()) j["roots"].push_back(tree_node_json(tree, top, schema));
  j["leaves"] = tree.leaves().size();
  return j;
}

json result_to_json(const ClusteringResult& r, const ClusterConfig& config,
                    const std::optional<std::string>& warning) {
  const Schema& schema = r.table.schema();
  json j;
  j["K"] = r.num_clusters;
  j["modes"] = json::array();
  for (const Mode& m : r.modes)
    j["modes"].push_back(
        {{"cell", cell_json(schema, m.cell)}, {"density", round6(m.density)}, {"count", m.count}});
  j["mi"] = round6(r.mutual_information);
  j["deviance"] = {{"statistic", round6(r.deviance.statistic)}, {"df", r.deviance.df}};
  j["degenerate"] = r.degenerate;
  j["warning"] = warning ? json(*warning) : json(nullptr);
  j["labels"] = r.labels;
  j["cells"] = json::array();
  for (std::size_t c = 0; c < r.cell_labels.size(); ++c) {
    const auto cell = static_cast<NodeId>(c);
    j["cells"].push_back({{"cell", cell_json(schema, cell)},
                          {"count", r.table.count(cell)},
                          {"raw", round6(r.density.raw[cell])},
                          {"density", round6(r.density.normalized[cell])},
                          {"cluster", r.cell_labels[c]},
                          {"unobserved", r.table.count(cell) == 0}});
  }
  j["tree"] = tree_to_json(r.tree, schema);
  j["config"] = {{"rule", to_string(config.forest.rule)},
                 {"tie_break", config.forest.tie_break == TieBreak::deterministic
                                   ? "deterministic"
                                   : "random"},
                 {"seed", config.forest.seed},
                 {"warn_factor", config.warn_factor}};
  return j;
}

json benchmark_to_json(const std::vector<FmSummary>& summaries, const BenchmarkGrid& grid,
                       std::size_t replicates, std::uint64_t seed) {
  json j;
  j["rng"] = rng::kVersion;
  j["seed"] = seed;
  j["replicates"] = replicates;
  j["clusters"] = grid.clusters;
  j["variables"] = grid.variables;
  j["levels"] = grid.levels;
  j["cells"] = json::array();
  for (const auto& s : summaries)
    j["cells"].push_back({{"theta", s.theta},
                          {"per_cluster", s.per_cluster},
                          {"min", round6(s.min)},
                          {"q1", round6(s.q1)},
                          {"median", round6(s.median)},
                          {"q3", round6(s.q3)},
                          {"max", round6(s.max)},
                          {"mean", round6(s.mean)}});
  return j;
}

std::string graph_to_dot(const CategoryGraph& g) {
  std::string out = "digraph category_graph {\n";
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    const auto node = static_cast<NodeId>(v);
    out += fmt::format("  n{} [label=\"{}\", density={:.6f}, count={}];\n", v,
                       node_label(g.schema, node), g.density[node], g.counts[node]);
  }
  for (const Edge& e : g.edges)
    out += fmt::format("  n{} -> n{} [weight={:.6f}, shared={}];\n", e.src, e.dst, e.weight,
                       e.shared_levels);
  out += "}\n";
  return out;
}

std::string forest_to_dot(const CategoryGraph& g, const SpanningForest& f) {
  std::string out = "digraph spanning_forest {\n";
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    const auto node = static_cast<NodeId>(v);
    out += fmt::format("  n{} [label=\"{}\", density={:.6f}, cluster={}{}];\n", v,
                       node_label(g.schema, node), g.density[node], f.component[v],
                       f.parent[v] == kNoParent ? ", mode=true" : "");
  }
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    if (f.parent[v] != kNoParent)
      out += fmt::format("  n{} -> n{} [weight={:.6f}];\n", v, f.parent[v],
                         g.density[static_cast<NodeId>(v)]);
  out += "}\n";
  return out;
}

}  // namespace mcc
