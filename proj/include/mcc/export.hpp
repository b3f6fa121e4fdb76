#pragma once

#include "mcc/cluster_tree.hpp"
#include "mcc/graph.hpp"
#include "mcc/pipeline.hpp"
#include "mcc/simulate.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mcc {

/// Rounds to 6 decimal places for printed documents.
double round6(double x);

nlohmann::ordered_json cell_json(const Schema& schema, NodeId cell);

/// {"thresholds": [...], "roots": [{"threshold", "cells", "mode"?, "children"}]}
nlohmann::ordered_json tree_to_json(const ClusterTree& tree, const Schema& schema);

/// {K, modes, mi, deviance, degenerate, warning, labels, cells, tree, config}
nlohmann::ordered_json result_to_json(const ClusteringResult& result, const ClusterConfig& config,
                              const std::optional<std::string>& warning);

nlohmann::ordered_json benchmark_to_json(const std::vector<FmSummary>& summaries,
                                 const BenchmarkGrid& grid, std::size_t replicates,
                                 std::uint64_t seed);

/// Whole category graph; node attribute `density`, edge attribute `weight`.
std::string graph_to_dot(const CategoryGraph& graph);

/// Nodes plus retained edges only; nodes carry their cluster.
std::string forest_to_dot(const CategoryGraph& graph, const SpanningForest& forest);

}  // namespace mcc
