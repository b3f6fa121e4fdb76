#pragma once

#include "mcc/cluster_tree.hpp"
#include "mcc/density.hpp"
#include "mcc/forest.hpp"
#include "mcc/graph.hpp"
#include "mcc/table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcc {

struct ClusterConfig {
  ForestOptions forest;
  /// Warn when the null-model deviance is at most df times this factor.
  /// The default of 2 is a convention, not a calibrated cut-off.
  double warn_factor = 2.0;
};

struct Mode {
  NodeId cell = 0;
  double density = 0.0;
  Count count = 0;
};

struct ClusteringResult {
  ContingencyTable table;
  DensityTable density;
  CategoryGraph graph;
  SpanningForest forest;
  ClusterTree tree;

  std::size_t num_clusters = 0;
  std::vector<Mode> modes;  // modes[k] leads cluster k
  /// Cluster of every cell, zero-count cells included.
  std::vector<std::int32_t> cell_labels;
  /// Cluster of every observation; empty when clustering a table directly.
  std::vector<std::int32_t> labels;
  double mutual_information = 0.0;
  DevianceReport deviance;
  bool degenerate = false;
};

/// Table -> density -> graph -> forest -> components -> cluster tree. The
/// number of clusters is an outcome, never an input.
ClusteringResult cluster(const ContingencyTable& table, const ClusterConfig& config = {});
ClusteringResult cluster(const ObservationSet& observations,
                         const ClusterConfig& config = {});

/// Message when there is little evidence of association to cluster on. Never
/// changes the result.
std::optional<std::string> warn_if_unclusterable(const ClusteringResult& result,
                                                 double factor = 2.0);

}  // namespace mcc
