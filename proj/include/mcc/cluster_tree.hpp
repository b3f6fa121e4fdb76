#pragma once

#include "mcc/density.hpp"
#include "mcc/forest.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace mcc {

struct ClusterTreeNode {
  /// Highest threshold at which this component exists.
  double threshold = 0.0;
  /// Members just before the component merges, or at the lowest threshold.
  std::vector<NodeId> cells;
  std::int32_t parent = -1;
  std::vector<std::int32_t> children;
  /// For leaves, the cell the component was born from.
  NodeId mode = kNoParent;
};

/// Hierarchy of upper level sets {density >= lambda}, connected through the
/// retained forest edges, as lambda sweeps the distinct densities downward.
struct ClusterTree {
  std::vector<double> thresholds;  // distinct densities, descending
  std::vector<ClusterTreeNode> nodes;

  std::vector<std::int32_t> leaves() const;
  std::vector<std::int32_t> top_level() const;
};

ClusterTree build_cluster_tree(const SpanningForest& forest, const DensityTable& density);

/// Component label of every cell in the level set {density >= threshold}, or
/// -1 for cells below it. Labels are numbered by first appearance in cell order.
std::vector<std::int32_t> level_set_components(const SpanningForest& forest,
                                               const Eigen::ArrayXd& density,
                                               double threshold);

}  // namespace mcc
