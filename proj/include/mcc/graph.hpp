#pragma once

#include "mcc/density.hpp"
#include "mcc/table.hpp"

#include <Eigen/Core>

#include <vector>

namespace mcc {

using NodeId = CellIndex;

/// Directed link from a cell to a denser cell it shares a level with.
struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 0.0;  // min of the endpoint densities == density(src)
  int shared_levels = 0;
};

/// One node per cell of the table. Every edge ascends the total order, so the
/// graph is acyclic.
struct CategoryGraph {
  Schema schema;
  Eigen::ArrayXd density;
  CountArray counts;
  /// Nodes from highest to lowest under the total order.
  std::vector<NodeId> order;
  /// rank[v] is the position of v in `order` (0 = highest).
  std::vector<std::int32_t> rank;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out_edges;
  std::vector<std::vector<std::size_t>> in_edges;

  std::size_t num_nodes() const { return static_cast<std::size_t>(density.size()); }
};

/// True when cell u ranks strictly above cell v: higher density, then higher
/// count, then lower cell index.
bool precedes(NodeId u, NodeId v, const Eigen::ArrayXd& density,
              const CountArray& counts);

/// All cells sorted by `precedes`, highest first.
std::vector<NodeId> total_order(const Eigen::ArrayXd& density, const CountArray& counts);

/// Links every pair of cells sharing at least one level, pointing at the
/// higher-ranked cell. A degenerate density yields no edges.
CategoryGraph build_graph(const DensityTable& density);

}  // namespace mcc
