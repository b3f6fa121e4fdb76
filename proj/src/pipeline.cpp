#include "mcc/pipeline.hpp"

#include "mcc/error.hpp"

#include <fmt/format.h>

namespace mcc {

ClusteringResult cluster(const ContingencyTable& table, const ClusterConfig& config) {
  auto density = estimate_density(table);
  auto graph = build_graph(density);
  auto forest = maximal_spanning_forest(graph, config.forest);
  auto tree = build_cluster_tree(forest, density);

  ClusteringResult r{table, std::move(density), std::move(graph), std::move(forest),
                     std::move(tree), {}, {}, {}, {}, {}, {}, false};
  r.num_clusters = r.forest.num_components();
  r.cell_labels = r.forest.component;
  for (NodeId root : r.forest.roots)
    r.modes.push_back({root, r.density.normalized[root], table.count(root)});
  r.mutual_information = r.density.mutual_information;
  r.deviance = deviance(table);
  r.degenerate = r.density.degenerate;

  if (r.tree.leaves().size() != r.num_clusters)
    throw InvariantError("cluster: tree leaves and forest roots disagree");
  return r;
}

ClusteringResult cluster(const ObservationSet& observations, const ClusterConfig& config) {
  auto result = cluster(tabulate(observations), config);
  result.labels.resize(observations.size());
  for (std::size_t i = 0; i < observations.size(); ++i)
    result.labels[i] = result.cell_labels[observations.cell_of(i)];
  return result;
}

std::optional<std::string> warn_if_unclusterable(const ClusteringResult& result,
                                                 double factor) {
  if (result.degenerate)
    return std::string(
        "low clusterability evidence: densities are constant (independent variables)");
  const double bound = static_cast<double>(result.deviance.df) * factor;
  if (result.deviance.statistic <= bound)
    return fmt::format(
        "low clusterability evidence: null-model deviance {:.6f} <= {} x {} df",
        result.deviance.statistic, factor, result.deviance.df);
  return std::nullopt;
}

}  // namespace mcc
