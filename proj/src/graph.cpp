#include "mcc/graph.hpp"

#include <algorithm>
#include <numeric>

namespace mcc {

bool precedes(NodeId u, NodeId v, const Eigen::ArrayXd& density,
              const CountArray& counts) {
  if (density[u] != density[v]) return density[u] > density[v];
  if (counts[u] != counts[v]) return counts[u] > counts[v];
  return u < v;
}

std::vector<NodeId> total_order(const Eigen::ArrayXd& density, const CountArray& counts) {
  std::vector<NodeId> order(static_cast<std::size_t>(density.size()));
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return precedes(a, b, density, counts);
  });
  return order;
}

CategoryGraph build_graph(const DensityTable& dens) {
  CategoryGraph g;
  g.schema = dens.schema;
  g.density = dens.normalized;
  g.counts = dens.counts;
  g.order = total_order(g.density, g.counts);
  const std::size_t n = g.num_nodes();
  g.rank.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) g.rank[g.order[k]] = static_cast<std::int32_t>(k);
  g.out_edges.assign(n, {});
  g.in_edges.assign(n, {});
  if (dens.degenerate) return g;

  for (NodeId a = 0; a < static_cast<NodeId>(n); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(n); ++b) {
      const int shared = g.schema.shared_levels(a, b);
      if (shared == 0) continue;
      const bool a_lower = g.rank[a] > g.rank[b];
      Edge e;
      e.src = a_lower ? a : b;
      e.dst = a_lower ? b : a;
      e.weight = std::min(g.density[a], g.density[b]);
      e.shared_levels = shared;
      g.out_edges[e.src].push_back(g.edges.size());
      g.in_edges[e.dst].push_back(g.edges.size());
      g.edges.push_back(e);
    }
  }
  return g;
}

}  // namespace mcc
