#include "mcc/cluster_tree.hpp"

#include "mcc/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mcc {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::vector<std::vector<NodeId>> forest_neighbours(const SpanningForest& forest) {
  std::vector<std::vector<NodeId>> adj(forest.num_nodes());
  for (std::size_t u = 0; u < forest.num_nodes(); ++u) {
    const NodeId p = forest.parent[u];
    if (p == kNoParent) continue;
    adj[u].push_back(p);
    adj[p].push_back(static_cast<NodeId>(u));
  }
  return adj;
}

}  // namespace

std::vector<std::int32_t> ClusterTree::leaves() const {
  std::vector<std::int32_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].children.empty()) out.push_back(static_cast<std::int32_t>(i));
  return out;
}

std::vector<std::int32_t> ClusterTree::top_level() const {
  std::vector<std::int32_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent < 0) out.push_back(static_cast<std::int32_t>(i));
  return out;
}

ClusterTree build_cluster_tree(const SpanningForest& forest, const DensityTable& dens) {
  const Eigen::ArrayXd& density = dens.normalized;
  const std::size_t n = forest.num_nodes();
  if (static_cast<std::size_t>(density.size()) != n)
    throw InvariantError("build_cluster_tree: forest and density sizes differ");

  ClusterTree tree;
  std::vector<NodeId> by_density(n);
  std::iota(by_density.begin(), by_density.end(), NodeId{0});
  std::stable_sort(by_density.begin(), by_density.end(),
                   [&](NodeId a, NodeId b) { return density[a] > density[b]; });

  const auto adj = forest_neighbours(forest);
  DisjointSets sets(n);
  std::vector<bool> active(n, false);
  std::vector<std::int32_t> node_of_root(n, -1);

  for (std::size_t begin = 0; begin < n;) {
    const double level = density[by_density[begin]];
    std::size_t end = begin;
    while (end < n && density[by_density[end]] == level) ++end;
    tree.thresholds.push_back(level);
    const std::vector<NodeId> fresh(by_density.begin() + static_cast<std::ptrdiff_t>(begin),
                                    by_density.begin() + static_cast<std::ptrdiff_t>(end));

    // Tree nodes already alive next to each fresh cell, read before any union
    // at this level.
    std::vector<std::pair<NodeId, std::int32_t>> contacts;
    for (NodeId u : fresh)
      for (NodeId w : adj[u])
        if (active[w]) contacts.emplace_back(u, node_of_root[sets.find(w)]);

    for (NodeId u : fresh) active[u] = true;
    for (NodeId u : fresh)
      for (NodeId w : adj[u])
        if (active[w]) sets.unite(u, w);

    std::map<std::size_t, std::vector<std::int32_t>> old_nodes;
    std::map<std::size_t, std::vector<NodeId>> new_members;
    for (NodeId u : fresh) {
      old_nodes[sets.find(u)];
      new_members[sets.find(u)].push_back(u);
    }
    for (const auto& [u, node] : contacts) old_nodes[sets.find(u)].push_back(node);

    for (auto& [root, olds] : old_nodes) {
      std::sort(olds.begin(), olds.end());
      olds.erase(std::unique(olds.begin(), olds.end()), olds.end());
      const auto& members = new_members[root];
      std::int32_t node = -1;
      if (olds.size() == 1) {
        node = olds.front();
        auto& cells = tree.nodes[node].cells;
        cells.insert(cells.end(), members.begin(), members.end());
      } else {
        node = static_cast<std::int32_t>(tree.nodes.size());
        ClusterTreeNode created;
        created.threshold = level;
        created.cells = members;
        for (std::int32_t child : olds) {
          tree.nodes[child].parent = node;
          created.children.push_back(child);
          const auto& cc = tree.nodes[child].cells;
          created.cells.insert(created.cells.end(), cc.begin(), cc.end());
        }
        if (olds.empty()) {
          auto top = std::find_if(members.begin(), members.end(),
                                  [&](NodeId m) { return forest.parent[m] == kNoParent; });
          if (top == members.end())
            throw InvariantError("build_cluster_tree: new level-set component without a mode");
          created.mode = *top;
        }
        tree.nodes.push_back(std::move(created));
      }
      node_of_root[root] = node;
    }
    begin = end;
  }

  for (auto& node : tree.nodes) std::sort(node.cells.begin(), node.cells.end());
  return tree;
}

std::vector<std::int32_t> level_set_components(const SpanningForest& forest,
                                               const Eigen::ArrayXd& density,
                                               double threshold) {
  const std::size_t n = forest.num_nodes();
  DisjointSets sets(n);
  for (std::size_t u = 0; u < n; ++u) {
    const NodeId p = forest.parent[u];
    if (p != kNoParent && density[static_cast<Eigen::Index>(u)] >= threshold &&
        density[p] >= threshold)
      sets.unite(u, static_cast<std::size_t>(p));
  }
  std::vector<std::int32_t> labels(n, -1);
  std::map<std::size_t, std::int32_t> label_of_root;
  for (std::size_t u = 0; u < n; ++u) {
    if (density[static_cast<Eigen::Index>(u)] < threshold) continue;
    auto [it, inserted] =
        label_of_root.try_emplace(sets.find(u), static_cast<std::int32_t>(label_of_root.size()));
    labels[u] = it->second;
  }
  return labels;
}

}  // namespace mcc
