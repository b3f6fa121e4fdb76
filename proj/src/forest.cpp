#include "mcc/forest.hpp"

#include "mcc/branching.hpp"
#include "mcc/error.hpp"
#include "mcc/rng.hpp"

#include <algorithm>
#include <array>

namespace mcc {

std::optional<SelectionRule> parse_selection_rule(const std::string& name) {
  if (name == "steepest") return SelectionRule::steepest_ascent;
  if (name == "shared-levels") return SelectionRule::shared_levels_first;
  return std::nullopt;
}

std::string to_string(SelectionRule rule) {
  return rule == SelectionRule::steepest_ascent ? "steepest" : "shared-levels";
}

ComponentLabels components(const CategoryGraph& graph, const std::vector<NodeId>& parent) {
  const std::size_t n = parent.size();
  if (n != graph.num_nodes()) throw InvariantError("components: size mismatch");

  for (std::size_t u = 0; u < n; ++u) {
    if (parent[u] == kNoParent) continue;
    const auto& out = graph.out_edges[u];
    const bool is_edge = std::any_of(out.begin(), out.end(), [&](std::size_t e) {
      return graph.edges[e].dst == parent[u];
    });
    if (!is_edge) throw InvariantError("components: parent is not an out-neighbour");
  }

  std::vector<NodeId> root_of(n, kNoParent);
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<NodeId> path;
    NodeId v = static_cast<NodeId>(start);
    while (root_of[v] == kNoParent && parent[v] != kNoParent) {
      path.push_back(v);
      if (path.size() > n) throw InvariantError("components: parent chain has a cycle");
      v = parent[v];
    }
    const NodeId root = root_of[v] == kNoParent ? v : root_of[v];
    root_of[v] = root;
    for (NodeId p : path) root_of[p] = root;
  }

  ComponentLabels out;
  for (NodeId v : graph.order)
    if (parent[v] == kNoParent) out.roots.push_back(v);
  std::vector<std::int32_t> label_of_root(n, -1);
  for (std::size_t k = 0; k < out.roots.size(); ++k)
    label_of_root[out.roots[k]] = static_cast<std::int32_t>(k);
  out.labels.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.labels[v] = label_of_root[root_of[v]];
  return out;
}

namespace {

SpanningForest assemble(const CategoryGraph& graph, std::vector<NodeId> parent) {
  auto labels = components(graph, parent);
  return SpanningForest{std::move(parent), std::move(labels.roots),
                        std::move(labels.labels)};
}

bool better(const CategoryGraph& g, const Edge& a, const Edge& b, SelectionRule rule) {
  if (rule == SelectionRule::steepest_ascent) {
    if (g.density[a.dst] != g.density[b.dst]) return g.density[a.dst] > g.density[b.dst];
    if (a.shared_levels != b.shared_levels) return a.shared_levels > b.shared_levels;
  } else {
    if (a.shared_levels != b.shared_levels) return a.shared_levels > b.shared_levels;
    if (g.density[a.dst] != g.density[b.dst]) return g.density[a.dst] > g.density[b.dst];
  }
  return g.rank[a.dst] < g.rank[b.dst];
}

bool tied_before_order(const CategoryGraph& g, const Edge& a, const Edge& b) {
  return g.density[a.dst] == g.density[b.dst] && a.shared_levels == b.shared_levels;
}

}  // namespace

SpanningForest maximal_spanning_forest(const CategoryGraph& graph,
                                       const ForestOptions& options) {
  const std::size_t n = graph.num_nodes();
  std::vector<NodeId> parent(n, kNoParent);
  std::mt19937_64 engine(options.seed);
  for (std::size_t u = 0; u < n; ++u) {
    const auto& out = graph.out_edges[u];
    if (out.empty()) continue;
    std::size_t pick = out.front();
    for (std::size_t e : out)
      if (better(graph, graph.edges[e], graph.edges[pick], options.rule)) pick = e;

    if (options.tie_break == TieBreak::seeded_random) {
      std::vector<std::size_t> tied;
      for (std::size_t e : out)
        if (tied_before_order(graph, graph.edges[e], graph.edges[pick])) tied.push_back(e);
      if (tied.size() > 1) pick = tied[rng::uniform_below(engine, tied.size())];
    }
    parent[u] = graph.edges[pick].dst;
  }
  return assemble(graph, std::move(parent));
}

namespace {

// Lexicographically ordered vector weight; an ordered abelian group under
// componentwise arithmetic.
struct LexWeight {
  std::array<std::int64_t, 4> v{};

  friend LexWeight operator+(LexWeight a, const LexWeight& b) {
    for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
    return a;
  }
  friend LexWeight operator-(LexWeight a, const LexWeight& b) {
    for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend bool operator<(const LexWeight& a, const LexWeight& b) { return a.v < b.v; }
};

// 1-based rank of each node's density among the distinct density values.
std::vector<std::int64_t> dense_density_rank(const CategoryGraph& g) {
  std::vector<double> values(g.density.data(), g.density.data() + g.density.size());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::int64_t> rank(g.num_nodes());
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    rank[v] = 1 + (std::lower_bound(values.begin(), values.end(), g.density[v]) -
                   values.begin());
  return rank;
}

}  // namespace

SpanningForest edmonds_oracle(const CategoryGraph& graph, const ForestOptions& options) {
  if (options.tie_break != TieBreak::deterministic)
    throw InputError("edmonds_oracle: only deterministic tie breaking is supported");
  const std::size_t n = graph.num_nodes();
  const auto drank = dense_density_rank(graph);
  const auto total = static_cast<std::int64_t>(n);

  std::vector<WeightedArc<LexWeight>> arcs;
  arcs.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) {
    LexWeight w;
    // Edge weight min(density(src), density(dst)) == density(src), by rank.
    w.v[0] = drank[e.src];
    const std::int64_t dest = drank[e.dst];
    const std::int64_t shared = e.shared_levels;
    if (options.rule == SelectionRule::steepest_ascent) {
      w.v[1] = dest;
      w.v[2] = shared;
    } else {
      w.v[1] = shared;
      w.v[2] = dest;
    }
    w.v[3] = total - graph.rank[e.dst];
    // Reversed: in-degree <= 1 there is out-degree <= 1 here.
    arcs.push_back({static_cast<std::size_t>(e.dst), static_cast<std::size_t>(e.src), w});
  }

  std::vector<NodeId> parent(n, kNoParent);
  for (std::size_t a : max_branching(n, arcs)) {
    const auto& arc = arcs[a];
    if (parent[arc.to] != kNoParent)
      throw InvariantError("edmonds_oracle: node with two retained edges");
    parent[arc.to] = static_cast<NodeId>(arc.from);
  }
  return assemble(graph, std::move(parent));
}

}  // namespace mcc
