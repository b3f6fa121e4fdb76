#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace mcc {

template <typename Weight>
struct WeightedArc {
  std::size_t from = 0;
  std::size_t to = 0;
  Weight weight{};
};

/// Maximum-weight branching (Chu-Liu/Edmonds): a set of arcs with at most one
/// arc entering each node and no directed cycle, maximizing the total weight.
///
/// `Weight` must form an ordered abelian group (+, -, <, value-initialized
/// zero). Arcs whose weight is not strictly positive are never selected, and
/// self-loops are ignored. Among equal-weight candidates entering a node the
/// lowest arc index wins. Returns indices into `arcs`, sorted.
template <typename Weight>
std::vector<std::size_t> max_branching(std::size_t num_nodes,
                                       const std::vector<WeightedArc<Weight>>& arcs) {
  const Weight zero{};
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Best positive arc entering each node.
  std::vector<std::size_t> best(num_nodes, kNone);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto& arc = arcs[a];
    if (arc.from == arc.to || !(zero < arc.weight)) continue;
    if (best[arc.to] == kNone || arcs[best[arc.to]].weight < arc.weight) best[arc.to] = a;
  }

  // Cycles of the functional graph node -> source of its best arc.
  std::vector<std::size_t> cycle_of(num_nodes, kNone);
  std::vector<std::vector<std::size_t>> cycles;
  {
    std::vector<std::size_t> visit(num_nodes, kNone);
    for (std::size_t start = 0; start < num_nodes; ++start) {
      std::size_t v = start;
      while (v != kNone && visit[v] == kNone) {
        visit[v] = start;
        v = best[v] == kNone ? kNone : arcs[best[v]].from;
      }
      if (v == kNone || visit[v] != start || cycle_of[v] != kNone) continue;
      std::vector<std::size_t> cycle;
      std::size_t u = v;
      do {
        cycle_of[u] = cycles.size();
        cycle.push_back(u);
        u = arcs[best[u]].from;
      } while (u != v);
      cycles.push_back(std::move(cycle));
    }
  }

  if (cycles.empty()) {
    std::vector<std::size_t> chosen;
    for (std::size_t v = 0; v < num_nodes; ++v)
      if (best[v] != kNone) chosen.push_back(best[v]);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  // Contract every cycle to a single node.
  std::vector<std::size_t> image(num_nodes);
  std::size_t next = 0;
  for (std::size_t v = 0; v < num_nodes; ++v)
    if (cycle_of[v] == kNone) image[v] = next++;
  std::vector<std::size_t> cycle_node(cycles.size());
  std::vector<std::size_t> cycle_min(cycles.size());  // lightest arc in the cycle
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    cycle_node[c] = next++;
    cycle_min[c] = best[cycles[c].front()];
    for (std::size_t v : cycles[c]) {
      image[v] = cycle_node[c];
      if (arcs[best[v]].weight < arcs[cycle_min[c]].weight) cycle_min[c] = best[v];
    }
  }

  std::vector<WeightedArc<Weight>> contracted;
  std::vector<std::size_t> origin;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto& arc = arcs[a];
    const std::size_t from = image[arc.from];
    const std::size_t to = image[arc.to];
    if (from == to) continue;
    Weight w = arc.weight;
    if (const std::size_t c = cycle_of[arc.to]; c != kNone)
      w = w - arcs[best[arc.to]].weight + arcs[cycle_min[c]].weight;
    contracted.push_back({from, to, w});
    origin.push_back(a);
  }

  const auto sub = max_branching(next, contracted);

  std::vector<std::size_t> chosen;
  std::vector<std::optional<std::size_t>> entry(cycles.size());
  for (std::size_t s : sub) {
    const std::size_t a = origin[s];
    chosen.push_back(a);
    if (const std::size_t c = cycle_of[arcs[a].to]; c != kNone) entry[c] = arcs[a].to;
  }
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const std::size_t dropped = entry[c] ? best[*entry[c]] : cycle_min[c];
    for (std::size_t v : cycles[c])
      if (best[v] != dropped) chosen.push_back(best[v]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace mcc
