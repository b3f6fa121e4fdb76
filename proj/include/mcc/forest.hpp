#pragma once

#include "mcc/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcc {

/// Which key decides first among a node's outgoing edges. All outgoing edges
/// of a node carry the same weight (the node's own density), so this choice
/// determines the forest.
enum class SelectionRule {
  /// densest destination, then most shared levels, then total order
  steepest_ascent,
  /// most shared levels, then densest destination, then total order
  shared_levels_first,
};

enum class TieBreak {
  deterministic,
  /// Uniform choice among candidates equal on density and shared levels.
  seeded_random,
};

struct ForestOptions {
  SelectionRule rule = SelectionRule::steepest_ascent;
  TieBreak tie_break = TieBreak::deterministic;
  std::uint64_t seed = 0;
};

std::optional<SelectionRule> parse_selection_rule(const std::string& name);
std::string to_string(SelectionRule rule);

inline constexpr NodeId kNoParent = -1;

/// Each node keeps at most one outgoing edge; roots (modes) keep none.
struct SpanningForest {
  std::vector<NodeId> parent;
  /// Modes, highest-ranked first; cluster k is led by roots[k].
  std::vector<NodeId> roots;
  std::vector<std::int32_t> component;

  std::size_t num_nodes() const { return parent.size(); }
  std::size_t num_components() const { return roots.size(); }
};

struct ComponentLabels {
  std::vector<NodeId> roots;
  std::vector<std::int32_t> labels;
};

/// Labels every node with the root reached by following parents. Roots are
/// numbered by their rank in `graph`. Throws InvariantError on a cycle or a
/// parent that is not an out-neighbour.
ComponentLabels components(const CategoryGraph& graph, const std::vector<NodeId>& parent);

/// Per-node greedy selection of the best outgoing edge.
SpanningForest maximal_spanning_forest(const CategoryGraph& graph,
                                       const ForestOptions& options = {});

/// Full Chu-Liu/Edmonds maximum branching on the reversed graph with the tie
/// cascade encoded lexicographically in the arc weights. Deterministic tie
/// breaking only.
SpanningForest edmonds_oracle(const CategoryGraph& graph,
                              const ForestOptions& options = {});

}  // namespace mcc
