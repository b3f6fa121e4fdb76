#pragma once

#include "mcc/pipeline.hpp"
#include "mcc/table.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mcc {

/// Clustered categorical data where each variable takes its cluster's
/// preferred level with probability theta and any other level uniformly
/// otherwise. theta = 1/L (0.5 for binary variables) makes the variables
/// independent of the cluster; theta = 1 makes them deterministic.
struct SimConfig {
  int clusters = 2;
  int variables = 2;
  int levels = 2;  // per variable
  double theta = 0.9;
  int per_cluster = 100;
  std::uint64_t seed = 0;
};

struct SimulatedData {
  ObservationSet observations;
  std::vector<std::int32_t> truth;
};

/// Throws InputError on an invalid config or when `clusters` exceeds the
/// number of distinct level tuples.
void validate(const SimConfig& config);

/// Preferred level tuple of each cluster: the diagonal k mod L while it is
/// distinct, then unused tuples in lexicographic order.
std::vector<CellTuple> preferred_tuples(int clusters, int variables, int levels);

SimulatedData generate(const SimConfig& config);

/// Observation CSV with an extra `cluster` truth column.
void write_simulated_csv(std::ostream& out, const SimulatedData& data);

struct BenchmarkGrid {
  std::vector<double> thetas{0.6, 0.7, 0.8, 0.9, 0.95};
  std::vector<int> per_cluster{100, 500};
  int clusters = 2;
  int variables = 2;
  int levels = 2;
};

struct FmSummary {
  double theta = 0.0;
  int per_cluster = 0;
  std::size_t replicates = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

/// For each (theta, per_cluster) cell, `replicates` rounds of generate ->
/// cluster -> Fowlkes-Mallows against the truth. Each replicate draws from
/// its own derived seed, so results do not depend on `threads`.
std::vector<FmSummary> run_benchmark(const BenchmarkGrid& grid, std::size_t replicates,
                                     std::uint64_t seed, const ClusterConfig& config = {},
                                     unsigned threads = 1);

}  // namespace mcc
