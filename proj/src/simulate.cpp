#include "mcc/simulate.hpp"

#include "mcc/csv.hpp"
#include "mcc/error.hpp"
#include "mcc/eval.hpp"
#include "mcc/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <set>
#include <thread>

namespace mcc {

void validate(const SimConfig& c) {
  if (c.clusters < 1) throw InputError("simulate: clusters must be at least 1");
  if (c.variables < 2) throw InputError("simulate: at least two variables are required");
  if (c.levels < 2) throw InputError("simulate: each variable needs at least two levels");
  if (c.per_cluster < 1) throw InputError("simulate: per-cluster size must be at least 1");
  if (!(c.theta >= 0.5 && c.theta <= 1.0))
    throw InputError("simulate: theta must lie in [0.5, 1]");
  const double tuples = std::pow(static_cast<double>(c.levels), c.variables);
  if (static_cast<double>(c.clusters) > tuples)
    throw InputError("simulate: more clusters than distinct preferred level tuples");
}

std::vector<CellTuple> preferred_tuples(int clusters, int variables, int levels) {
  std::vector<CellTuple> out;
  std::set<CellTuple> used;
  for (int k = 0; k < std::min(clusters, levels); ++k) {
    CellTuple t(static_cast<std::size_t>(variables), k % levels);
    used.insert(t);
    out.push_back(std::move(t));
  }
  CellTuple t(static_cast<std::size_t>(variables), 0);
  while (static_cast<int>(out.size()) < clusters) {
    if (!used.count(t)) {
      used.insert(t);
      out.push_back(t);
    }
    // Odometer increment, last variable fastest.
    std::size_t v = t.size();
    while (v-- > 0) {
      if (++t[v] < levels) break;
      t[v] = 0;
      if (v == 0) throw InputError("simulate: more clusters than distinct preferred level tuples");
    }
  }
  return out;
}

namespace {

Schema simulated_schema(int variables, int levels) {
  const int width = static_cast<int>(std::to_string(levels).size());
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels;
  for (int v = 0; v < variables; ++v) {
    names.push_back(fmt::format("X{}", v + 1));
    std::vector<std::string> lv;
    for (int l = 0; l < levels; ++l) lv.push_back(fmt::format("L{:0{}}", l + 1, width));
    labels.push_back(std::move(lv));
  }
  return Schema(std::move(names), std::move(labels));
}

}  // namespace

SimulatedData generate(const SimConfig& config) {
  validate(config);
  const auto tuples = preferred_tuples(config.clusters, config.variables, config.levels);
  const auto rows = static_cast<Eigen::Index>(config.clusters) * config.per_cluster;

  SimulatedData data{
      ObservationSet{simulated_schema(config.variables, config.levels),
                     LevelMatrix(rows, config.variables), {}},
      {}};
  data.truth.reserve(static_cast<std::size_t>(rows));
  data.observations.source_rows.resize(static_cast<std::size_t>(rows));

  std::mt19937_64 engine(config.seed);
  Eigen::Index r = 0;
  for (int k = 0; k < config.clusters; ++k) {
    for (int i = 0; i < config.per_cluster; ++i, ++r) {
      for (int v = 0; v < config.variables; ++v) {
        const std::int32_t preferred = tuples[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
        std::int32_t level = preferred;
        if (rng::uniform01(engine) >= config.theta) {
          // One of the other levels, uniformly.
          level = static_cast<std::int32_t>(
              rng::uniform_below(engine, static_cast<std::uint64_t>(config.levels - 1)));
          if (level >= preferred) ++level;
        }
        data.observations.rows(r, v) = level;
      }
      data.truth.push_back(k);
      data.observations.source_rows[static_cast<std::size_t>(r)] = static_cast<std::size_t>(r);
    }
  }
  return data;
}

void write_simulated_csv(std::ostream& out, const SimulatedData& data) {
  const Schema& schema = data.observations.schema;
  csv::Record header = schema.variables();
  header.push_back("cluster");
  csv::write_record(out, header);
  for (std::size_t i = 0; i < data.observations.size(); ++i) {
    csv::Record rec;
    for (std::size_t v = 0; v < schema.num_variables(); ++v)
      rec.push_back(schema.levels(v)[static_cast<std::size_t>(
          data.observations.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)))]);
    rec.push_back(std::to_string(data.truth[i]));
    csv::write_record(out, rec);
  }
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<FmSummary> run_benchmark(const BenchmarkGrid& grid, std::size_t replicates,
                                     std::uint64_t seed, const ClusterConfig& config,
                                     unsigned threads) {
  if (replicates == 0) throw InputError("benchmark: replicates must be at least 1");
  struct Job {
    double theta;
    int per_cluster;
  };
  std::vector<Job> jobs;
  for (double theta : grid.thetas)
    for (int n : grid.per_cluster) jobs.push_back({theta, n});

  std::vector<std::vector<double>> scores(jobs.size(), std::vector<double>(replicates));
  const std::size_t total = jobs.size() * replicates;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      const std::size_t j = t / replicates;
      const std::size_t rep = t % replicates;
      SimConfig sim;
      sim.clusters = grid.clusters;
      sim.variables = grid.variables;
      sim.levels = grid.levels;
      sim.theta = jobs[j].theta;
      sim.per_cluster = jobs[j].per_cluster;
      sim.seed = rng::derive_seed(seed, j, rep);
      const auto data = generate(sim);
      const auto result = cluster(data.observations, config);
      scores[j][rep] = fowlkes_mallows(result.labels, data.truth);
    }
  };

  const unsigned workers = std::max(1u, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<FmSummary> out;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    auto s = scores[j];
    std::sort(s.begin(), s.end());
    FmSummary summary;
    summary.theta = jobs[j].theta;
    summary.per_cluster = jobs[j].per_cluster;
    summary.replicates = replicates;
    summary.min = s.front();
    summary.q1 = quantile_sorted(s, 0.25);
    summary.median = quantile_sorted(s, 0.5);
    summary.q3 = quantile_sorted(s, 0.75);
    summary.max = s.back();
    double sum = 0.0;
    for (double x : s) sum += x;
    summary.mean = sum / static_cast<double>(s.size());
    out.push_back(summary);
  }
  return out;
}

}  // namespace mcc
