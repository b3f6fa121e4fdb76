// One line per acceptance criterion; exit status 1 when any fails.
#include "mcc/density.hpp"
#include "mcc/eval.hpp"
#include "mcc/forest.hpp"
#include "mcc/pipeline.hpp"
#include "mcc/simulate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

using namespace mcc;

namespace {

const std::string kData = MCC_DATA_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("[{}] {}. {}: {}\n", pass ? "PASS" : "FAIL", id, name, detail);
}

NodeId cell_named(const Schema& s, const std::vector<std::string>& labels) {
  CellTuple t;
  for (std::size_t v = 0; v < labels.size(); ++v) t.push_back(*s.level_index(v, labels[v]));
  return s.cell_index(t);
}

Schema grid_schema(const std::vector<int>& shape) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> levels;
  for (std::size_t v = 0; v < shape.size(); ++v) {
    names.push_back(fmt::format("V{}", v));
    std::vector<std::string> lv;
    for (int l = 0; l < shape[v]; ++l) lv.push_back(fmt::format("l{}", l));
    levels.push_back(lv);
  }
  return Schema(names, levels);
}

// 2x2 up to 6x6x4, with a mix of sparse, tie-heavy and dense counts.
std::vector<ContingencyTable> random_tables(std::size_t how_many, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<ContingencyTable> out;
  while (out.size() < how_many) {
    std::vector<int> shape{2 + static_cast<int>(engine() % 5), 2 + static_cast<int>(engine() % 5)};
    if (engine() % 2) shape.push_back(2 + static_cast<int>(engine() % 3));
    const Schema s = grid_schema(shape);
    const std::uint64_t top = std::array<std::uint64_t, 4>{2, 5, 30, 500}[engine() % 4];
    CountArray counts(static_cast<Eigen::Index>(s.num_cells()));
    for (Eigen::Index c = 0; c < counts.size(); ++c) counts[c] = static_cast<Count>(engine() % top);
    if (counts.sum() == 0) counts[0] = 1;
    out.emplace_back(s, counts);
  }
  return out;
}

void table1_densities() {
  const auto table = read_counts_file(kData + "/table1_counts.csv");
  const Schema& s = table.schema();
  const std::vector<std::string> areas{"Europe", "America", "Africa", "Asia-Pacific"};
  const std::vector<std::string> religions{"Christianity", "Islam", "Eastern Religions"};
  const double printed[4][3] = {
      {0.780, 0.000, 0.069}, {1.000, 0.024, 0.037}, {0.061, 0.065, 0.012}, {0.007, 0.866, 0.766}};

  const auto start = Clock::now();
  const auto dens = estimate_density(table);
  const double elapsed = seconds_since(start);

  double worst = 0.0;
  int off = 0;
  std::string misses;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t r = 0; r < 3; ++r) {
      const double got = dens.normalized[cell_named(s, {areas[a], religions[r]})];
      const double diff = std::abs(got - printed[a][r]);
      worst = std::max(worst, diff);
      if (diff > 0.001) {
        ++off;
        misses += fmt::format(" ({}, {}) {:.3f} vs {:.3f};", areas[a], religions[r], got, printed[a][r]);
      }
    }
  report(1, "Table 1 density fixture", off == 0 && elapsed < 1e-3,
         fmt::format("{}/12 cells outside 0.001, max deviation {:.3f}, {:.1f} us.{}", off, worst, elapsed * 1e6,
                     misses));
}

void worked_example() {
  const auto r = cluster(read_counts_file(kData + "/table1_counts.csv"));
  const Schema& s = r.table.schema();
  const bool modes = r.modes.size() == 2 && r.modes[0].cell == cell_named(s, {"America", "Christianity"}) &&
                     r.modes[1].cell == cell_named(s, {"Asia-Pacific", "Islam"});
  const auto leaves = r.tree.leaves().size();
  report(2, "worked-example clustering", r.num_clusters == 2 && modes && leaves == 2,
         fmt::format("K={}, modes {}, tree leaves {}", r.num_clusters, modes ? "as expected" : "differ", leaves));
}

void deviance_regression() {
  const auto t = deviance(read_counts_file(kData + "/titanic_counts.csv"));
  const auto b = deviance(read_counts_file(kData + "/berkeley_counts.csv"));
  const bool pass = std::abs(t.statistic - 1018.32) <= 0.01 && t.df == 10 &&
                    std::abs(b.statistic - 2097.67) <= 0.01 && b.df == 16;
  report(3, "deviance regression", pass,
         fmt::format("Titanic {:.4f} df {}, Berkeley {:.4f} df {}", t.statistic, t.df, b.statistic, b.df));
}

std::string describe(const Schema& s, const std::set<NodeId>& cells) {
  std::string out;
  for (NodeId c : cells) {
    std::string label;
    for (const auto& part : s.cell_labels(c)) label += (label.empty() ? "" : "/") + part;
    out += (out.empty() ? "" : ", ") + label;
  }
  return "{" + out + "}";
}

void case_studies() {
  const auto titanic = cluster(read_observations_file(kData + "/titanic.csv"));
  const Schema& ts = titanic.table.schema();
  std::set<NodeId> wanted;
  for (const std::string cls : {"2nd", "3rd", "Crew"})
    for (const std::string survived : {"No", "Yes"}) wanted.insert(cell_named(ts, {cls, "Male", survived}));

  bool titanic_ok = false;
  std::string clusters;
  for (std::int32_t k = 0; k < static_cast<std::int32_t>(titanic.num_clusters); ++k) {
    std::set<NodeId> observed;
    for (std::size_t c = 0; c < titanic.cell_labels.size(); ++c)
      if (titanic.cell_labels[c] == k && titanic.table.count(static_cast<NodeId>(c)) > 0)
        observed.insert(static_cast<NodeId>(c));
    titanic_ok |= observed == wanted;
    if (observed.size() < 8) clusters += " " + describe(ts, observed);
  }
  titanic_ok &= titanic.num_clusters == 2;

  const auto berkeley = cluster(read_observations_file(kData + "/berkeley.csv"));
  const Schema& bs = berkeley.table.schema();
  std::set<std::int32_t> ks;
  for (const std::string dept : {"C", "D", "E", "F"})
    ks.insert(berkeley.cell_labels[static_cast<std::size_t>(cell_named(bs, {"Rejected", "Female", dept}))]);
  const bool berkeley_ok = ks.size() == 1;

  report(4, "case-study partitions", titanic_ok && berkeley_ok,
         fmt::format("Titanic K={} {} (smaller cluster:{}); Berkeley female-rejected C-F {}",
                     titanic.num_clusters, titanic_ok ? "matches" : "differs from {2nd,3rd,Crew}xMalex{No,Yes}",
                     clusters, berkeley_ok ? "share one cluster" : "are split"));
}

void oracle_and_identity(const std::vector<ContingencyTable>& tables) {
  const auto start = Clock::now();
  int mismatches = 0;
  double worst_rel = 0.0;
  for (const auto& table : tables) {
    const auto dens = estimate_density(table);
    const double mi = multi_information(table);
    const double sum = dens.raw.sum();
    const double scale = std::max(std::abs(mi), std::abs(sum));
    if (scale > 0.0) worst_rel = std::max(worst_rel, std::abs(sum - mi) / scale);

    const auto g = build_graph(dens);
    for (auto rule : {SelectionRule::steepest_ascent, SelectionRule::shared_levels_first}) {
      ForestOptions options;
      options.rule = rule;
      const auto greedy = maximal_spanning_forest(g, options);
      const auto oracle = edmonds_oracle(g, options);
      if (greedy.parent != oracle.parent || greedy.roots != oracle.roots) ++mismatches;
    }
  }
  const double elapsed = seconds_since(start);
  report(5, "forest oracle equivalence", mismatches == 0 && elapsed < 30.0,
         fmt::format("{} tables x 2 selection rules, {} mismatches, {:.2f} s", tables.size(), mismatches, elapsed));
  report(6, "multi-information identity", worst_rel <= 1e-9,
         fmt::format("max relative error {:.2e} over {} tables", worst_rel, tables.size()));
}

void metric_oracles() {
  std::mt19937_64 engine(700);
  int bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + engine() % 29;
    const auto ka = 1 + engine() % 6, kb = 1 + engine() % 6;
    std::vector<std::int32_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<std::int32_t>(engine() % ka);
      b[i] = static_cast<std::int32_t>(engine() % kb);
    }
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool sa = a[i] == a[j], sb = b[i] == b[j];
        tp += sa && sb;
        fp += sa && !sb;
        fn += !sa && sb;
        tn += !sa && !sb;
      }
    const auto p = pair_confusion(a, b);
    if (p.tp != tp || p.fp != fp || p.fn != fn || p.tn != tn) ++bad;

    const double fm_den = std::sqrt(static_cast<double>(tp + fp) * static_cast<double>(tp + fn));
    const double fm = fm_den == 0.0 ? 0.0 : static_cast<double>(tp) / fm_den;
    const double pairs = static_cast<double>(tp + fp + fn + tn);
    const double expected = static_cast<double>(tp + fp) * static_cast<double>(tp + fn) / pairs;
    const double max_index = 0.5 * static_cast<double>(2 * tp + fp + fn);
    const double ari = max_index == expected ? 1.0 : (static_cast<double>(tp) - expected) / (max_index - expected);
    worst = std::max({worst, std::abs(fowlkes_mallows(a, b) - fm), std::abs(adjusted_rand(a, b) - ari)});
  }
  report(7, "metric oracles", bad == 0 && worst <= 1e-12,
         fmt::format("200 labelings, {} pair-count mismatches, max metric error {:.1e}", bad, worst));
}

// Medians from the first run with seed 20240607; the generator is portable,
// so any change here means the pipeline or generator changed.
constexpr double kBaseline[5][2] = {
    {0.55552016545450233, 0.56850633280109397},
    {0.61083751201821745, 0.61464713019533757},
    {0.70327373006101923, 0.69998763744562709},
    {0.83672552448191062, 0.8289679165875331},
    {0.92256655264746434, 0.91064293129156992},
};

void simulation_trend() {
  const auto start = Clock::now();
  BenchmarkGrid grid;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  const auto summaries = run_benchmark(grid, 500, 20240607, {}, threads);

  auto median = [&](std::size_t t, std::size_t n) { return summaries[t * grid.per_cluster.size() + n].median; };
  bool pass = true;
  std::string detail = "medians";
  for (std::size_t n = 0; n < grid.per_cluster.size(); ++n) {
    int inversions = 0;
    detail += fmt::format(" n={}:", grid.per_cluster[n]);
    for (std::size_t t = 0; t < grid.thetas.size(); ++t) {
      detail += fmt::format(" {:.4f}", median(t, n));
      if (t > 0 && median(t, n) < median(t - 1, n)) {
        ++inversions;
        pass &= median(t - 1, n) - median(t, n) <= 0.02;
      }
    }
    pass &= inversions <= 1;
  }
  std::string larger;
  for (std::size_t t = 0; t < grid.thetas.size(); ++t)
    if (!(median(t, 1) > median(t, 0))) {
      pass = false;
      larger += fmt::format(" theta={} n=500 not above n=100;", grid.thetas[t]);
    }

  BenchmarkGrid sanity;
  sanity.thetas = {1.0};
  const auto perfect = run_benchmark(sanity, 50, 1, {}, threads);
  bool all_one = true;
  for (const auto& s : perfect) all_one &= s.min == 1.0;
  pass &= all_one;

  double drift = 0.0;
  for (std::size_t t = 0; t < 5; ++t)
    for (std::size_t n = 0; n < 2; ++n) drift = std::max(drift, std::abs(median(t, n) - kBaseline[t][n]));
  pass &= drift <= 1e-9;

  const double elapsed = seconds_since(start);
  pass &= elapsed < 120.0;
  report(8, "simulation trend", pass,
         fmt::format("{};{} theta=1 FM {}, baseline drift {:.1e}, {:.1f} s", detail, larger,
                     all_one ? "= 1" : "< 1", drift, elapsed));
}

void degenerate_input() {
  const Schema s = grid_schema({3, 2, 2});
  const std::vector<Count> a{1, 2, 3}, b{2, 5}, c{1, 4};
  CountArray counts(12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) counts[static_cast<Eigen::Index>(i * 4 + j * 2 + k)] = a[i] * b[j] * c[k];
  bool pass = true;
  std::string detail;
  try {
    for (const auto& table : {ContingencyTable(s, counts), read_counts_file(kData + "/independent_counts.csv")}) {
      const auto r = cluster(table);
      const auto warning = warn_if_unclusterable(r);
      pass &= r.mutual_information == 0.0 && r.deviance.statistic == 0.0 && r.degenerate && warning.has_value() &&
              r.num_clusters == table.num_cells();
      detail += fmt::format("{} cells: MI {}, G2 {}, degenerate {}, warning {}, K={}; ", table.num_cells(),
                            r.mutual_information, r.deviance.statistic, r.degenerate, warning.has_value(),
                            r.num_clusters);
    }
  } catch (const std::exception& e) {
    pass = false;
    detail += std::string("threw: ") + e.what();
  }
  report(9, "degenerate-input behavior", pass, detail);
}

}  // namespace

int main() {
  table1_densities();
  worked_example();
  deviance_regression();
  case_studies();
  oracle_and_identity(random_tables(1000, 1234));
  metric_oracles();
  simulation_trend();
  degenerate_input();
  fmt::print("{} of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
