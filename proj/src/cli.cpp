#include "mcc/cli.hpp"

#include "mcc/csv.hpp"
#include "mcc/density.hpp"
#include "mcc/error.hpp"
#include "mcc/eval.hpp"
#include "mcc/export.hpp"
#include "mcc/pipeline.hpp"
#include "mcc/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace mcc {

namespace {

using json = nlohmann::ordered_json;

struct InputArgs {
  std::string obs_path;
  std::string counts_path;
  std::string missing = "reject";
  std::vector<std::string> ignore_columns;
};

struct ClusterArgs {
  std::string rule = "steepest";
  std::string tie = "deterministic";
  std::optional<std::uint64_t> seed;
  double warn_factor = 2.0;
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  auto* obs = cmd->add_option("--obs", in.obs_path, "Observation CSV (one row per subject)");
  auto* counts = cmd->add_option("--counts", in.counts_path,
                                 "Counts CSV (variable columns plus a trailing 'count')");
  obs->excludes(counts);
  cmd->add_option("--missing", in.missing, "Missing values: reject | drop-row | as-level")
      ->check(CLI::IsMember({"reject", "drop-row", "as-level"}));
  cmd->add_option("--ignore-column", in.ignore_columns,
                  "Observation column to leave out (repeatable)");
}

void add_cluster_options(CLI::App* cmd, ClusterArgs& c) {
  cmd->add_option("--rule", c.rule, "Outgoing-edge selection: steepest | shared-levels")
      ->check(CLI::IsMember({"steepest", "shared-levels"}));
  cmd->add_option("--tie", c.tie, "Tie breaking: deterministic | random")
      ->check(CLI::IsMember({"deterministic", "random"}));
  cmd->add_option("--seed", c.seed, "Seed for --tie random");
  cmd->add_option("--warn-factor", c.warn_factor,
                  "Warn when deviance <= df * factor (inf: always warn)");
}

struct LoadedInput {
  std::optional<ObservationSet> observations;
  std::optional<ContingencyTable> table;

  const ContingencyTable& contingency() {
    if (!table) table = tabulate(*observations);
    return *table;
  }
};

LoadedInput load(const InputArgs& in) {
  if (in.obs_path.empty() == in.counts_path.empty())
    throw InputError("exactly one of --obs or --counts is required");
  LoadedInput loaded;
  if (!in.obs_path.empty()) {
    ReadOptions options;
    options.missing = *parse_missing_policy(in.missing);
    options.ignore_columns = in.ignore_columns;
    loaded.observations = read_observations_file(in.obs_path, options);
  } else {
    if (!in.ignore_columns.empty())
      throw InputError("--ignore-column applies to --obs input only");
    loaded.table = read_counts_file(in.counts_path);
  }
  return loaded;
}

ClusterConfig make_config(const ClusterArgs& c) {
  ClusterConfig config;
  config.forest.rule = *parse_selection_rule(c.rule);
  if (c.tie == "random") {
    if (!c.seed) throw InputError("--tie random requires --seed");
    config.forest.tie_break = TieBreak::seeded_random;
    config.forest.seed = *c.seed;
  }
  config.warn_factor = c.warn_factor;
  return config;
}

ClusteringResult run_clustering(LoadedInput& input, const ClusterConfig& config) {
  if (input.observations) return cluster(*input.observations, config);
  return cluster(*input.table, config);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void write_labels_csv(const std::string& input_path, const std::string& output_path,
                      const ObservationSet& obs, const std::vector<std::int32_t>& labels) {
  auto records = csv::parse_file(input_path);
  std::vector<std::string> column(records.size() - 1);
  for (std::size_t i = 0; i < obs.size(); ++i)
    column[obs.source_rows[i]] = std::to_string(labels[i]);

  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + output_path + "'");
  records[0].push_back("mcc_cluster");
  csv::write_record(out, records[0]);
  for (std::size_t r = 1; r < records.size(); ++r) {
    records[r].push_back(column[r - 1]);
    csv::write_record(out, records[r]);
  }
}

std::vector<std::string> label_column(const std::string& path, const std::string& name) {
  auto records = csv::parse_file(path);
  if (records.empty()) throw InputError("'" + path + "' is empty");
  const auto& header = records.front();
  std::size_t col = header.size() - 1;
  if (!name.empty()) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InputError("'" + path + "' has no column '" + name + "'");
    col = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<std::string> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size())
      throw InputError("'" + path + "': ragged row " + std::to_string(r + 1));
    out.push_back(records[r][col]);
  }
  return out;
}

std::vector<std::int32_t> encode_labels(const std::vector<std::string>& raw) {
  std::map<std::string, std::int32_t> ids;
  std::vector<std::int32_t> out;
  for (const auto& s : raw) {
    auto [it, inserted] = ids.try_emplace(s, static_cast<std::int32_t>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("invalid number '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modal clustering of categorical data", "mcc"};
  app.require_subcommand(1);

  InputArgs input;
  ClusterArgs cargs;
  std::string out_path;

  auto* cmd_cluster = app.add_subcommand("cluster", "Cluster observations or a counts table");
  add_input_options(cmd_cluster, input);
  add_cluster_options(cmd_cluster, cargs);
  std::string labels_csv;
  cmd_cluster->add_option("--labels-csv", labels_csv,
                          "Write the input rows with an appended cluster column");
  cmd_cluster->add_option("--out", out_path, "Output file (default stdout)");

  auto* cmd_graph = app.add_subcommand("graph", "Category graph or spanning forest as DOT");
  add_input_options(cmd_graph, input);
  add_cluster_options(cmd_graph, cargs);
  bool forest_only = false;
  cmd_graph->add_flag("--forest", forest_only, "Retained forest edges only");
  cmd_graph->add_option("--out", out_path, "Output file (default stdout)");

  auto* cmd_tree = app.add_subcommand("tree", "Cluster tree as JSON");
  add_input_options(cmd_tree, input);
  add_cluster_options(cmd_tree, cargs);
  cmd_tree->add_option("--out", out_path, "Output file (default stdout)");

  auto* cmd_deviance = app.add_subcommand("deviance", "Null log-linear model deviance");
  add_input_options(cmd_deviance, input);
  cmd_deviance->add_option("--out", out_path, "Output file (default stdout)");

  auto* cmd_evaluate = app.add_subcommand("evaluate", "Compare two labelings");
  std::string path_a, path_b, column_a, column_b;
  cmd_evaluate->add_option("--a", path_a, "First labels CSV")->required();
  cmd_evaluate->add_option("--b", path_b, "Second labels CSV")->required();
  cmd_evaluate->add_option("--a-column", column_a, "Label column in --a (default: last)");
  cmd_evaluate->add_option("--b-column", column_b, "Label column in --b (default: last)");
  cmd_evaluate->add_option("--out", out_path, "Output file (default stdout)");

  auto* cmd_simulate = app.add_subcommand("simulate", "Generate clustered categorical data");
  SimConfig sim;
  std::optional<std::uint64_t> sim_seed;
  cmd_simulate->add_option("--theta", sim.theta, "Association in [0.5, 1]")->required();
  cmd_simulate->add_option("--n", sim.per_cluster, "Observations per cluster")->required();
  cmd_simulate->add_option("--clusters", sim.clusters, "Number of clusters");
  cmd_simulate->add_option("--variables", sim.variables, "Number of variables");
  cmd_simulate->add_option("--levels", sim.levels, "Levels per variable");
  cmd_simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  cmd_simulate->add_option("--out", out_path, "Output CSV (default stdout)");

  auto* cmd_benchmark = app.add_subcommand("benchmark", "Fowlkes-Mallows over a theta/size grid");
  BenchmarkGrid grid;
  std::string thetas = "0.6,0.7,0.8,0.9,0.95";
  std::string sizes = "100,500";
  std::size_t replicates = 500;
  std::optional<std::uint64_t> bench_seed;
  unsigned threads = 1;
  std::string bench_rule = "steepest";
  cmd_benchmark->add_option("--thetas", thetas, "Comma-separated theta values");
  cmd_benchmark->add_option("--sizes", sizes, "Comma-separated per-cluster sizes");
  cmd_benchmark->add_option("--replicates", replicates, "Replicates per grid cell");
  cmd_benchmark->add_option("--clusters", grid.clusters, "Number of clusters");
  cmd_benchmark->add_option("--variables", grid.variables, "Number of variables");
  cmd_benchmark->add_option("--levels", grid.levels, "Levels per variable");
  cmd_benchmark->add_option("--seed", bench_seed, "RNG seed")->required();
  cmd_benchmark->add_option("--threads", threads, "Worker threads");
  cmd_benchmark->add_option("--rule", bench_rule, "steepest | shared-levels")
      ->check(CLI::IsMember({"steepest", "shared-levels"}));
  cmd_benchmark->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (cmd_cluster->parsed()) {
      auto loaded = load(input);
      const auto config = make_config(cargs);
      if (!labels_csv.empty() && !loaded.observations)
        throw InputError("--labels-csv requires --obs input");
      const auto result = run_clustering(loaded, config);
      const auto warning = warn_if_unclusterable(result, config.warn_factor);
      if (warning) err << "warning: " << *warning << '\n';
      Output o(out_path, out);
      o.stream() << result_to_json(result, config, warning).dump(2) << '\n';
      if (!labels_csv.empty())
        write_labels_csv(input.obs_path, labels_csv, *loaded.observations, result.labels);
    } else if (cmd_graph->parsed()) {
      auto loaded = load(input);
      const auto result = run_clustering(loaded, make_config(cargs));
      Output o(out_path, out);
      o.stream() << (forest_only ? forest_to_dot(result.graph, result.forest)
                                 : graph_to_dot(result.graph));
    } else if (cmd_tree->parsed()) {
      auto loaded = load(input);
      const auto result = run_clustering(loaded, make_config(cargs));
      Output o(out_path, out);
      o.stream() << tree_to_json(result.tree, result.table.schema()).dump(2) << '\n';
    } else if (cmd_deviance->parsed()) {
      auto loaded = load(input);
      const auto& table = loaded.contingency();
      const auto report = deviance(table);
      json j{{"statistic", round6(report.statistic)},
             {"df", report.df},
             {"mi", round6(multi_information(table))},
             {"n", table.total()}};
      Output o(out_path, out);
      o.stream() << j.dump(2) << '\n';
    } else if (cmd_evaluate->parsed()) {
      const auto a = encode_labels(label_column(path_a, column_a));
      const auto b = encode_labels(label_column(path_b, column_b));
      const auto pairs = pair_confusion(a, b);
      json j{{"n", a.size()},
             {"fowlkes_mallows", round6(fowlkes_mallows(pairs))},
             {"adjusted_rand", round6(adjusted_rand(pairs))},
             {"pairs", {{"tp", pairs.tp}, {"fp", pairs.fp}, {"fn", pairs.fn}, {"tn", pairs.tn}}}};
      Output o(out_path, out);
      o.stream() << j.dump(2) << '\n';
    } else if (cmd_simulate->parsed()) {
      sim.seed = *sim_seed;
      const auto data = generate(sim);
      Output o(out_path, out);
      write_simulated_csv(o.stream(), data);
    } else if (cmd_benchmark->parsed()) {
      grid.thetas = parse_double_list(thetas);
      grid.per_cluster.clear();
      for (double s : parse_double_list(sizes)) {
        if (s < 1 || s != static_cast<double>(static_cast<int>(s)))
          throw InputError("--sizes must be positive integers");
        grid.per_cluster.push_back(static_cast<int>(s));
      }
      ClusterConfig config;
      config.forest.rule = *parse_selection_rule(bench_rule);
      const auto summaries = run_benchmark(grid, replicates, *bench_seed, config, threads);
      Output o(out_path, out);
      o.stream() << benchmark_to_json(summaries, grid, replicates, *bench_seed).dump(2) << '\n';
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace mcc
