#include "mcc/density.hpp"

#include "mcc/error.hpp"

#include <vector>

namespace mcc {

namespace {

__extension__ using u128 = unsigned __int128;

bool checked_mul(u128& acc, u128 factor) {
  return !__builtin_mul_overflow(acc, factor, &acc);
}

}  // namespace

double joint_entropy(const ContingencyTable& table) {
  return entropy(table.counts(), table.total());
}

double multi_information(const ContingencyTable& table) {
  double sum = 0.0;
  for (std::size_t v = 0; v < table.schema().num_variables(); ++v)
    sum += entropy(table.marginal(v), table.total());
  return sum - joint_entropy(table);
}

Eigen::ArrayXd log_ratios(const ContingencyTable& table) {
  const Schema& schema = table.schema();
  const std::size_t p = schema.num_variables();
  const Count n = table.total();

  std::vector<CountArray> marginals;
  std::vector<Eigen::ArrayXd> log_marginals;
  for (std::size_t v = 0; v < p; ++v) {
    marginals.push_back(table.marginal(v));
    log_marginals.push_back(marginals.back().cast<double>().log());
  }

  // n^(p-1), exact when it fits.
  u128 n_power = 1;
  bool n_power_exact = true;
  for (std::size_t v = 1; v < p; ++v)
    n_power_exact = n_power_exact && checked_mul(n_power, static_cast<u128>(n));

  const double log_n = std::log(static_cast<double>(n));
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(table.num_cells()));
  for (std::size_t c = 0; c < table.num_cells(); ++c) {
    const auto cell = static_cast<CellIndex>(c);
    const Count nc = table.count(cell);
    if (nc == 0) continue;

    u128 lhs = static_cast<u128>(nc);
    bool exact = n_power_exact && checked_mul(lhs, n_power);
    u128 rhs = 1;
    double log_q = 0.0;
    for (std::size_t v = 0; v < p; ++v) {
      const auto level = schema.level_of(cell, v);
      const Count m = marginals[v][level];
      if (m <= 0) throw InvariantError("log_ratios: non-empty cell with an empty marginal");
      exact = exact && checked_mul(rhs, static_cast<u128>(m));
      log_q += log_marginals[v][level];
    }
    if (exact && lhs == rhs) continue;
    out[static_cast<Eigen::Index>(c)] =
        std::log(static_cast<double>(nc)) + static_cast<double>(p - 1) * log_n - log_q;
  }
  return out;
}

Eigen::ArrayXd raw_contributions(const ContingencyTable& table) {
  const Eigen::ArrayXd probability =
      table.counts().cast<double>() / static_cast<double>(table.total());
  return probability * log_ratios(table);
}

NormalizedDensity normalize(const Eigen::ArrayXd& raw) {
  NormalizedDensity result;
  if (raw.size() == 0) return result;
  const double lo = raw.minCoeff();
  const double span = raw.maxCoeff() - lo;
  if (!(span > kDegenerateSpan)) {
    result.values = Eigen::ArrayXd::Zero(raw.size());
    result.degenerate = true;
    return result;
  }
  result.values = (raw - lo) / span;
  return result;
}

DensityTable estimate_density(const ContingencyTable& table) {
  DensityTable d;
  d.schema = table.schema();
  d.counts = table.counts();
  d.raw = raw_contributions(table);
  auto norm = normalize(d.raw);
  d.normalized = std::move(norm.values);
  d.degenerate = norm.degenerate;
  d.mutual_information = d.raw.sum();

  const std::size_t p = d.schema.num_variables();
  d.entropies.resize(static_cast<Eigen::Index>(p));
  for (std::size_t v = 0; v < p; ++v)
    d.entropies[static_cast<Eigen::Index>(v)] = entropy(table.marginal(v), table.total());
  d.joint_entropy = joint_entropy(table);
  return d;
}

DevianceReport deviance(const ContingencyTable& table) {
  const Schema& schema = table.schema();
  DevianceReport report;
  report.statistic = 2.0 * (table.counts().cast<double>() * log_ratios(table)).sum();

  std::int64_t cells = 1;
  std::int64_t main_effects = 0;
  for (std::size_t v = 0; v < schema.num_variables(); ++v) {
    const auto levels = static_cast<std::int64_t>(schema.num_levels(v));
    cells *= levels;
    main_effects += levels - 1;
  }
  report.df = (cells - 1) - main_effects;
  return report;
}

}  // namespace mcc
