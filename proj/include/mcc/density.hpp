#pragma once

#include "mcc/error.hpp"
#include "mcc/table.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace mcc {

/// Per-cell mutual-information density of a contingency table.
///
/// `raw` holds each cell's additive share of the (multi-)information in nats,
/// p_c * ln(p_c / q_c) with q_c the product of the cell's marginal
/// probabilities; `normalized` is its min-max rescaling to [0, 1].
struct DensityTable {
  Schema schema;
  CountArray counts;
  Eigen::ArrayXd raw;
  Eigen::ArrayXd normalized;
  double mutual_information = 0.0;
  Eigen::ArrayXd entropies;  // marginal entropy per variable
  double joint_entropy = 0.0;
  /// raw was constant, so normalized is all zero and carries no signal.
  bool degenerate = false;

  std::size_t num_cells() const { return static_cast<std::size_t>(raw.size()); }
};

/// Likelihood-ratio statistic of the mutual-independence log-linear model.
struct DevianceReport {
  double statistic = 0.0;
  std::int64_t df = 0;
};

struct NormalizedDensity {
  Eigen::ArrayXd values;
  bool degenerate = false;
};

/// Spans at or below this are treated as constant by normalize().
inline constexpr double kDegenerateSpan = 1e-12;

/// Shannon entropy in nats of a count vector summing to n, with 0 ln 0 = 0.
template <typename Derived>
double entropy(const Eigen::ArrayBase<Derived>& counts, Count n) {
  if (n <= 0) throw InputError("entropy: total count must be positive");
  const double total = static_cast<double>(n);
  double h = 0.0;
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    const double c = static_cast<double>(counts.derived().coeff(i));
    if (c > 0) {
      const double p = c / total;
      h -= p * std::log(p);
    }
  }
  return h;
}

double joint_entropy(const ContingencyTable& table);

/// Sum of marginal entropies minus joint entropy.
double multi_information(const ContingencyTable& table);

/// ln(p_c / q_c) for every cell with N_c > 0, and 0 for empty cells. Exact
/// independence of a cell (N_c * n^(p-1) equal to the product of its marginal
/// counts) yields exactly 0.
Eigen::ArrayXd log_ratios(const ContingencyTable& table);

Eigen::ArrayXd raw_contributions(const ContingencyTable& table);

/// (x - min) / (max - min); all zeros and `degenerate` when the span is
/// at most kDegenerateSpan.
NormalizedDensity normalize(const Eigen::ArrayXd& raw);

DensityTable estimate_density(const ContingencyTable& table);

/// G^2 = 2 sum N_c ln(N_c / E_c) against E_c = n q_c, with
/// df = (prod L_v - 1) - sum (L_v - 1).
DevianceReport deviance(const ContingencyTable& table);

}  // namespace mcc
