#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcc {

using Count = std::int64_t;
using CountArray = Eigen::Array<Count, Eigen::Dynamic, 1>;
using LevelMatrix =
    Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CellIndex = std::int32_t;
using CellTuple = std::vector<std::int32_t>;

/// Variables and their ordered category labels.
///
/// Cells of the cross-classification are addressed by a flat row-major index
/// (the first variable varies slowest), so comparing flat indices is the same
/// as comparing level tuples lexicographically.
class Schema {
 public:
  Schema() = default;
  /// Throws InputError unless p >= 2, every variable has >= 2 levels and
  /// labels are unique within a variable.
  Schema(std::vector<std::string> variables,
         std::vector<std::vector<std::string>> levels);

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_levels(std::size_t variable) const {
    return levels_[variable].size();
  }
  std::size_t num_cells() const { return num_cells_; }

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::string>& levels(std::size_t variable) const {
    return levels_[variable];
  }

  std::optional<std::int32_t> level_index(std::size_t variable,
                                          const std::string& label) const;
  std::optional<std::size_t> variable_index(const std::string& name) const;

  CellIndex cell_index(std::span<const std::int32_t> tuple) const;
  CellTuple cell_tuple(CellIndex cell) const;
  std::int32_t level_of(CellIndex cell, std::size_t variable) const {
    return static_cast<std::int32_t>((cell / strides_[variable]) %
                                     static_cast<CellIndex>(levels_[variable].size()));
  }
  std::vector<std::string> cell_labels(CellIndex cell) const;

  /// Number of variables on which two cells take the same level.
  int shared_levels(CellIndex a, CellIndex b) const;

  bool operator==(const Schema& other) const {
    return variables_ == other.variables_ && levels_ == other.levels_;
  }

 private:
  std::vector<std::string> variables_;
  std::vector<std::vector<std::string>> levels_;
  std::vector<CellIndex> strides_;
  std::size_t num_cells_ = 0;
};

/// Dense p-way table of non-negative cell counts, zero cells included.
class ContingencyTable {
 public:
  /// Throws InputError on a size mismatch, a negative count or an empty table.
  ContingencyTable(Schema schema, CountArray counts);

  const Schema& schema() const { return schema_; }
  const CountArray& counts() const { return counts_; }
  Count count(CellIndex cell) const { return counts_[cell]; }
  Count total() const { return total_; }
  std::size_t num_cells() const { return static_cast<std::size_t>(counts_.size()); }

  /// Level counts of one variable; sums to total().
  CountArray marginal(std::size_t variable) const;

  bool operator==(const ContingencyTable& other) const {
    return schema_ == other.schema_ && (counts_ == other.counts_).all();
  }

 private:
  Schema schema_;
  CountArray counts_;
  Count total_ = 0;
};

/// One row of level indices per observed subject.
struct ObservationSet {
  Schema schema;
  LevelMatrix rows;
  /// Zero-based data row (header excluded) each observation came from; rows
  /// dropped by the missing-value policy have no entry.
  std::vector<std::size_t> source_rows;

  std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }
  CellIndex cell_of(std::size_t observation) const;
};

enum class MissingPolicy { reject, drop_row, as_level };

inline constexpr const char* kMissingLevel = "(missing)";

struct ReadOptions {
  MissingPolicy missing = MissingPolicy::reject;
  /// Columns excluded from the schema (e.g. a ground-truth label column).
  std::vector<std::string> ignore_columns;
  /// When set, values are mapped onto this schema instead of being inferred;
  /// unknown labels are an error. Levels absent from the data are kept.
  std::optional<Schema> schema;
};

std::optional<MissingPolicy> parse_missing_policy(const std::string& name);

/// Header row of variable names, one observation per row. Inferred levels are
/// the distinct values of each column sorted lexicographically.
ObservationSet read_observations(std::istream& in, const ReadOptions& options = {});
ObservationSet read_observations_file(const std::string& path,
                                      const ReadOptions& options = {});

/// One column per variable plus a trailing `count` column; unlisted cells are
/// zero.
ContingencyTable read_counts(std::istream& in,
                             const std::optional<Schema>& declared = std::nullopt);
ContingencyTable read_counts_file(const std::string& path,
                                  const std::optional<Schema>& declared = std::nullopt);

/// Writes every cell (zeros included) in index order.
void write_counts(std::ostream& out, const ContingencyTable& table);

ContingencyTable tabulate(const ObservationSet& observations);

}  // namespace mcc
