#include "mcc/table.hpp"

#include "mcc/csv.hpp"
#include "mcc/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_set>

namespace mcc {

Schema::Schema(std::vector<std::string> variables,
               std::vector<std::vector<std::string>> levels)
    : variables_(std::move(variables)), levels_(std::move(levels)) {
  if (variables_.size() < 2)
    throw InputError("schema: at least two variables are required");
  if (levels_.size() != variables_.size())
    throw InputError("schema: one level list per variable is required");
  std::set<std::string> names;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    if (!names.insert(variables_[v]).second)
      throw InputError("schema: duplicate variable '" + variables_[v] + "'");
    if (levels_[v].size() < 2)
      throw InputError("schema: variable '" + variables_[v] +
                       "' has fewer than two levels");
    std::set<std::string> seen(levels_[v].begin(), levels_[v].end());
    if (seen.size() != levels_[v].size())
      throw InputError("schema: duplicate level in variable '" + variables_[v] + "'");
  }
  strides_.assign(variables_.size(), 1);
  std::size_t cells = 1;
  for (std::size_t v = variables_.size(); v-- > 0;) {
    strides_[v] = static_cast<CellIndex>(cells);
    cells *= levels_[v].size();
    if (cells > static_cast<std::size_t>(std::numeric_limits<CellIndex>::max()))
      throw InputError("schema: too many cells");
  }
  num_cells_ = cells;
}

std::optional<std::int32_t> Schema::level_index(std::size_t variable,
                                                const std::string& label) const {
  const auto& lv = levels_[variable];
  auto it = std::find(lv.begin(), lv.end(), label);
  if (it == lv.end()) return std::nullopt;
  return static_cast<std::int32_t>(it - lv.begin());
}

std::optional<std::size_t> Schema::variable_index(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

CellIndex Schema::cell_index(std::span<const std::int32_t> tuple) const {
  if (tuple.size() != variables_.size())
    throw InputError("cell tuple has the wrong arity");
  CellIndex index = 0;
  for (std::size_t v = 0; v < tuple.size(); ++v) {
    if (tuple[v] < 0 || static_cast<std::size_t>(tuple[v]) >= levels_[v].size())
      throw InputError("level index out of range for '" + variables_[v] + "'");
    index += tuple[v] * strides_[v];
  }
  return index;
}

CellTuple Schema::cell_tuple(CellIndex cell) const {
  CellTuple tuple(variables_.size());
  for (std::size_t v = 0; v < variables_.size(); ++v) tuple[v] = level_of(cell, v);
  return tuple;
}

std::vector<std::string> Schema::cell_labels(CellIndex cell) const {
  std::vector<std::string> labels;
  labels.reserve(variables_.size());
  for (std::size_t v = 0; v < variables_.size(); ++v)
    labels.push_back(levels_[v][level_of(cell, v)]);
  return labels;
}

int Schema::shared_levels(CellIndex a, CellIndex b) const {
  int shared = 0;
  for (std::size_t v = 0; v < variables_.size(); ++v)
    shared += level_of(a, v) == level_of(b, v);
  return shared;
}

ContingencyTable::ContingencyTable(Schema schema, CountArray counts)
    : schema_(std::move(schema)), counts_(std::move(counts)) {
  if (static_cast<std::size_t>(counts_.size()) != schema_.num_cells())
    throw InputError("table: count array does not match the schema's cell count");
  if ((counts_ < 0).any()) throw InputError("table: negative cell count");
  total_ = counts_.sum();
  if (total_ < 1) throw InputError("table: total count must be at least 1");
}

CountArray ContingencyTable::marginal(std::size_t variable) const {
  CountArray m = CountArray::Zero(static_cast<Eigen::Index>(schema_.num_levels(variable)));
  for (Eigen::Index c = 0; c < counts_.size(); ++c)
    m[schema_.level_of(static_cast<CellIndex>(c), variable)] += counts_[c];
  return m;
}

CellIndex ObservationSet::cell_of(std::size_t observation) const {
  const auto row = rows.row(static_cast<Eigen::Index>(observation));
  return schema.cell_index(std::span<const std::int32_t>(row.data(), row.size()));
}

std::optional<MissingPolicy> parse_missing_policy(const std::string& name) {
  if (name == "reject") return MissingPolicy::reject;
  if (name == "drop-row") return MissingPolicy::drop_row;
  if (name == "as-level") return MissingPolicy::as_level;
  return std::nullopt;
}

namespace {

std::string row_context(std::size_t data_row) {
  // +2: one for the header, one for 1-based line numbers.
  return "row " + std::to_string(data_row + 2);
}

void check_header(const csv::Record& header) {
  std::unordered_set<std::string> seen;
  for (const auto& name : header) {
    if (name.empty()) throw InputError("csv: empty column name in header");
    if (!seen.insert(name).second)
      throw InputError("csv: duplicate column '" + name + "'");
  }
}

std::vector<std::vector<std::string>> sorted_levels(
    const std::vector<std::set<std::string>>& distinct) {
  std::vector<std::vector<std::string>> levels;
  for (const auto& s : distinct) levels.emplace_back(s.begin(), s.end());
  return levels;
}

Count parse_count(const std::string& text, std::size_t data_row) {
  Count value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw InputError("counts: " + row_context(data_row) + ": '" + text +
                     "' is not an integer count");
  if (value < 0)
    throw InputError("counts: " + row_context(data_row) + ": negative count");
  return value;
}

ObservationSet observations_from(const std::vector<csv::Record>& records,
                                 const ReadOptions& options) {
  if (records.empty()) throw InputError("observations: empty input");
  const csv::Record header = records.front();
  check_header(header);
  const std::size_t width = header.size();

  std::vector<std::size_t> columns;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < width; ++c) {
    if (std::find(options.ignore_columns.begin(), options.ignore_columns.end(),
                  header[c]) != options.ignore_columns.end())
      continue;
    columns.push_back(c);
    names.push_back(header[c]);
  }
  for (const auto& ignored : options.ignore_columns)
    if (std::find(header.begin(), header.end(), ignored) == header.end())
      throw InputError("observations: ignored column '" + ignored + "' not in header");

  std::vector<std::vector<std::string>> values;
  std::vector<std::size_t> source_rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t data_row = r - 1;
    if (rec.size() != width)
      throw InputError("observations: " + row_context(data_row) + " has " +
                       std::to_string(rec.size()) + " fields, expected " +
                       std::to_string(width));
    std::vector<std::string> picked;
    bool drop = false;
    for (std::size_t c : columns) {
      std::string v = rec[c];
      if (v.empty()) {
        switch (options.missing) {
          case MissingPolicy::reject:
            throw InputError("observations: " + row_context(data_row) +
                             ": missing value in column '" + header[c] + "'");
          case MissingPolicy::drop_row:
            drop = true;
            break;
          case MissingPolicy::as_level:
            v = kMissingLevel;
            break;
        }
      }
      picked.push_back(std::move(v));
    }
    if (drop) continue;
    values.push_back(std::move(picked));
    source_rows.push_back(data_row);
  }
  if (values.empty()) throw InputError("observations: no data rows");

  Schema schema;
  if (options.schema) {
    schema = *options.schema;
    if (schema.variables() != names)
      throw InputError("observations: header does not match the declared schema");
  } else {
    std::vector<std::set<std::string>> distinct(names.size());
    for (const auto& row : values)
      for (std::size_t v = 0; v < names.size(); ++v) distinct[v].insert(row[v]);
    schema = Schema(names, sorted_levels(distinct));
  }

  ObservationSet obs{schema, LevelMatrix(static_cast<Eigen::Index>(values.size()),
                                         static_cast<Eigen::Index>(names.size())),
                     std::move(source_rows)};
  for (std::size_t r = 0; r < values.size(); ++r) {
    for (std::size_t v = 0; v < names.size(); ++v) {
      auto level = schema.level_index(v, values[r][v]);
      if (!level)
        throw InputError("observations: " + row_context(obs.source_rows[r]) +
                         ": unknown level '" + values[r][v] + "' for '" + names[v] + "'");
      obs.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(v)) = *level;
    }
  }
  return obs;
}

ContingencyTable counts_from(const std::vector<csv::Record>& records,
                             const std::optional<Schema>& declared) {
  if (records.empty()) throw InputError("counts: empty input");
  const csv::Record header = records.front();
  check_header(header);
  if (header.size() < 3 || header.back() != "count")
    throw InputError("counts: expected variable columns followed by a 'count' column");
  const std::size_t p = header.size() - 1;
  const std::vector<std::string> names(header.begin(), header.end() - 1);

  std::vector<std::pair<std::vector<std::string>, Count>> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size())
      throw InputError("counts: " + row_context(r - 1) + " has the wrong number of fields");
    std::vector<std::string> labels(rec.begin(), rec.end() - 1);
    for (const auto& l : labels)
      if (l.empty()) throw InputError("counts: " + row_context(r - 1) + ": empty level");
    rows.emplace_back(std::move(labels), parse_count(rec.back(), r - 1));
  }
  if (rows.empty()) throw InputError("counts: no data rows");

  Schema schema;
  if (declared) {
    schema = *declared;
    if (schema.variables() != names)
      throw InputError("counts: header does not match the declared schema");
  } else {
    std::vector<std::set<std::string>> distinct(p);
    for (const auto& [labels, n] : rows)
      for (std::size_t v = 0; v < p; ++v) distinct[v].insert(labels[v]);
    schema = Schema(names, sorted_levels(distinct));
  }

  CountArray counts = CountArray::Zero(static_cast<Eigen::Index>(schema.num_cells()));
  std::vector<bool> filled(schema.num_cells(), false);
  CellTuple tuple(p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t v = 0; v < p; ++v) {
      auto level = schema.level_index(v, rows[r].first[v]);
      if (!level)
        throw InputError("counts: " + row_context(r) + ": unknown level '" +
                         rows[r].first[v] + "'");
      tuple[v] = *level;
    }
    const CellIndex cell = schema.cell_index(tuple);
    if (filled[cell]) throw InputError("counts: " + row_context(r) + ": duplicate cell");
    filled[cell] = true;
    counts[cell] = rows[r].second;
  }
  return ContingencyTable(std::move(schema), std::move(counts));
}

}  // namespace

ObservationSet read_observations(std::istream& in, const ReadOptions& options) {
  return observations_from(csv::parse(in), options);
}

ObservationSet read_observations_file(const std::string& path,
                                      const ReadOptions& options) {
  return observations_from(csv::parse_file(path), options);
}

ContingencyTable read_counts(std::istream& in, const std::optional<Schema>& declared) {
  return counts_from(csv::parse(in), declared);
}

ContingencyTable read_counts_file(const std::string& path,
                                  const std::optional<Schema>& declared) {
  return counts_from(csv::parse_file(path), declared);
}

void write_counts(std::ostream& out, const ContingencyTable& table) {
  const Schema& schema = table.schema();
  csv::Record header = schema.variables();
  header.push_back("count");
  csv::write_record(out, header);
  for (std::size_t c = 0; c < table.num_cells(); ++c) {
    auto rec = schema.cell_labels(static_cast<CellIndex>(c));
    rec.push_back(std::to_string(table.count(static_cast<CellIndex>(c))));
    csv::write_record(out, rec);
  }
}

ContingencyTable tabulate(const ObservationSet& observations) {
  if (observations.size() == 0) throw InputError("tabulate: no observations");
  CountArray counts =
      CountArray::Zero(static_cast<Eigen::Index>(observations.schema.num_cells()));
  for (std::size_t i = 0; i < observations.size(); ++i) ++counts[observations.cell_of(i)];
  return ContingencyTable(observations.schema, std::move(counts));
}

}  // namespace mcc
