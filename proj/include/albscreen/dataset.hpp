#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rng.hpp"

namespace albscreen {

/// Problems with input data (as opposed to API misuse).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : DataError(what + " at row " + std::to_string(row) + ", column " + std::to_string(column)),
        row_(row),
        column_(column)
  {
  }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

/// Feature matrix stored column-major (one contiguous column per feature)
/// with binary labels. Label 0 is the "n" class, label 1 the "m" class.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t rows, std::size_t features) : rows_(rows), features_(features), values_(rows * features), labels_(rows) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t features() const noexcept { return features_; }

  std::span<const double> column(std::size_t j) const { return {values_.data() + j * rows_, rows_}; }
  std::span<double> column(std::size_t j) { return {values_.data() + j * rows_, rows_}; }
  double at(std::size_t row, std::size_t j) const { return values_[j * rows_ + row]; }
  double& at(std::size_t row, std::size_t j) { return values_[j * rows_ + row]; }

  std::span<const int> labels() const noexcept { return labels_; }
  std::span<int> labels() noexcept { return labels_; }
  bool labeled() const noexcept { return labeled_; }
  void set_labeled(bool v) noexcept { labeled_ = v; }

  std::size_t count(int label) const
  {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
  }
  std::size_t n0() const { return count(0); }
  std::size_t n1() const { return count(1); }

  std::vector<double> row(std::size_t i) const
  {
    std::vector<double> r(features_);
    for (std::size_t j = 0; j < features_; ++j)
      r[j] = at(i, j);
    return r;
  }

  std::vector<std::string> feature_names;          // empty or one per feature
  std::array<std::string, 2> label_names{"0", "1"};  // original label text for 0 and 1
  std::string label_column_name = "label";

  std::string feature_name(std::size_t j) const
  {
    return j < feature_names.size() ? feature_names[j] : "x" + std::to_string(j);
  }

  /// Throws std::invalid_argument unless each class has at least `min_per_class` rows.
  void require_classes(std::size_t min_per_class) const
  {
    if (n0() < min_per_class || n1() < min_per_class)
      throw std::invalid_argument("dataset needs at least " + std::to_string(min_per_class) +
                                  " rows in each class (have " + std::to_string(n0()) + " and " +
                                  std::to_string(n1()) + ")");
  }

  /// Rows in the given order; feature names and label mapping carried over.
  Dataset subset_rows(std::span<const std::size_t> rows) const
  {
    Dataset out(rows.size(), features_);
    copy_meta(out);
    for (std::size_t j = 0; j < features_; ++j)
      for (std::size_t r = 0; r < rows.size(); ++r)
        out.at(r, j) = at(rows[r], j);
    for (std::size_t r = 0; r < rows.size(); ++r)
      out.labels_[r] = labels_[rows[r]];
    return out;
  }

  Dataset subset_features(std::span<const std::size_t> cols) const
  {
    Dataset out(rows_, cols.size());
    copy_meta(out);
    out.feature_names.clear();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      auto src = column(cols[k]);
      std::copy(src.begin(), src.end(), out.column(k).begin());
      if (!feature_names.empty())
        out.feature_names.push_back(feature_names[cols[k]]);
    }
    out.labels_ = labels_;
    return out;
  }

  bool operator==(const Dataset&) const = default;

 private:
  void copy_meta(Dataset& out) const
  {
    out.feature_names = feature_names;
    out.label_names = label_names;
    out.label_column_name = label_column_name;
    out.labeled_ = labeled_;
  }

  std::size_t rows_ = 0;
  std::size_t features_ = 0;
  std::vector<double> values_;
  std::vector<int> labels_;
  bool labeled_ = true;
};

// ---------------------------------------------------------------------------
// CSV

using LabelColumn = std::variant<std::string, std::size_t>;

struct CsvOptions {
  std::optional<bool> header;                               // nullopt: auto-detect
  std::optional<std::array<std::string, 2>> label_names;  // impose a known mapping
  bool label_optional = false;                              // allow a missing label column
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line)
{
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return cells;
}

inline std::optional<double> parse_real(std::string_view s)
{
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  if (s.empty())
    return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

inline std::string format_real(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Reads a comma-separated table with one label column and numeric features.
///
/// A header row is detected when any feature cell of the first row is not a
/// number (or forced via options). Labels must take exactly two distinct
/// values; they map to 0/1 in sorted order (numeric order when both are
/// numbers, byte order otherwise).
inline Dataset parse_csv(std::istream& in, const LabelColumn& label_column, const CsvOptions& options = {})
{
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty())
      continue;
    rows.push_back(detail::split_csv_line(line));
  }
  if (rows.empty())
    throw SchemaError("csv: no rows");
  const std::size_t width = rows.front().size();

  std::optional<std::size_t> label_idx;
  bool header = false;
  if (const auto* name = std::get_if<std::string>(&label_column)) {
    header = true;
    const auto& first = rows.front();
    const auto it = std::find(first.begin(), first.end(), *name);
    if (it != first.end())
      label_idx = static_cast<std::size_t>(it - first.begin());
    else if (!options.label_optional)
      throw SchemaError("csv: label column '" + *name + "' not found in header");
  } else {
    label_idx = std::get<std::size_t>(label_column);
    if (*label_idx >= width) {
      if (!options.label_optional)
        throw SchemaError("csv: label column index " + std::to_string(*label_idx) + " out of range");
      label_idx.reset();
    }
  }
  if (options.header) {
    header = *options.header;
  } else if (!header) {
    const auto& first = rows.front();
    for (std::size_t c = 0; c < first.size(); ++c)
      if (c != label_idx && !detail::parse_real(first[c]))
        header = true;
  }

  const std::size_t first_data = header ? 1 : 0;
  const std::size_t n_rows = rows.size() - first_data;
  const std::size_t n_features = width - (label_idx ? 1 : 0);
  if (n_rows == 0)
    throw SchemaError("csv: header but no data rows");

  Dataset ds(n_rows, n_features);
  ds.set_labeled(label_idx.has_value());
  std::vector<std::string> raw_labels(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const auto& cells = rows[first_data + r];
    const std::size_t file_row = first_data + r + 1;
    if (cells.size() != width)
      throw ParseError("csv: expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()),
                       file_row, std::min(cells.size(), width) + 1);
    std::size_t j = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_idx) {
        if (cells[c].empty())
          throw ParseError("csv: missing label", file_row, c + 1);
        raw_labels[r] = cells[c];
        continue;
      }
      const auto v = detail::parse_real(cells[c]);
      if (!v)
        throw ParseError(cells[c].empty() ? "csv: missing value" : "csv: non-numeric value '" + cells[c] + "'",
                         file_row, c + 1);
      ds.at(r, j++) = *v;
    }
  }

  if (header) {
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_idx)
        ds.label_column_name = rows.front()[c];
      else
        ds.feature_names.push_back(rows.front()[c]);
    }
  }

  if (!label_idx)
    return ds;

  std::array<std::string, 2> mapping;
  if (options.label_names) {
    mapping = *options.label_names;
  } else {
    std::vector<std::string> distinct = raw_labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() != 2)
      throw SchemaError("csv: label column must contain exactly two distinct values, found " +
                        std::to_string(distinct.size()));
    const auto a = detail::parse_real(distinct[0]);
    const auto b = detail::parse_real(distinct[1]);
    if (a && b && *b < *a)
      std::swap(distinct[0], distinct[1]);
    mapping = {distinct[0], distinct[1]};
  }
  ds.label_names = mapping;
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (raw_labels[r] == mapping[0])
      ds.labels()[r] = 0;
    else if (raw_labels[r] == mapping[1])
      ds.labels()[r] = 1;
    else
      throw SchemaError("csv: unexpected label '" + raw_labels[r] + "' at row " + std::to_string(first_data + r + 1));
  }
  return ds;
}

inline Dataset load_csv(const std::string& path, const LabelColumn& label_column, const CsvOptions& options = {})
{
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open '" + path + "'");
  return parse_csv(in, label_column, options);
}

/// Header row, features in order, label column last (original label text).
/// Values use the shortest round-tripping decimal form.
inline void write_csv(std::ostream& out, const Dataset& ds)
{
  for (std::size_t j = 0; j < ds.features(); ++j)
    out << ds.feature_name(j) << ',';
  out << ds.label_column_name << '\n';
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t j = 0; j < ds.features(); ++j)
      out << detail::format_real(ds.at(r, j)) << ',';
    out << ds.label_names[static_cast<std::size_t>(ds.labels()[r])] << '\n';
  }
}

inline void save_csv(const std::string& path, const Dataset& ds)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot write '" + path + "'");
  write_csv(out, ds);
}

/// Importance-mask sidecar: one 0/1 per line.
inline void save_mask(const std::string& path, const std::vector<bool>& mask)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot write '" + path + "'");
  for (bool b : mask)
    out << (b ? '1' : '0') << '\n';
}

inline std::vector<bool> load_mask(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open '" + path + "'");
  std::vector<bool> mask;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto t = detail::trim(line);
    if (t.empty())
      continue;
    if (t != "0" && t != "1")
      throw ParseError("mask: expected 0 or 1", row, 1);
    mask.push_back(t == "1");
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Preprocessing

/// Removes columns whose values are all identical; returns the reduced
/// dataset and the removed original indices.
inline std::pair<Dataset, std::vector<std::size_t>> drop_constant_features(const Dataset& ds)
{
  std::vector<std::size_t> keep;
  std::vector<std::size_t> removed;
  for (std::size_t j = 0; j < ds.features(); ++j) {
    auto col = ds.column(j);
    const bool constant = std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); });
    (constant ? removed : keep).push_back(j);
  }
  if (removed.empty())
    return {ds, {}};
  return {ds.subset_features(keep), removed};
}

/// Per-class random partition. The first part takes round-half-up(fraction *
/// class size) rows of each class; row order within each part follows the
/// original row order.
inline std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double fraction, std::uint64_t seed)
{
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("stratified_split: fraction must be in (0, 1)");
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  for (int label : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < ds.rows(); ++r)
      if (ds.labels()[r] == label)
        idx.push_back(r);
    const auto take = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(idx.size()) + 0.5));
    if (take < 1 || take >= idx.size())
      throw std::invalid_argument("stratified_split: class " + std::to_string(label) + " with " +
                                  std::to_string(idx.size()) + " rows cannot be split at fraction " +
                                  std::to_string(fraction));
    Rng rng(derive_seed(seed, {stream::split, static_cast<std::uint64_t>(label)}));
    rng.shuffle(std::span<std::size_t>(idx));
    first.insert(first.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
    second.insert(second.end(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end());
  }
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return {ds.subset_rows(first), ds.subset_rows(second)};
}

}  // namespace albscreen
