#include "galt/context.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "galt/csv.hpp"
#include "galt/error.hpp"

namespace galt {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

double parse_number(const std::string& text, const std::string& column) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorClass::Io, "BadNumber",
                "column '" + column + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

void check_weights(const ContextualTable& table, const Eigen::VectorXd& weights) {
  if (weights.size() != table.values.rows()) {
    throw Error(ErrorClass::DegenerateData, "DimensionMismatch",
                "respondent weights do not match the contextual table rows");
  }
}

}  // namespace

void VariableSpec::validate() const {
  if (name.empty()) throw Error(ErrorClass::Config, "InvalidVariable", "variable without a name");
  if (kind == VariableKind::Categorical) {
    if (standardize) {
      throw Error(ErrorClass::Config, "InvalidVariable",
                  "variable '" + name + "': standardize applies to quantitative variables only");
    }
    if (invert_scale) {
      throw Error(ErrorClass::Config, "InvalidVariable",
                  "variable '" + name + "': invert_scale applies to quantitative variables only");
    }
    if (categories.empty()) {
      throw Error(ErrorClass::Config, "InvalidVariable", "variable '" + name + "': no categories");
    }
    std::set<std::string_view> uniq(categories.begin(), categories.end());
    if (uniq.size() != categories.size()) {
      throw Error(ErrorClass::Config, "InvalidVariable", "variable '" + name + "': duplicate categories");
    }
  }
}

std::size_t RawTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorClass::Io, "MissingColumn", "contextual table has no column '" + std::string(name) + "'");
}

RawTable read_raw_table(const std::filesystem::path& path) {
  const auto table = csv::read_file(path);
  const auto id_col = table.column("id");
  RawTable raw;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != id_col) raw.columns.push_back(table.header[c]);
  }
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    if (!seen.insert(row[id_col]).second) {
      throw Error(ErrorClass::Io, "DuplicateId",
                  path.filename().string() + ": duplicate respondent id '" + row[id_col] + "'");
    }
    raw.ids.push_back(row[id_col]);
    auto& out = raw.cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == id_col) continue;
      if (row[c].empty()) {
        out.emplace_back(std::nullopt);
      } else {
        out.emplace_back(row[c]);
      }
    }
  }
  return raw;
}

RawTable select_rows(const RawTable& raw, std::span<const std::string> ids) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < raw.ids.size(); ++i) index.emplace(raw.ids[i], i);
  RawTable out;
  out.columns = raw.columns;
  for (const auto& id : ids) {
    const auto it = index.find(id);
    if (it == index.end()) {
      throw Error(ErrorClass::DegenerateData, "Misalignment",
                  "respondent '" + id + "' has no contextual row");
    }
    out.ids.push_back(id);
    out.cells.push_back(raw.cells[it->second]);
  }
  return out;
}

std::vector<std::string> distinct_values(std::span<const RawTable> tables, std::string_view column) {
  std::set<std::string> values;
  for (const auto& t : tables) {
    const auto c = t.column(column);
    for (const auto& row : t.cells) {
      if (row[c]) values.insert(*row[c]);
    }
  }
  return {values.begin(), values.end()};
}

std::vector<std::string> ContextualTable::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (const auto& c : columns) names.push_back(c.name);
  return names;
}

bool ContextualTable::has_missing() const { return values.hasNaN(); }

std::size_t ContextualTable::missing_count() const {
  return static_cast<std::size_t>(values.array().isNaN().count());
}

std::vector<bool> ContextualTable::standardize_flags() const {
  std::vector<bool> flags;
  flags.reserve(columns.size());
  for (const auto& c : columns) {
    const auto& spec = specs[c.variable];
    flags.push_back(spec.kind == VariableKind::Quantitative && spec.standardize);
  }
  return flags;
}

ContextualTable encode_contextual(const RawTable& raw, std::span<const VariableSpec> specs) {
  ContextualTable out;
  out.respondent_ids = raw.ids;
  out.specs.assign(specs.begin(), specs.end());
  for (std::size_t v = 0; v < specs.size(); ++v) {
    specs[v].validate();
    if (specs[v].kind == VariableKind::Quantitative) {
      out.columns.push_back({specs[v].name, v, {}});
    } else {
      for (const auto& cat : specs[v].categories) {
        out.columns.push_back({specs[v].name + "=" + cat, v, cat});
      }
    }
  }

  const auto rows = static_cast<Eigen::Index>(raw.ids.size());
  out.values = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(out.columns.size()));
  Eigen::Index col = 0;
  for (const auto& spec : specs) {
    const auto src = raw.column(spec.name);
    if (spec.kind == VariableKind::Quantitative) {
      for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& cell = raw.cells[static_cast<std::size_t>(i)][src];
        if (!cell) {
          out.values(i, col) = kMissing;
          continue;
        }
        const double x = parse_number(*cell, spec.name);
        out.values(i, col) = spec.invert_scale ? *spec.invert_scale - x : x;
      }
      ++col;
      continue;
    }
    const auto width = static_cast<Eigen::Index>(spec.categories.size());
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& cell = raw.cells[static_cast<std::size_t>(i)][src];
      if (!cell) {
        out.values.block(i, col, 1, width).setConstant(kMissing);
        continue;
      }
      const auto it = std::find(spec.categories.begin(), spec.categories.end(), *cell);
      if (it == spec.categories.end()) {
        throw Error(ErrorClass::Io, "UnknownCategory",
                    "variable '" + spec.name + "': value '" + *cell + "' is not a declared category");
      }
      out.values(i, col + (it - spec.categories.begin())) = 1.0;
    }
    col += width;
  }
  return out;
}

ContextualTable impute_missing(const ContextualTable& table, const Eigen::VectorXd& weights) {
  check_weights(table, weights);
  if (table.centered) {
    throw Error(ErrorClass::DegenerateData, "AlreadyCentered", "imputation expects an uncentered table");
  }
  ContextualTable out = table;
  for (Eigen::Index k = 0; k < out.values.cols(); ++k) {
    const auto& info = out.columns[static_cast<std::size_t>(k)];
    auto column = out.values.col(k);
    if (!column.hasNaN()) continue;
    if (out.specs[info.variable].kind == VariableKind::Categorical) {
      for (Eigen::Index i = 0; i < column.size(); ++i) {
        if (std::isnan(column(i))) column(i) = 0.0;
      }
      continue;
    }
    double sum = 0.0;
    double mass = 0.0;
    for (Eigen::Index i = 0; i < column.size(); ++i) {
      if (std::isnan(column(i))) continue;
      sum += weights(i) * column(i);
      mass += weights(i);
    }
    if (mass <= 0.0) {
      throw Error(ErrorClass::DegenerateData, "AllMissingColumn",
                  "column '" + info.name + "' has no observed value");
    }
    const double mean = sum / mass;
    for (Eigen::Index i = 0; i < column.size(); ++i) {
      if (std::isnan(column(i))) column(i) = mean;
    }
  }
  return out;
}

ContextualTable center_contextual(const ContextualTable& table, const Eigen::VectorXd& weights,
                                  const std::vector<bool>& standardize_columns) {
  check_weights(table, weights);
  if (table.has_missing()) {
    throw Error(ErrorClass::DegenerateData, "MissingValues", "impute missing values before centering");
  }
  if (standardize_columns.size() != static_cast<std::size_t>(table.values.cols())) {
    throw Error(ErrorClass::DegenerateData, "DimensionMismatch", "one standardize flag per column expected");
  }
  ContextualTable out = table;
  const double mass = weights.sum();
  for (Eigen::Index k = 0; k < out.values.cols(); ++k) {
    auto column = out.values.col(k);
    const double mean = weights.dot(column) / mass;
    column.array() -= mean;
    if (!standardize_columns[static_cast<std::size_t>(k)]) continue;
    const double var = weights.dot(column.cwiseAbs2()) / mass;
    if (var < 1e-14) {
      throw Error(ErrorClass::DegenerateData, "ZeroVariance",
                  "column '" + out.columns[static_cast<std::size_t>(k)].name +
                      "' has zero weighted variance and cannot be standardized");
    }
    column /= std::sqrt(var);
  }
  out.centered = true;
  return out;
}

ContextualTable center_contextual(const ContextualTable& table, const Eigen::VectorXd& weights) {
  return center_contextual(table, weights, table.standardize_flags());
}

}  // namespace galt
