#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace galt {

enum class VariableKind { Quantitative, Categorical };

struct VariableSpec {
  std::string name;
  VariableKind kind = VariableKind::Quantitative;
  bool standardize = false;            // quantitative only
  std::optional<double> invert_scale;  // store (max - x) instead of x
  std::vector<std::string> categories;  // categorical only, in column order

  void validate() const;
};

// Closed-question answers as read from disk: one row per respondent, empty
// cells are missing.
struct RawTable {
  std::vector<std::string> ids;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<std::string>>> cells;

  std::size_t column(std::string_view name) const;
};

RawTable read_raw_table(const std::filesystem::path& path);

// Rows of `raw` reordered to match `ids`. Throws Error{DegenerateData,
// "Misalignment"} when an id is absent.
RawTable select_rows(const RawTable& raw, std::span<const std::string> ids);

// Sorted distinct non-missing values of a column across several tables.
std::vector<std::string> distinct_values(std::span<const RawTable> tables, std::string_view column);

struct ColumnInfo {
  std::string name;       // variable name, or "variable=category" for indicators
  std::size_t variable;   // index into ContextualTable::specs
  std::string category;   // empty for quantitative columns
};

// Encoded contextual table X_l. NaN marks a missing cell.
struct ContextualTable {
  std::vector<std::string> respondent_ids;
  std::vector<ColumnInfo> columns;
  std::vector<VariableSpec> specs;
  Eigen::MatrixXd values;
  bool centered = false;

  Eigen::Index column_count() const noexcept { return values.cols(); }
  std::vector<std::string> column_names() const;
  bool has_missing() const;
  std::size_t missing_count() const;
  // One flag per encoded column, from the owning spec.
  std::vector<bool> standardize_flags() const;
};

ContextualTable encode_contextual(const RawTable& raw, std::span<const VariableSpec> specs);

// Missing quantitative cells take the weighted mean of the observed cells in
// their column; missing categorical cells become all-zero indicator rows.
ContextualTable impute_missing(const ContextualTable& table, const Eigen::VectorXd& weights);

// x <- x - sum_i d_i x_i per column, then divided by the weighted standard
// deviation where flagged.
ContextualTable center_contextual(const ContextualTable& table, const Eigen::VectorXd& weights,
                                  const std::vector<bool>& standardize_columns);
ContextualTable center_contextual(const ContextualTable& table, const Eigen::VectorXd& weights);

}  // namespace galt
