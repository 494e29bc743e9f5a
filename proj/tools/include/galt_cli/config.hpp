#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "galt/context.hpp"
#include "galt/corpus.hpp"

namespace galt::cli {

struct SampleConfig {
  std::string name;
  std::string language;
  // As written in the config (reported in metadata) and resolved against
  // the config file's directory (used for reading).
  std::string responses_entry, scores_entry, stopwords_entry;
  std::filesystem::path responses, scores;
  std::optional<std::filesystem::path> stopwords;
  std::int64_t min_count = 1;
};

// A categorical variable kept out of the analysis and projected afterwards.
struct SupplementarySpec {
  std::string name;
  std::vector<std::string> categories;  // empty: every value found in the data
};

struct RunConfig {
  std::vector<SampleConfig> samples;
  TokenizerConfig tokenizer;
  std::vector<VariableSpec> variables;
  std::vector<SupplementarySpec> supplementary;
  Eigen::Index max_axes = 5;
  double rel_tol = 1e-10;
  std::size_t n_permutations = 999;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::filesystem::path output = "galt_out";
  bool plots = false;

  bool multi_sample() const noexcept { return samples.size() > 1; }
};

// Reads a JSON run configuration. Relative paths are taken from the config
// file's directory. Unknown keys are rejected so typos do not go unnoticed.
// Throws Error{Config, ...} for invalid content and Error{Io, ...} for
// unreadable or missing files.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace galt::cli
