#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace galt {

using CountMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor>;

struct TokenizerConfig {
  bool lowercase = true;
  // When false, only whitespace separates tokens and punctuation stays inside them.
  bool strip_punctuation = true;
  std::size_t min_token_chars = 1;
  std::string locale_hint;  // informational only

  void validate() const;
};

struct VocabularyFilter {
  std::set<std::string, std::less<>> stopwords;
  std::int64_t min_count = 1;  // per-sample occurrence threshold

  void validate() const;
};

// Respondents x words count table of one sample.
//
// Invariants: every row sum >= 1, every column sum >= the filter's
// min_count, no duplicate words, grand_total() == sum of all counts.
class LexicalTable {
 public:
  LexicalTable(std::vector<std::string> respondent_ids, std::vector<std::string> words,
               CountMatrix counts);

  const std::vector<std::string>& respondent_ids() const noexcept { return ids_; }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const CountMatrix& counts() const noexcept { return counts_; }

  Eigen::Index respondent_count() const noexcept { return counts_.rows(); }
  Eigen::Index word_count() const noexcept { return counts_.cols(); }
  std::int64_t grand_total() const noexcept { return total_; }

  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> column_sums() const;

  // counts / N as a dense matrix.
  Eigen::MatrixXd proportions() const;

  // One token list per respondent that rebuilds exactly this table.
  std::vector<std::vector<std::string>> token_lists() const;

  // Copy with every count multiplied by `factor` (> 0).
  LexicalTable scaled(std::int64_t factor) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> words_;
  CountMatrix counts_;
  std::int64_t total_ = 0;
};

struct WeightVectors {
  Eigen::VectorXd respondent;  // diagonal of D_l
  Eigen::VectorXd word;        // diagonal of M_l
};

std::vector<std::string> tokenize(std::string_view raw_text, const TokenizerConfig& cfg = {});

// Filters in a fixed order: stopwords, then words below min_count, then
// respondents left without any word. Words are ordered by UTF-8 byte order.
// Throws Error{DegenerateData, "AllRowsEmpty"} when nothing survives.
LexicalTable build_lexical_table(std::span<const std::string> respondent_ids,
                                 std::span<const std::vector<std::string>> token_lists,
                                 const VocabularyFilter& filter);

// Same, with respondents numbered "1", "2", ...
LexicalTable build_lexical_table(std::span<const std::vector<std::string>> token_lists,
                                 const VocabularyFilter& filter);

WeightVectors compute_weights(const LexicalTable& table);

// One surface form per line; blank lines and '#' comments ignored.
std::set<std::string, std::less<>> parse_stopwords(std::istream& in);
std::set<std::string, std::less<>> read_stopwords(const std::filesystem::path& path);

struct Responses {
  std::vector<std::string> ids;
  std::vector<std::string> texts;
};

// Reads an `id,text` CSV. Throws Error{Io, ...} on malformed input or duplicate ids.
Responses read_responses(const std::filesystem::path& path);

}  // namespace galt
