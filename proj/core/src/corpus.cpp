#include "galt/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include "galt/csv.hpp"
#include "galt/error.hpp"
#include "galt/unicode.hpp"

namespace galt {

void TokenizerConfig::validate() const {
  if (min_token_chars < 1) {
    throw Error(ErrorClass::Config, "InvalidTokenizer", "min_token_chars must be >= 1");
  }
}

void VocabularyFilter::validate() const {
  if (min_count < 1) {
    throw Error(ErrorClass::Config, "InvalidFilter", "min_count must be >= 1");
  }
}

LexicalTable::LexicalTable(std::vector<std::string> respondent_ids, std::vector<std::string> words,
                           CountMatrix counts)
    : ids_(std::move(respondent_ids)), words_(std::move(words)), counts_(std::move(counts)) {
  if (static_cast<Eigen::Index>(ids_.size()) != counts_.rows() ||
      static_cast<Eigen::Index>(words_.size()) != counts_.cols()) {
    throw Error(ErrorClass::DegenerateData, "DimensionMismatch",
                "lexical table labels do not match the count matrix shape");
  }
  counts_.makeCompressed();
  std::unordered_set<std::string_view> seen;
  for (const auto& w : words_) {
    if (!seen.insert(w).second) {
      throw Error(ErrorClass::DegenerateData, "DuplicateWord", "duplicate word '" + w + "'");
    }
  }
  for (Eigen::Index k = 0; k < counts_.nonZeros(); ++k) {
    if (counts_.valuePtr()[k] < 0) {
      throw Error(ErrorClass::DegenerateData, "NegativeCount", "lexical counts must be >= 0");
    }
    total_ += counts_.valuePtr()[k];
  }
  for (auto s : row_sums()) {
    if (s < 1) throw Error(ErrorClass::DegenerateData, "EmptyRespondent", "respondent without words");
  }
  for (auto s : column_sums()) {
    if (s < 1) throw Error(ErrorClass::DegenerateData, "EmptyWord", "word without occurrences");
  }
}

std::vector<std::int64_t> LexicalTable::row_sums() const {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(counts_.rows()), 0);
  for (Eigen::Index i = 0; i < counts_.outerSize(); ++i) {
    for (CountMatrix::InnerIterator it(counts_, i); it; ++it) sums[static_cast<std::size_t>(i)] += it.value();
  }
  return sums;
}

std::vector<std::int64_t> LexicalTable::column_sums() const {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(counts_.cols()), 0);
  for (Eigen::Index i = 0; i < counts_.outerSize(); ++i) {
    for (CountMatrix::InnerIterator it(counts_, i); it; ++it) {
      sums[static_cast<std::size_t>(it.col())] += it.value();
    }
  }
  return sums;
}

Eigen::MatrixXd LexicalTable::proportions() const {
  Eigen::MatrixXd p = Eigen::MatrixXd(counts_.cast<double>());
  return p / static_cast<double>(total_);
}

std::vector<std::vector<std::string>> LexicalTable::token_lists() const {
  std::vector<std::vector<std::string>> lists(ids_.size());
  for (Eigen::Index i = 0; i < counts_.outerSize(); ++i) {
    for (CountMatrix::InnerIterator it(counts_, i); it; ++it) {
      for (std::int64_t c = 0; c < it.value(); ++c) {
        lists[static_cast<std::size_t>(i)].push_back(words_[static_cast<std::size_t>(it.col())]);
      }
    }
  }
  return lists;
}

LexicalTable LexicalTable::scaled(std::int64_t factor) const {
  if (factor < 1) {
    throw Error(ErrorClass::Config, "InvalidFactor", "scale factor must be a positive integer");
  }
  CountMatrix c = counts_ * factor;
  return LexicalTable(ids_, words_, std::move(c));
}

std::vector<std::string> tokenize(std::string_view raw_text, const TokenizerConfig& cfg) {
  cfg.validate();
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (current.size() >= cfg.min_token_chars) tokens.push_back(unicode::encode_utf8(current));
    current.clear();
  };
  for (char32_t cp : unicode::decode_utf8(raw_text)) {
    const bool separator = cfg.strip_punctuation ? !unicode::is_word_char(cp) : unicode::is_space(cp);
    if (separator) {
      flush();
      continue;
    }
    current.push_back(cfg.lowercase ? unicode::to_lower(cp) : cp);
  }
  flush();
  return tokens;
}

LexicalTable build_lexical_table(std::span<const std::string> respondent_ids,
                                 std::span<const std::vector<std::string>> token_lists,
                                 const VocabularyFilter& filter) {
  filter.validate();
  if (token_lists.empty()) {
    throw Error(ErrorClass::DegenerateData, "NoRespondents", "at least one respondent is required");
  }
  if (respondent_ids.size() != token_lists.size()) {
    throw Error(ErrorClass::DegenerateData, "DimensionMismatch",
                "respondent id count differs from token list count");
  }

  std::map<std::string, std::int64_t, std::less<>> totals;
  for (const auto& tokens : token_lists) {
    for (const auto& t : tokens) {
      if (!filter.stopwords.contains(t)) ++totals[t];
    }
  }
  std::map<std::string_view, Eigen::Index> word_index;
  std::vector<std::string> words;
  for (const auto& [w, n] : totals) {
    if (n >= filter.min_count) {
      word_index.emplace(w, static_cast<Eigen::Index>(words.size()));
      words.push_back(w);
    }
  }

  std::vector<std::string> kept_ids;
  std::vector<Eigen::Triplet<std::int64_t>> triplets;
  for (std::size_t r = 0; r < token_lists.size(); ++r) {
    std::map<Eigen::Index, std::int64_t> row;
    for (const auto& t : token_lists[r]) {
      if (auto it = word_index.find(t); it != word_index.end()) ++row[it->second];
    }
    if (row.empty()) continue;
    const auto i = static_cast<Eigen::Index>(kept_ids.size());
    for (const auto& [j, c] : row) triplets.emplace_back(i, j, c);
    kept_ids.push_back(respondent_ids[r]);
  }
  if (kept_ids.empty()) {
    throw Error(ErrorClass::DegenerateData, "AllRowsEmpty",
                "vocabulary filtering left no respondent; thresholds too aggressive");
  }

  CountMatrix counts(static_cast<Eigen::Index>(kept_ids.size()), static_cast<Eigen::Index>(words.size()));
  counts.setFromTriplets(triplets.begin(), triplets.end());
  return LexicalTable(std::move(kept_ids), std::move(words), std::move(counts));
}

LexicalTable build_lexical_table(std::span<const std::vector<std::string>> token_lists,
                                 const VocabularyFilter& filter) {
  std::vector<std::string> ids;
  ids.reserve(token_lists.size());
  for (std::size_t i = 0; i < token_lists.size(); ++i) ids.push_back(std::to_string(i + 1));
  return build_lexical_table(ids, token_lists, filter);
}

WeightVectors compute_weights(const LexicalTable& table) {
  const auto n = static_cast<double>(table.grand_total());
  WeightVectors w;
  const auto rows = table.row_sums();
  const auto cols = table.column_sums();
  w.respondent.resize(static_cast<Eigen::Index>(rows.size()));
  w.word.resize(static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) w.respondent(static_cast<Eigen::Index>(i)) = static_cast<double>(rows[i]) / n;
  for (std::size_t j = 0; j < cols.size(); ++j) w.word(static_cast<Eigen::Index>(j)) = static_cast<double>(cols[j]) / n;
  return w;
}

std::set<std::string, std::less<>> parse_stopwords(std::istream& in) {
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return words;
}

std::set<std::string, std::less<>> read_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorClass::Io, "FileNotReadable", "cannot open '" + path.string() + "'");
  return parse_stopwords(in);
}

Responses read_responses(const std::filesystem::path& path) {
  const auto table = csv::read_file(path);
  const auto id_col = table.column("id");
  const auto text_col = table.column("text");
  Responses out;
  std::unordered_set<std::string> seen;
  for (const auto& row : table.rows) {
    if (!seen.insert(row[id_col]).second) {
      throw Error(ErrorClass::Io, "DuplicateId",
                  path.filename().string() + ": duplicate respondent id '" + row[id_col] + "'");
    }
    out.ids.push_back(row[id_col]);
    out.texts.push_back(row[text_col]);
  }
  return out;
}

}  // namespace galt
