#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "galt/corpus.hpp"

namespace galt {

// One row per word occurrence: the word and the citing respondent's score.
struct OccurrenceTable {
  std::vector<Eigen::Index> word;
  std::vector<double> score;
  Eigen::Index word_count = 0;

  std::size_t size() const noexcept { return word.size(); }
};

enum class AssociationMethod { Chi2, PermutationAnova };

std::string_view to_string(AssociationMethod m) noexcept;

struct AssociationReport {
  std::string variable;
  AssociationMethod method = AssociationMethod::PermutationAnova;
  // eta^2 for permutation_anova, the Pearson statistic for chi2.
  double ratio = 0.0;
  double p_value = 1.0;
  // F-test p-value, reported alongside the permutation p as an approximation.
  std::optional<double> p_approx;
  std::optional<std::int64_t> df;
  std::size_t n_permutations = 0;
  std::uint64_t seed = 0;
  std::size_t occurrences = 0;
};

// Respondent i citing word j c times contributes c rows (j, score_i).
OccurrenceTable build_occurrence_table(const LexicalTable& lex, std::span<const double> scores);

// Between-word share of the total sum of squares. Exactly 1 when every
// word's occurrences share a single score.
double correlation_ratio(const OccurrenceTable& occ);

struct PermutationOptions {
  std::size_t n_permutations = 999;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // results do not depend on this
};

// p = (1 + #{eta^2_perm >= eta^2_obs}) / (1 + n_permutations), scores
// reshuffled across occurrences. Replicate r draws from its own generator
// seeded by (seed, r). Throws Error{DegenerateData, "DegenerateGroups"}.
AssociationReport anova_association(const OccurrenceTable& occ, const PermutationOptions& options = {});

// Pearson chi-square on a contingency table with strictly positive margins.
// Throws Error{DegenerateData, "DegenerateMargin"}.
AssociationReport chi2_test(const Eigen::MatrixXd& table);

// Words x categories aggregated table. Respondents without a category are
// skipped; words or categories left without any count are dropped before
// testing.
Eigen::MatrixXd aggregate_by_category(const LexicalTable& lex,
                                      std::span<const std::optional<std::string>> assignments,
                                      std::span<const std::string> categories);

AssociationReport chi2_association(const LexicalTable& lex,
                                   std::span<const std::optional<std::string>> assignments,
                                   std::span<const std::string> categories);

// Upper tail of the chi-square distribution, Q(df/2, x/2).
double chi2_upper_tail(double statistic, double df);

}  // namespace galt
