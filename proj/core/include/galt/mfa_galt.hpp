#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "galt/ca_galt.hpp"
#include "galt/context.hpp"
#include "galt/corpus.hpp"
#include "galt/numcore.hpp"

namespace galt {

struct Sample {
  std::string name;
  LexicalTable lexical;
  ContextualTable context;  // centered with the sample's own respondent weights
};

// L >= 2 aligned samples sharing the same contextual columns.
class MultiSample {
 public:
  explicit MultiSample(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::int64_t global_total() const noexcept { return total_; }
  // N_l / N
  double share(std::size_t l) const;

 private:
  std::vector<Sample> samples_;
  std::int64_t total_ = 0;
};

struct BlockRange {
  Eigen::Index offset = 0;
  Eigen::Index size = 0;
};

struct GlobalWeights {
  Eigen::VectorXd respondent;       // D, sums to 1
  Eigen::VectorXd word;             // M, sums to 1
  Eigen::VectorXd reweighted_word;  // M_lambda: block l of M divided by lambda_1^l
  std::vector<double> first_eigenvalues;
};

// Everything the separate and global analyses need, built once from the
// samples. Weight and GALT blocks are already resized by N_l / N.
struct GlobalAssembly {
  std::vector<std::string> sample_names;
  std::vector<std::string> variable_names;
  std::vector<std::string> words;
  GlobalWeights weights;  // reweighted_word and first_eigenvalues empty here
  MetricPtr metric;       // global C = X^T D X
  Eigen::MatrixXd contextual;  // X, I x K
  Eigen::MatrixXd galt;        // Q, J x K
  std::vector<BlockRange> word_blocks;
  std::vector<BlockRange> respondent_blocks;

  // Z_l = M_l^{-1} Q_l C^- with the block's (resized) word weights.
  StandardizedTable block_table(std::size_t l) const;
};

GlobalAssembly assemble_global(const MultiSample& samples, double rel_tol = kDefaultRelTol);

// PCA(Z_l, C, M_l) per sample under the global metric; returns the bases.
// Throws Error{DegenerateData, "DegenerateSample"} for a sample without inertia.
std::vector<EigenBasis> separate_bases(const GlobalAssembly& assembly);
std::vector<double> separate_analyses(const GlobalAssembly& assembly);

struct MfaGaltResult {
  std::vector<std::string> sample_names;
  std::vector<std::string> variable_names;
  std::vector<std::string> words;
  std::vector<BlockRange> word_blocks;
  GlobalWeights weights;
  std::vector<EigenBasis> separate;  // separate analyses, global metric
  EigenBasis basis;
  StandardizedTable table;           // Z with row weights M_lambda
  Eigen::MatrixXd word_coords;       // F, J x S
  Eigen::MatrixXd variable_coords;   // G, K x S
  std::vector<Eigen::MatrixXd> partial_coords;  // G^l, one K x S per sample
  Eigen::MatrixXd group_coords;      // Lg, L x S
  Eigen::MatrixXd rv;                // L x L
  Eigen::MatrixXd contributions;     // J x S, percent
  Eigen::MatrixXd cos2;              // J x S
  Eigen::MatrixXd variable_cos2;     // K x S
  double inertia_total = 0.0;
  Eigen::VectorXd inertia_share;

  std::size_t sample_count() const noexcept { return sample_names.size(); }
};

// Two-step analysis: separate CA-GALTs under the global metric, then
// PCA(Z, C, M_lambda) with word weights of set l divided by lambda_1^l.
// Z keeps the unbalanced row standardization M^{-1} Q C^-, so only the
// weights change between the two steps.
MfaGaltResult mfa_galt(const MultiSample& samples, const AnalysisOptions& options = {});
MfaGaltResult mfa_galt(const GlobalAssembly& assembly, const AnalysisOptions& options = {});

// G^l = Z~_l^T M_lambda F Lambda^{-1/2}; the G^l sum to G.
// Throws Error{Config, "UnknownSample"}.
Eigen::MatrixXd partial_column_factors(const MfaGaltResult& result, std::size_t l);

// W_l = Z_l^T M_lambda,l Z_l.
Eigen::MatrixXd set_cross_product(const MfaGaltResult& result, std::size_t l);

// Lg(l, u_s) = trace(W_l C u_s u_s^T C), for the global axes.
Eigen::MatrixXd group_coordinates(const MfaGaltResult& result);
// Same, for arbitrary C-normalized axes (K x S).
Eigen::MatrixXd group_coordinates(const MfaGaltResult& result, const Eigen::MatrixXd& axes);

// RV(l, m) on the matrices W_l C.
Eigen::MatrixXd rv_matrix(const MfaGaltResult& result);

// First eigenvalue of each set analysed alone with its balanced weights;
// 1 for every set by construction.
std::vector<double> balanced_first_eigenvalues(const MfaGaltResult& result);

struct CategoryCoordinates {
  std::vector<std::string> categories;
  Eigen::MatrixXd coords;                 // categories x S
  std::vector<std::int64_t> occurrences;  // mass behind each centroid
};

// Occurrence-weighted centroid of the word coordinates used by the
// respondents of each category. `assignments` has one entry per respondent;
// std::nullopt skips the respondent. Throws Error{DegenerateData,
// "EmptyCategory"} when a listed category has no occurrence.
CategoryCoordinates category_centroids(const LexicalTable& lex, const Eigen::MatrixXd& word_coords,
                                       std::span<const std::optional<std::string>> assignments,
                                       std::span<const std::string> categories);

CategoryCoordinates project_supplementary_categories(const MfaGaltResult& result, std::size_t l,
                                                     const LexicalTable& lex,
                                                     std::span<const std::optional<std::string>> assignments,
                                                     std::span<const std::string> categories);

}  // namespace galt
