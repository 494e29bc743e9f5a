#pragma once

#include <optional>

#include <Eigen/Core>

#include "galt/context.hpp"
#include "galt/corpus.hpp"
#include "galt/numcore.hpp"

namespace galt {

// Generalized aggregated lexical table Q = P^T X (words x variables).
struct Galt {
  Eigen::MatrixXd values;
  Eigen::VectorXd word_weights;        // diagonal of M_l
  Eigen::VectorXd respondent_weights;  // diagonal of D_l
  std::int64_t sample_total = 0;       // N_l
};

// P^T X for any respondent-aligned matrix X.
Eigen::MatrixXd aggregate_table(const LexicalTable& lex, const Eigen::MatrixXd& x);

// Throws Error{DegenerateData, "Misalignment"} when respondent ids differ
// and Error{DegenerateData, "NotCentered"} for an uncentered context.
Galt build_galt(const LexicalTable& lex, const ContextualTable& ctx);

// C = X^T D X.
Eigen::MatrixXd weighted_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& weights);

struct AnalysisOptions {
  std::optional<Eigen::Index> max_axes;  // default: rank of C
  double rel_tol = kDefaultRelTol;
};

struct CaGaltResult {
  EigenBasis basis;
  StandardizedTable table;          // Z with word weights and metric C
  Eigen::MatrixXd word_coords;      // F, J x S
  Eigen::MatrixXd variable_coords;  // G, K x S
  Eigen::MatrixXd contributions;    // J x S, percent
  Eigen::MatrixXd cos2;             // J x S
  Eigen::MatrixXd variable_cos2;    // K x S
  double total_inertia = 0.0;
  Eigen::VectorXd inertia_share;    // lambda_s / total inertia
};

// PCA(Z, C, M) with Z = M^{-1} Q C^-. `metric_override` replaces
// C = X^T D X (used for the separate analyses of a multi-sample run).
CaGaltResult ca_galt(const LexicalTable& lex, const ContextualTable& ctx, const AnalysisOptions& options = {},
                     MetricPtr metric_override = nullptr);

// Runs the full factor extraction on an already standardized table.
CaGaltResult analyze_standardized(StandardizedTable z, const AnalysisOptions& options);

}  // namespace galt
