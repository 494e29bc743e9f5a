#include "galt/ca_galt.hpp"

#include "galt/error.hpp"

namespace galt {

Eigen::MatrixXd aggregate_table(const LexicalTable& lex, const Eigen::MatrixXd& x) {
  if (x.rows() != lex.respondent_count()) {
    throw Error(ErrorClass::DegenerateData, "Misalignment", "contextual rows do not match the lexical table");
  }
  const Eigen::SparseMatrix<double, Eigen::RowMajor> p =
      lex.counts().cast<double>() / static_cast<double>(lex.grand_total());
  return p.transpose() * x;
}

Galt build_galt(const LexicalTable& lex, const ContextualTable& ctx) {
  if (lex.respondent_ids() != ctx.respondent_ids) {
    throw Error(ErrorClass::DegenerateData, "Misalignment",
                "lexical and contextual tables list different respondents");
  }
  if (!ctx.centered) {
    throw Error(ErrorClass::DegenerateData, "NotCentered", "contextual table must be centered");
  }
  const auto weights = compute_weights(lex);
  Galt galt;
  galt.sample_total = lex.grand_total();
  galt.word_weights = weights.word;
  galt.respondent_weights = weights.respondent;
  galt.values = aggregate_table(lex, ctx.values);
  return galt;
}

Eigen::MatrixXd weighted_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& weights) {
  Eigen::MatrixXd c = x.transpose() * weights.asDiagonal() * x;
  return 0.5 * (c + c.transpose());
}

CaGaltResult analyze_standardized(StandardizedTable z, const AnalysisOptions& options) {
  auto basis = generalized_pca(z, options.max_axes);
  if (basis.size() == 0) {
    throw Error(ErrorClass::DegenerateData, "NoStructure", "the table has zero inertia");
  }
  Eigen::MatrixXd f = row_factors(z, basis);
  Eigen::MatrixXd g = column_factors(z, f, basis.eigenvalues);
  auto quality = row_quality(z, f, basis.eigenvalues);
  Eigen::MatrixXd var_cos2 = column_cos2(z, g);
  const double inertia = z.total_inertia();
  Eigen::VectorXd share = basis.eigenvalues / inertia;
  return CaGaltResult{std::move(basis),
                      std::move(z),
                      std::move(f),
                      std::move(g),
                      std::move(quality.contributions),
                      std::move(quality.cos2),
                      std::move(var_cos2),
                      inertia,
                      std::move(share)};
}

CaGaltResult ca_galt(const LexicalTable& lex, const ContextualTable& ctx, const AnalysisOptions& options,
                     MetricPtr metric_override) {
  const Galt galt = build_galt(lex, ctx);
  MetricPtr metric = std::move(metric_override);
  if (!metric) {
    metric = make_metric(weighted_covariance(ctx.values, galt.respondent_weights), options.rel_tol);
  } else if (metric->size() != ctx.column_count()) {
    throw Error(ErrorClass::Numerical, "DimensionMismatch", "metric override has the wrong size");
  }
  Eigen::MatrixXd z = double_standardize(galt.values, galt.word_weights, *metric);
  return analyze_standardized(StandardizedTable(std::move(z), galt.word_weights, std::move(metric)), options);
}

}  // namespace galt
