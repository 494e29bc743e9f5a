#include "galt/mfa_galt.hpp"

#include <cmath>

#include "galt/error.hpp"

namespace galt {

namespace {

void check_sample_index(const MfaGaltResult& result, std::size_t l) {
  if (l >= result.sample_count()) {
    throw Error(ErrorClass::Config, "UnknownSample", "no sample with index " + std::to_string(l));
  }
}

}  // namespace

MultiSample::MultiSample(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error(ErrorClass::Config, "TooFewSamples", "a multi-sample analysis needs at least two samples");
  }
  const auto columns = samples_.front().context.column_names();
  for (const auto& s : samples_) {
    if (s.context.column_names() != columns) {
      throw Error(ErrorClass::DegenerateData, "ColumnMismatch",
                  "sample '" + s.name + "' has different contextual columns");
    }
    if (s.lexical.respondent_ids() != s.context.respondent_ids) {
      throw Error(ErrorClass::DegenerateData, "Misalignment",
                  "sample '" + s.name + "': lexical and contextual respondents differ");
    }
    if (!s.context.centered) {
      throw Error(ErrorClass::DegenerateData, "NotCentered",
                  "sample '" + s.name + "': contextual table must be centered");
    }
    total_ += s.lexical.grand_total();
  }
}

double MultiSample::share(std::size_t l) const {
  return static_cast<double>(samples_.at(l).lexical.grand_total()) / static_cast<double>(total_);
}

StandardizedTable GlobalAssembly::block_table(std::size_t l) const {
  const auto& block = word_blocks.at(l);
  Eigen::VectorXd m = weights.word.segment(block.offset, block.size);
  Eigen::MatrixXd z = double_standardize(galt.middleRows(block.offset, block.size), m, *metric);
  return StandardizedTable(std::move(z), std::move(m), metric);
}

GlobalAssembly assemble_global(const MultiSample& samples, double rel_tol) {
  Eigen::Index respondents = 0;
  Eigen::Index words = 0;
  for (const auto& s : samples.samples()) {
    respondents += s.lexical.respondent_count();
    words += s.lexical.word_count();
  }
  const auto& first = samples.samples().front();
  const Eigen::Index k = first.context.column_count();

  GlobalAssembly out;
  out.variable_names = first.context.column_names();
  out.weights.respondent.resize(respondents);
  out.weights.word.resize(words);
  out.contextual.resize(respondents, k);
  out.galt.resize(words, k);

  Eigen::Index row = 0;
  Eigen::Index word = 0;
  for (std::size_t l = 0; l < samples.size(); ++l) {
    const auto& s = samples.samples()[l];
    const double share = samples.share(l);
    const Galt g = build_galt(s.lexical, s.context);
    const auto ni = s.lexical.respondent_count();
    const auto nj = s.lexical.word_count();

    out.sample_names.push_back(s.name);
    out.words.insert(out.words.end(), s.lexical.words().begin(), s.lexical.words().end());
    out.respondent_blocks.push_back({row, ni});
    out.word_blocks.push_back({word, nj});
    out.weights.respondent.segment(row, ni) = g.respondent_weights * share;
    out.weights.word.segment(word, nj) = g.word_weights * share;
    out.contextual.middleRows(row, ni) = s.context.values;
    out.galt.middleRows(word, nj) = g.values * share;
    row += ni;
    word += nj;
  }
  out.metric = make_metric(weighted_covariance(out.contextual, out.weights.respondent), rel_tol);
  return out;
}

std::vector<EigenBasis> separate_bases(const GlobalAssembly& assembly) {
  std::vector<EigenBasis> bases;
  for (std::size_t l = 0; l < assembly.word_blocks.size(); ++l) {
    auto basis = generalized_pca(assembly.block_table(l));
    if (basis.size() == 0 || basis.eigenvalues(0) < 1e-12) {
      throw Error(ErrorClass::DegenerateData, "DegenerateSample",
                  "sample '" + assembly.sample_names[l] + "' carries no inertia under the global metric");
    }
    bases.push_back(std::move(basis));
  }
  return bases;
}

std::vector<double> separate_analyses(const GlobalAssembly& assembly) {
  std::vector<double> first;
  for (const auto& b : separate_bases(assembly)) first.push_back(b.eigenvalues(0));
  return first;
}

MfaGaltResult mfa_galt(const MultiSample& samples, const AnalysisOptions& options) {
  return mfa_galt(assemble_global(samples, options.rel_tol), options);
}

MfaGaltResult mfa_galt(const GlobalAssembly& assembly, const AnalysisOptions& options) {
  auto separate = separate_bases(assembly);

  GlobalWeights weights = assembly.weights;
  weights.reweighted_word = weights.word;
  for (std::size_t l = 0; l < separate.size(); ++l) {
    const double lambda1 = separate[l].eigenvalues(0);
    weights.first_eigenvalues.push_back(lambda1);
    const auto& block = assembly.word_blocks[l];
    weights.reweighted_word.segment(block.offset, block.size) /= lambda1;
  }

  Eigen::MatrixXd z = double_standardize(assembly.galt, weights.word, *assembly.metric);
  auto core = analyze_standardized(StandardizedTable(std::move(z), weights.reweighted_word, assembly.metric),
                                   options);

  MfaGaltResult result{assembly.sample_names,
                       assembly.variable_names,
                       assembly.words,
                       assembly.word_blocks,
                       std::move(weights),
                       std::move(separate),
                       std::move(core.basis),
                       std::move(core.table),
                       std::move(core.word_coords),
                       std::move(core.variable_coords),
                       {},
                       {},
                       {},
                       std::move(core.contributions),
                       std::move(core.cos2),
                       std::move(core.variable_cos2),
                       core.total_inertia,
                       std::move(core.inertia_share)};
  for (std::size_t l = 0; l < result.sample_count(); ++l) {
    result.partial_coords.push_back(partial_column_factors(result, l));
  }
  result.group_coords = group_coordinates(result);
  result.rv = rv_matrix(result);
  return result;
}

Eigen::MatrixXd partial_column_factors(const MfaGaltResult& result, std::size_t l) {
  check_sample_index(result, l);
  const auto& block = result.word_blocks[l];
  return column_factors(result.table.values().middleRows(block.offset, block.size),
                        result.table.row_weights().segment(block.offset, block.size),
                        result.word_coords.middleRows(block.offset, block.size), result.basis.eigenvalues);
}

Eigen::MatrixXd set_cross_product(const MfaGaltResult& result, std::size_t l) {
  check_sample_index(result, l);
  const auto& block = result.word_blocks[l];
  const auto zl = result.table.values().middleRows(block.offset, block.size);
  const auto ml = result.table.row_weights().segment(block.offset, block.size);
  return zl.transpose() * ml.asDiagonal() * zl;
}

Eigen::MatrixXd group_coordinates(const MfaGaltResult& result, const Eigen::MatrixXd& axes) {
  const Eigen::MatrixXd& c = result.table.metric().values();
  const Eigen::MatrixXd cu = c * axes;
  Eigen::MatrixXd lg(static_cast<Eigen::Index>(result.sample_count()), axes.cols());
  for (std::size_t l = 0; l < result.sample_count(); ++l) {
    const Eigen::MatrixXd w = set_cross_product(result, l);
    lg.row(static_cast<Eigen::Index>(l)) = (cu.transpose() * w * cu).diagonal().transpose();
  }
  return lg;
}

Eigen::MatrixXd group_coordinates(const MfaGaltResult& result) {
  return group_coordinates(result, result.basis.axes);
}

Eigen::MatrixXd rv_matrix(const MfaGaltResult& result) {
  const auto n = static_cast<Eigen::Index>(result.sample_count());
  const Eigen::MatrixXd& c = result.table.metric().values();
  std::vector<Eigen::MatrixXd> wc;
  for (std::size_t l = 0; l < result.sample_count(); ++l) wc.push_back(set_cross_product(result, l) * c);

  Eigen::MatrixXd inner(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      // trace(A B) without forming the product.
      inner(a, b) = inner(b, a) =
          wc[static_cast<std::size_t>(a)].cwiseProduct(wc[static_cast<std::size_t>(b)].transpose()).sum();
    }
  }
  Eigen::MatrixXd rv = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double denom = std::sqrt(inner(a, a) * inner(b, b));
      rv(a, b) = rv(b, a) = denom > 0.0 ? inner(a, b) / denom : 0.0;
    }
  }
  return rv;
}

std::vector<double> balanced_first_eigenvalues(const MfaGaltResult& result) {
  std::vector<double> out;
  for (const auto& block : result.word_blocks) {
    StandardizedTable zl(result.table.values().middleRows(block.offset, block.size),
                         result.table.row_weights().segment(block.offset, block.size),
                         result.table.metric_ptr());
    const auto basis = generalized_pca(zl, 1);
    out.push_back(basis.size() ? basis.eigenvalues(0) : 0.0);
  }
  return out;
}

CategoryCoordinates category_centroids(const LexicalTable& lex, const Eigen::MatrixXd& word_coords,
                                       std::span<const std::optional<std::string>> assignments,
                                       std::span<const std::string> categories) {
  if (static_cast<Eigen::Index>(assignments.size()) != lex.respondent_count()) {
    throw Error(ErrorClass::DegenerateData, "Misalignment",
                "category assignments must cover every respondent of the sample");
  }
  if (word_coords.rows() != lex.word_count()) {
    throw Error(ErrorClass::DegenerateData, "DimensionMismatch", "word coordinates do not match the table");
  }
  CategoryCoordinates out;
  out.categories.assign(categories.begin(), categories.end());
  const auto ncat = static_cast<Eigen::Index>(categories.size());
  out.coords = Eigen::MatrixXd::Zero(ncat, word_coords.cols());
  out.occurrences.assign(categories.size(), 0);

  const auto& counts = lex.counts();
  for (Eigen::Index i = 0; i < counts.outerSize(); ++i) {
    const auto& label = assignments[static_cast<std::size_t>(i)];
    if (!label) continue;
    const auto it = std::find(categories.begin(), categories.end(), *label);
    if (it == categories.end()) {
      throw Error(ErrorClass::Io, "UnknownCategory", "category '" + *label + "' is not declared");
    }
    const auto c = it - categories.begin();
    for (CountMatrix::InnerIterator e(counts, i); e; ++e) {
      out.coords.row(c) += static_cast<double>(e.value()) * word_coords.row(e.col());
      out.occurrences[static_cast<std::size_t>(c)] += e.value();
    }
  }
  for (Eigen::Index c = 0; c < ncat; ++c) {
    const auto mass = out.occurrences[static_cast<std::size_t>(c)];
    if (mass == 0) {
      throw Error(ErrorClass::DegenerateData, "EmptyCategory",
                  "category '" + out.categories[static_cast<std::size_t>(c)] + "' has no occurrence");
    }
    out.coords.row(c) /= static_cast<double>(mass);
  }
  return out;
}

CategoryCoordinates project_supplementary_categories(const MfaGaltResult& result, std::size_t l,
                                                     const LexicalTable& lex,
                                                     std::span<const std::optional<std::string>> assignments,
                                                     std::span<const std::string> categories) {
  check_sample_index(result, l);
  const auto& block = result.word_blocks[l];
  if (block.size != lex.word_count()) {
    throw Error(ErrorClass::DegenerateData, "Misalignment", "lexical table does not match the sample's words");
  }
  return category_centroids(lex, result.word_coords.middleRows(block.offset, block.size), assignments,
                            categories);
}

}  // namespace galt
