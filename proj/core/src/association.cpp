#include "galt/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "galt/error.hpp"

namespace galt {

namespace {

// Unbiased integer in [0, range) from a 64-bit generator, by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % range;
}

std::mt19937_64 replicate_generator(std::uint64_t seed, std::uint64_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32)};
  return std::mt19937_64(seq);
}

// Between-group sum of squares from group sums; SST is permutation invariant.
double between_ss(std::span<const Eigen::Index> word, std::span<const double> score,
                  std::span<const double> group_n, std::vector<double>& sums) {
  std::fill(sums.begin(), sums.end(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    sums[static_cast<std::size_t>(word[i])] += score[i];
    total += score[i];
  }
  double ssb = 0.0;
  for (std::size_t g = 0; g < sums.size(); ++g) {
    if (group_n[g] > 0) ssb += sums[g] * sums[g] / group_n[g];
  }
  return ssb - total * total / static_cast<double>(word.size());
}

}  // namespace

std::string_view to_string(AssociationMethod m) noexcept {
  return m == AssociationMethod::Chi2 ? "chi2" : "permutation_anova";
}

OccurrenceTable build_occurrence_table(const LexicalTable& lex, std::span<const double> scores) {
  if (static_cast<Eigen::Index>(scores.size()) != lex.respondent_count()) {
    throw Error(ErrorClass::DegenerateData, "Misalignment", "one score per respondent is required");
  }
  OccurrenceTable occ;
  occ.word_count = lex.word_count();
  occ.word.reserve(static_cast<std::size_t>(lex.grand_total()));
  occ.score.reserve(static_cast<std::size_t>(lex.grand_total()));
  const auto& counts = lex.counts();
  for (Eigen::Index i = 0; i < counts.outerSize(); ++i) {
    const double s = scores[static_cast<std::size_t>(i)];
    if (std::isnan(s)) {
      throw Error(ErrorClass::DegenerateData, "MissingValues", "scores must be imputed first");
    }
    for (CountMatrix::InnerIterator it(counts, i); it; ++it) {
      for (std::int64_t c = 0; c < it.value(); ++c) {
        occ.word.push_back(it.col());
        occ.score.push_back(s);
      }
    }
  }
  return occ;
}

double correlation_ratio(const OccurrenceTable& occ) {
  // Welford per group, so identical scores give an exactly zero within-group
  // sum of squares.
  std::vector<double> mean(static_cast<std::size_t>(occ.word_count), 0.0);
  std::vector<double> m2(mean.size(), 0.0);
  std::vector<double> n(mean.size(), 0.0);
  double all_mean = 0.0;
  double all_m2 = 0.0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const auto g = static_cast<std::size_t>(occ.word[i]);
    const double x = occ.score[i];
    n[g] += 1.0;
    const double d = x - mean[g];
    mean[g] += d / n[g];
    m2[g] += d * (x - mean[g]);
    const double da = x - all_mean;
    all_mean += da / static_cast<double>(i + 1);
    all_m2 += da * (x - all_mean);
  }
  if (all_m2 <= 0.0) return 0.0;
  double within = 0.0;
  for (double v : m2) within += v;
  return std::clamp(1.0 - within / all_m2, 0.0, 1.0);
}

AssociationReport anova_association(const OccurrenceTable& occ, const PermutationOptions& options) {
  if (options.n_permutations < 99) {
    throw Error(ErrorClass::Config, "TooFewPermutations", "n_permutations must be at least 99");
  }
  const std::set<Eigen::Index> words(occ.word.begin(), occ.word.end());
  const std::set<double> scores(occ.score.begin(), occ.score.end());
  if (words.size() < 2 || scores.size() < 2) {
    throw Error(ErrorClass::DegenerateData, "DegenerateGroups",
                "the Anova needs at least two distinct words and two distinct scores");
  }

  std::vector<double> group_n(static_cast<std::size_t>(occ.word_count), 0.0);
  for (auto w : occ.word) group_n[static_cast<std::size_t>(w)] += 1.0;

  AssociationReport report;
  report.method = AssociationMethod::PermutationAnova;
  report.ratio = correlation_ratio(occ);
  report.n_permutations = options.n_permutations;
  report.seed = options.seed;
  report.occurrences = occ.size();

  std::vector<double> sums(group_n.size());
  const double observed = between_ss(occ.word, occ.score, group_n, sums);
  double sst = 0.0;
  {
    const double mean = std::accumulate(occ.score.begin(), occ.score.end(), 0.0) / static_cast<double>(occ.size());
    for (double s : occ.score) sst += (s - mean) * (s - mean);
  }
  const double tie = 1e-12 * sst;

  const std::size_t n_perm = options.n_permutations;
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n_perm)));
  std::vector<std::size_t> exceed(threads, 0);
  auto work = [&](unsigned t) {
    std::vector<double> shuffled = occ.score;
    std::vector<double> local_sums(group_n.size());
    for (std::size_t r = t; r < n_perm; r += threads) {
      // Each replicate starts from the original order so it depends only on r.
      std::copy(occ.score.begin(), occ.score.end(), shuffled.begin());
      auto rng = replicate_generator(options.seed, r);
      for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
        std::swap(shuffled[i], shuffled[bounded(rng, i + 1)]);
      }
      if (between_ss(occ.word, shuffled, group_n, local_sums) >= observed - tie) ++exceed[t];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  std::size_t total_exceed = 0;
  for (auto e : exceed) total_exceed += e;
  report.p_value = static_cast<double>(1 + total_exceed) / static_cast<double>(1 + n_perm);

  const double groups = static_cast<double>(words.size());
  const double n = static_cast<double>(occ.size());
  report.df = static_cast<std::int64_t>(groups) - 1;
  if (n > groups) {
    const double ssw = std::max(sst - observed, 0.0);
    if (ssw <= tie) {
      report.p_approx = 0.0;
    } else {
      const double f = (observed / (groups - 1.0)) / (ssw / (n - groups));
      boost::math::fisher_f_distribution<double> dist(groups - 1.0, n - groups);
      report.p_approx = boost::math::cdf(boost::math::complement(dist, std::max(f, 0.0)));
    }
  }
  return report;
}

double chi2_upper_tail(double statistic, double df) {
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

AssociationReport chi2_test(const Eigen::MatrixXd& table) {
  if (table.rows() < 2 || table.cols() < 2) {
    throw Error(ErrorClass::DegenerateData, "DegenerateMargin",
                "chi-square test needs at least two words and two categories");
  }
  const Eigen::VectorXd rows = table.rowwise().sum();
  const Eigen::RowVectorXd cols = table.colwise().sum();
  if (!(rows.minCoeff() > 0.0) || !(cols.minCoeff() > 0.0)) {
    throw Error(ErrorClass::DegenerateData, "DegenerateMargin", "every marginal total must be positive");
  }
  const double total = rows.sum();
  const Eigen::MatrixXd expected = rows * cols / total;
  const double stat = ((table - expected).cwiseAbs2().array() / expected.array()).sum();

  AssociationReport report;
  report.method = AssociationMethod::Chi2;
  report.ratio = stat;
  report.df = static_cast<std::int64_t>((table.rows() - 1) * (table.cols() - 1));
  report.p_value = chi2_upper_tail(stat, static_cast<double>(*report.df));
  report.occurrences = static_cast<std::size_t>(std::llround(total));
  return report;
}

Eigen::MatrixXd aggregate_by_category(const LexicalTable& lex,
                                      std::span<const std::optional<std::string>> assignments,
                                      std::span<const std::string> categories) {
  if (static_cast<Eigen::Index>(assignments.size()) != lex.respondent_count()) {
    throw Error(ErrorClass::DegenerateData, "Misalignment", "one category assignment per respondent is required");
  }
  Eigen::MatrixXd alt = Eigen::MatrixXd::Zero(lex.word_count(), static_cast<Eigen::Index>(categories.size()));
  const auto& counts = lex.counts();
  for (Eigen::Index i = 0; i < counts.outerSize(); ++i) {
    const auto& label = assignments[static_cast<std::size_t>(i)];
    if (!label) continue;
    const auto it = std::find(categories.begin(), categories.end(), *label);
    if (it == categories.end()) {
      throw Error(ErrorClass::Io, "UnknownCategory", "category '" + *label + "' is not declared");
    }
    for (CountMatrix::InnerIterator e(counts, i); e; ++e) {
      alt(e.col(), it - categories.begin()) += static_cast<double>(e.value());
    }
  }
  return alt;
}

AssociationReport chi2_association(const LexicalTable& lex,
                                   std::span<const std::optional<std::string>> assignments,
                                   std::span<const std::string> categories) {
  const Eigen::MatrixXd alt = aggregate_by_category(lex, assignments, categories);
  std::vector<Eigen::Index> keep_rows;
  std::vector<Eigen::Index> keep_cols;
  for (Eigen::Index j = 0; j < alt.rows(); ++j) {
    if (alt.row(j).sum() > 0.0) keep_rows.push_back(j);
  }
  for (Eigen::Index k = 0; k < alt.cols(); ++k) {
    if (alt.col(k).sum() > 0.0) keep_cols.push_back(k);
  }
  return chi2_test(alt(keep_rows, keep_cols));
}

}  // namespace galt
