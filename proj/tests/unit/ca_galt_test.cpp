#include <random>

#include <gtest/gtest.h>

#include "galt/association.hpp"
#include "galt/ca_galt.hpp"
#include "galt/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace galt;

namespace {

LexicalTable two_by_two() {
  CountMatrix counts(2, 2);
  counts.insert(0, 0) = 1;
  counts.insert(1, 1) = 1;
  return LexicalTable({"1", "2"}, {"a", "b"}, counts);
}

ContextualTable single_column(const LexicalTable& lex, Eigen::VectorXd values, bool centered = true) {
  ContextualTable ctx;
  ctx.respondent_ids = lex.respondent_ids();
  ctx.specs = {{"x", VariableKind::Quantitative}};
  ctx.columns = {{"x", 0, {}}};
  ctx.values = values;
  ctx.centered = centered;
  return ctx;
}

std::vector<VariableSpec> quantitative_specs_for_test() { return {{"x", VariableKind::Quantitative}}; }

}  // namespace

TEST(BuildGalt, HandMatrixProduct) {
  const auto lex = two_by_two();
  const auto galt = build_galt(lex, single_column(lex, Eigen::Vector2d(1, -1)));
  EXPECT_DOUBLE_EQ(galt.values(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(galt.values(1, 0), -0.5);
  EXPECT_EQ(galt.sample_total, 2);
}

TEST(BuildGalt, ZeroContextGivesZeroTable) {
  const auto lex = two_by_two();
  EXPECT_TRUE(build_galt(lex, single_column(lex, Eigen::Vector2d::Zero())).values.isZero());
}

TEST(BuildGalt, DummiesReproduceAggregatedLexicalTable) {
  std::mt19937_64 rng(17);
  const auto inst = support::random_categorical(rng, 25, 8, 3);
  const Eigen::MatrixXd q = aggregate_table(inst.lex, inst.dummies.values);
  const Eigen::MatrixXd alt = aggregate_by_category(inst.lex, inst.labels, inst.categories);
  EXPECT_LT((q - alt / static_cast<double>(inst.lex.grand_total())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildGalt, RejectsMisalignedOrUncentered) {
  const auto lex = two_by_two();
  auto ctx = single_column(lex, Eigen::Vector2d(1, -1));
  ctx.respondent_ids = {"2", "1"};
  EXPECT_THROW(build_galt(lex, ctx), Error);
  EXPECT_THROW(build_galt(lex, single_column(lex, Eigen::Vector2d(1, -1), false)), Error);
}

TEST(CaGalt, SingleCategoricalVariableEqualsClassicalCa) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int cats = 2 + trial % 4;
    const auto inst = support::random_categorical(rng, 20 + trial, 6 + trial % 9, cats);
    const auto result = ca_galt(inst.lex, inst.centered);
    const auto oracle = support::classical_ca(aggregate_by_category(inst.lex, inst.labels, inst.categories));
    ASSERT_EQ(result.basis.size(), oracle.eigenvalues.size());
    for (Eigen::Index s = 0; s < oracle.eigenvalues.size(); ++s) {
      EXPECT_NEAR(result.basis.eigenvalues(s), oracle.eigenvalues(s), 1e-9);
    }
    const auto aligned = support::align_signs(result.word_coords, oracle.row_coords);
    EXPECT_LT((aligned - result.word_coords).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(CaGalt, SingleVariableCarriesAllInertiaOnOneAxis) {
  CountMatrix counts(3, 2);
  counts.insert(0, 0) = 2;
  counts.insert(1, 1) = 1;
  counts.insert(2, 0) = 1;
  counts.insert(2, 1) = 1;
  const LexicalTable lex({"1", "2", "3"}, {"a", "b"}, counts);
  RawTable raw{lex.respondent_ids(), {"x"}, {{"3"}, {"7"}, {"4"}}};
  const auto ctx = center_contextual(encode_contextual(raw, quantitative_specs_for_test()), compute_weights(lex).respondent);
  const auto result = ca_galt(lex, ctx);
  ASSERT_EQ(result.basis.size(), 1);
  EXPECT_NEAR(result.basis.eigenvalues(0), result.total_inertia, 1e-12);
}

TEST(CaGalt, SingleWordHasNoStructure) {
  CountMatrix counts(2, 1);
  counts.insert(0, 0) = 1;
  counts.insert(1, 0) = 3;
  const LexicalTable lex({"1", "2"}, {"a"}, counts);
  RawTable raw{lex.respondent_ids(), {"x"}, {{"1"}, {"5"}}};
  const auto ctx = center_contextual(encode_contextual(raw, quantitative_specs_for_test()), compute_weights(lex).respondent);
  try {
    ca_galt(lex, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "NoStructure");
  }
}

TEST(CaGalt, MatchesBruteForceEigenproblem) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lex = support::random_lexical(rng, 10, 6);
    const auto w = compute_weights(lex);
    const auto ctx = center_contextual(support::random_context(rng, lex, 3), w.respondent);
    const auto result = ca_galt(lex, ctx);
    const Eigen::MatrixXd c = ctx.values.transpose() * w.respondent.asDiagonal() * ctx.values;
    const Eigen::MatrixXd q = lex.proportions().transpose() * ctx.values;
    const auto oracle = support::brute_force_spectrum(q, w.word, w.word, c);
    ASSERT_EQ(result.basis.size(), oracle.size());
    for (Eigen::Index s = 0; s < oracle.size(); ++s) {
      EXPECT_NEAR(result.basis.eigenvalues(s), oracle(s), 1e-10 * std::max(1.0, oracle(0)));
    }
  }
}

TEST(CaGalt, QualityAndTransitionInvariants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto lex = support::random_lexical(rng, 15 + trial, 8);
    const auto ctx = center_contextual(support::random_context(rng, lex, 4), compute_weights(lex).respondent);
    const auto r = ca_galt(lex, ctx);
    for (Eigen::Index s = 0; s < r.basis.size(); ++s) EXPECT_NEAR(r.contributions.col(s).sum(), 100.0, 1e-8);
    EXPECT_LE(r.cos2.rowwise().sum().maxCoeff(), 1.0 + 1e-9);
    EXPECT_LE(r.variable_cos2.rowwise().sum().maxCoeff(), 1.0 + 1e-9);
    const Eigen::MatrixXd direct = r.basis.axes * r.basis.eigenvalues.cwiseSqrt().asDiagonal();
    EXPECT_LT((r.variable_coords - direct).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(r.inertia_share.sum(), 1.0, 1e-10);
  }
}

TEST(CaGalt, MetricOverrideIsUsed) {
  std::mt19937_64 rng(6);
  const auto lex = support::random_lexical(rng, 12, 6);
  const auto ctx = center_contextual(support::random_context(rng, lex, 3), compute_weights(lex).respondent);
  const auto metric = make_metric(Eigen::Matrix3d::Identity());
  const auto r = ca_galt(lex, ctx, {}, metric);
  EXPECT_EQ(r.basis.metric, metric);
  EXPECT_THROW(ca_galt(lex, ctx, {}, make_metric(Eigen::Matrix2d::Identity())), Error);
}
