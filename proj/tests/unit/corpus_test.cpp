#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "galt/corpus.hpp"
#include "galt/csv.hpp"
#include "galt/error.hpp"
#include "galt/unicode.hpp"
#include "generators.hpp"

using namespace galt;

namespace {

std::vector<std::vector<std::string>> tokenize_all(const std::vector<std::string>& texts,
                                                   const TokenizerConfig& cfg = {}) {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : texts) out.push_back(tokenize(t, cfg));
  return out;
}

std::string error_name(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

}  // namespace

TEST(Tokenize, SplitsOnWhitespaceAndPunctuation) {
  EXPECT_EQ(tokenize("Aire acondicionado!"), (std::vector<std::string>{"aire", "acondicionado"}));
}

TEST(Tokenize, EmptyInputGivesNoTokens) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, SlashSeparatesTokens) {
  TokenizerConfig cfg;
  cfg.strip_punctuation = true;
  EXPECT_EQ(tokenize("A/C broken A/C", cfg), (std::vector<std::string>{"a", "c", "broken", "a", "c"}));
}

TEST(Tokenize, KeepsPunctuationWhenNotStripping) {
  TokenizerConfig cfg;
  cfg.strip_punctuation = false;
  EXPECT_EQ(tokenize("A/C broken", cfg), (std::vector<std::string>{"a/c", "broken"}));
}

TEST(Tokenize, LowercasesAccentedLatinGreekCyrillic) {
  EXPECT_EQ(tokenize("CLIMATIZACIÓN Ñandú"), (std::vector<std::string>{"climatización", "ñandú"}));
  EXPECT_EQ(tokenize("ΚΑΛΗ Ночь"), (std::vector<std::string>{"καλη", "ночь"}));
  TokenizerConfig keep_case;
  keep_case.lowercase = false;
  EXPECT_EQ(tokenize("Frío", keep_case), (std::vector<std::string>{"Frío"}));
}

TEST(Tokenize, UnicodePunctuationAndSpacesSeparate) {
  EXPECT_EQ(tokenize("¿Limpieza? aseos—baños «cabina»"),
            (std::vector<std::string>{"limpieza", "aseos", "baños", "cabina"}));
  EXPECT_EQ(tokenize("東京、駅"), (std::vector<std::string>{"東京", "駅"}));
}

TEST(Tokenize, DropsShortTokens) {
  TokenizerConfig cfg;
  cfg.min_token_chars = 3;
  EXPECT_EQ(tokenize("a de las camas", cfg), (std::vector<std::string>{"las", "camas"}));
}

TEST(Tokenize, RejectsZeroMinimumLength) {
  TokenizerConfig cfg;
  cfg.min_token_chars = 0;
  EXPECT_EQ(error_name([&] { tokenize("x", cfg); }), "InvalidTokenizer");
}

TEST(Unicode, MalformedBytesBecomeReplacementCharacter) {
  const auto cps = unicode::decode_utf8("a\xC3(b\xE2\x82");
  EXPECT_EQ(cps, (std::u32string{U'a', 0xFFFD, U'(', U'b', 0xFFFD, 0xFFFD}));
  EXPECT_EQ(tokenize("ab\xFF" "cd"), (std::vector<std::string>{"ab", "cd"}));
}

TEST(BuildLexicalTable, ThresholdDropsWordsThenEmptyRows) {
  const auto tokens = tokenize_all({"a b", "b", "c"});
  VocabularyFilter filter;
  filter.min_count = 2;
  const auto table = build_lexical_table(tokens, filter);
  EXPECT_EQ(table.respondent_count(), 2);
  EXPECT_EQ(table.words(), (std::vector<std::string>{"b"}));
  EXPECT_EQ(table.respondent_ids(), (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(table.grand_total(), 2);
}

TEST(BuildLexicalTable, IdentityFilterKeepsRawCounts) {
  const auto tokens = tokenize_all({"x y x", "y z", "z"});
  const auto table = build_lexical_table(tokens, VocabularyFilter{});
  EXPECT_EQ(table.respondent_count(), 3);
  EXPECT_EQ(table.words(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(table.counts().coeff(0, 0), 2);
  EXPECT_EQ(table.grand_total(), 6);
}

TEST(BuildLexicalTable, StopwordsRemovedBeforeThreshold) {
  const auto tokens = tokenize_all({"the train the bed", "the bed", "train"});
  VocabularyFilter filter;
  filter.stopwords = {"the"};
  filter.min_count = 2;
  const auto table = build_lexical_table(tokens, filter);
  EXPECT_EQ(table.words(), (std::vector<std::string>{"bed", "train"}));
  EXPECT_EQ(table.grand_total(), 4);
}

TEST(BuildLexicalTable, AllRowsEmptyIsAnError) {
  const auto tokens = tokenize_all({"a", "b"});
  VocabularyFilter filter;
  filter.min_count = 5;
  EXPECT_EQ(error_name([&] { build_lexical_table(tokens, filter); }), "AllRowsEmpty");
  filter.min_count = 0;
  EXPECT_EQ(error_name([&] { build_lexical_table(tokens, filter); }), "InvalidFilter");
}

TEST(BuildLexicalTable, IdempotentOnItsOwnTokenLists) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tokens = tokenize_all({"a b c a", "b b d", "", "c d e", "e a", "f"});
    VocabularyFilter filter;
    filter.min_count = 2 + trial % 2;
    const auto first = build_lexical_table(tokens, filter);
    const auto again = build_lexical_table(first.respondent_ids(), first.token_lists(), filter);
    EXPECT_EQ(again.respondent_ids(), first.respondent_ids());
    EXPECT_EQ(again.words(), first.words());
    EXPECT_TRUE(Eigen::MatrixXd(again.counts().cast<double>()).isApprox(Eigen::MatrixXd(first.counts().cast<double>())));
  }
}

TEST(BuildLexicalTable, DroppingEmptyRespondentsKeepsWordCounts) {
  const auto with_empty = tokenize_all({"a b", "", "b c", "zz"});
  const auto without = tokenize_all({"a b", "b c"});
  VocabularyFilter filter;
  filter.min_count = 1;
  filter.stopwords = {"zz"};
  const auto t1 = build_lexical_table(with_empty, filter);
  const auto t2 = build_lexical_table(without, filter);
  EXPECT_EQ(t1.column_sums(), t2.column_sums());
  EXPECT_EQ(t1.respondent_ids(), (std::vector<std::string>{"1", "3"}));
}

TEST(LexicalTable, GrandTotalMatchesBothMargins) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto table = support::random_lexical(rng, 3 + trial % 17, 2 + trial % 11);
    std::int64_t rows = 0, cols = 0;
    for (auto v : table.row_sums()) rows += v;
    for (auto v : table.column_sums()) cols += v;
    EXPECT_EQ(rows, table.grand_total());
    EXPECT_EQ(cols, table.grand_total());
  }
}

TEST(LexicalTable, RejectsEmptyRowsAndDuplicateWords) {
  CountMatrix counts(2, 2);
  counts.insert(0, 0) = 1;
  counts.insert(0, 1) = 1;
  EXPECT_EQ(error_name([&] { LexicalTable({"1", "2"}, {"a", "b"}, counts); }), "EmptyRespondent");
  counts.insert(1, 1) = 1;
  EXPECT_EQ(error_name([&] { LexicalTable({"1", "2"}, {"a", "a"}, counts); }), "DuplicateWord");
}

TEST(ComputeWeights, HandArithmetic) {
  CountMatrix counts(2, 2);
  counts.insert(0, 0) = 1;
  counts.insert(0, 1) = 1;
  counts.insert(1, 0) = 2;
  const LexicalTable table({"1", "2"}, {"a", "b"}, counts);
  const auto w = compute_weights(table);
  EXPECT_DOUBLE_EQ(w.respondent(0), 0.5);
  EXPECT_DOUBLE_EQ(w.respondent(1), 0.5);
  EXPECT_DOUBLE_EQ(w.word(0), 0.75);
  EXPECT_DOUBLE_EQ(w.word(1), 0.25);
}

TEST(ComputeWeights, DegenerateSingleCell) {
  CountMatrix counts(1, 1);
  counts.insert(0, 0) = 7;
  const auto w = compute_weights(LexicalTable({"1"}, {"a"}, counts));
  EXPECT_DOUBLE_EQ(w.respondent(0), 1.0);
  EXPECT_DOUBLE_EQ(w.word(0), 1.0);
}

TEST(ComputeWeights, MarginsSumToOne) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = compute_weights(support::random_lexical(rng, 2 + trial % 40, 1 + trial % 25));
    EXPECT_NEAR(w.respondent.sum(), 1.0, 1e-14);
    EXPECT_NEAR(w.word.sum(), 1.0, 1e-14);
  }
}

TEST(Stopwords, CommentsAndBlankLinesIgnored) {
  std::istringstream in("# Spanish list\nde\n\n  la  \nlos # plural\n");
  const auto words = parse_stopwords(in);
  EXPECT_EQ(words, (std::set<std::string, std::less<>>{"de", "la", "los"}));
}

TEST(Csv, QuotedFieldsWithCommasQuotesAndNewlines) {
  const auto t = csv::parse("id,text\r\n1,\"hello, \"\"world\"\"\"\n2,\"two\nlines\"\n3,plain\n");
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0][1], "hello, \"world\"");
  EXPECT_EQ(t.rows[1][1], "two\nlines");
  EXPECT_EQ(t.rows[2][1], "plain");
}

TEST(Csv, MalformedInputsAreIoErrors) {
  for (const char* bad : {"id,text\n1,\"open\n", "id,text\n1,a,b\n", "id,text\n1,x\"y\n", ""}) {
    try {
      csv::parse(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.error_class(), ErrorClass::Io);
      EXPECT_EQ(e.name(), "MalformedCsv");
    }
  }
}

TEST(Csv, EscapeRoundTripsThroughParser) {
  std::mt19937_64 rng(5);
  const std::string alphabet = "ab,\"\n x";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> fields(3);
    for (auto& f : fields) {
      const int n = len(rng);
      for (int i = 0; i < n; ++i) f.push_back(alphabet[pick(rng)]);
    }
    const auto t = csv::parse("a,b,c\n" + csv::format_row(fields));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0], fields);
  }
}
