#include <algorithm>

#include <gtest/gtest.h>

#include "artist/error.hpp"
#include "artist/evalmetrics.hpp"
#include "generators.hpp"

namespace artist {
namespace {

EvalSegment seg(std::string topic, std::string cand, std::string ref) {
  return {std::move(topic), "", std::move(cand), {std::move(ref)}};
}

TEST(CorpusBleuTable, IdentityPairScoresOne) {
  const auto t = corpus_bleu_table({seg("t1", "de kat zit", "de kat zit")}, "mock", {}, 5);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].score, 1.0);
  EXPECT_EQ(t.rows[0].backend_id, "mock");
  EXPECT_EQ(t.rows[0].metric, EvalMetric::bleu);
}

TEST(CorpusBleuTable, RanksAndTruncates) {
  BleuOptions unigram;
  unigram.max_n = 1;
  const std::vector<EvalSegment> segs = {
      seg("low", "a q r s t", "a b c d e"),     // 1/5
      seg("high", "a b c d x", "a b c d e"),    // 4/5
      seg("mid", "a b x y", "a b c d"),         // 2/4
  };
  const auto t = corpus_bleu_table(segs, "m", unigram, 2);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].topic_id, "high");
  EXPECT_NEAR(t.rows[0].score, 0.8, 1e-12);
  EXPECT_EQ(t.rows[1].topic_id, "mid");
  EXPECT_NEAR(t.rows[1].score, 0.5, 1e-12);
  EXPECT_EQ(corpus_bleu_table(segs, "m", unigram, 5).rows.size(), 3u);
}

TEST(CorpusBleuTable, TiesBreakByTopicId) {
  const std::vector<EvalSegment> segs = {seg("b", "x", "x"), seg("c", "y", "y"),
                                         seg("a", "z", "z")};
  const auto t = corpus_bleu_table(segs, "m", {}, 5);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0].topic_id, "a");
  EXPECT_EQ(t.rows[1].topic_id, "b");
  EXPECT_EQ(t.rows[2].topic_id, "c");
}

TEST(CorpusBleuTable, PooledVersusMeanOfPairs) {
  BleuOptions unigram;
  unigram.max_n = 1;
  const std::vector<EvalSegment> segs = {seg("t", "a b", "a b"), seg("t", "a b c d", "x y z w")};
  const auto pooled = corpus_bleu_table(segs, "m", unigram, 5, AggregationMode::pooled);
  const auto mean = corpus_bleu_table(segs, "m", unigram, 5, AggregationMode::mean_of_pairs);
  EXPECT_NEAR(pooled.rows[0].score, 2.0 / 6.0, 1e-12);
  EXPECT_NEAR(mean.rows[0].score, 0.5, 1e-12);
}

TEST(CorpusBleuTable, FailingTopicIsReportedNotRanked) {
  const std::vector<EvalSegment> segs = {seg("ok", "a b", "a b"), seg("bad", "", "a b")};
  const auto t = corpus_bleu_table(segs, "m", {}, 5);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].topic_id, "ok");
  EXPECT_EQ(t.failed, std::vector<std::string>{"bad"});
}

TEST(CorpusBleuTable, TopKMustBePositive) {
  EXPECT_THROW(corpus_bleu_table({seg("t", "a", "a")}, "m", {}, 0), Error);
}

TEST(CorpusSariTable, AveragesSegments) {
  const std::vector<EvalSegment> segs = {{"t", "a b c", "a b c", {"a b c"}},
                                         {"t", "a b c", "x y z", {"a b c"}}};
  const auto t = corpus_sari_table(segs, "m", 4, 5);
  ASSERT_EQ(t.rows.size(), 1u);
  const double expected =
      (100.0 + sari("a b c", "x y z", {"a b c"}).overall) / 2.0;
  EXPECT_NEAR(t.rows[0].score, expected, 1e-9);
  EXPECT_EQ(t.rows[0].metric, EvalMetric::sari);
}

TEST(RenderTable, ThreeDecimals) {
  const std::vector<CorpusEvalRow> rows = {{"anton_de_kom", "t5", EvalMetric::bleu, 0.1384},
                                           {"huygens", "t5", EvalMetric::bleu, 0.0805}};
  EXPECT_EQ(render_table_tsv(rows), "topic\tscore\nanton_de_kom\t0.138\nhuygens\t0.081\n");
  EXPECT_EQ(render_table_tsv({}), "topic\tscore\n");
}

TEST(RankRowsProperty, SortedAndDeterministic) {
  testing::Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    std::vector<CorpusEvalRow> rows(testing::uniform(rng, 0, 20));
    for (auto& r : rows) {
      r.topic_id = "t" + std::to_string(testing::uniform(rng, 0, 50));
      r.score = static_cast<double>(testing::uniform(rng, 0, 4)) / 4.0;
    }
    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::size_t k = testing::uniform(rng, 1, 25);
    rank_rows(rows, k);
    rank_rows(shuffled, k);
    ASSERT_EQ(rows, shuffled);
    ASSERT_LE(rows.size(), k);
    for (std::size_t j = 1; j < rows.size(); ++j) {
      ASSERT_GE(rows[j - 1].score, rows[j].score);
      if (rows[j - 1].score == rows[j].score) ASSERT_LE(rows[j - 1].topic_id, rows[j].topic_id);
    }
  }
}

RatingRecord rating(std::string topic, int s, int f, int a, std::string backend = "t5") {
  RatingRecord r;
  r.topic_id = std::move(topic);
  r.backend_id = std::move(backend);
  r.simplicity = s;
  r.fluency = f;
  r.adequacy = a;
  return r;
}

TEST(AggregateRatings, Means) {
  const auto m = aggregate_ratings({rating("t", 2, 2, 2), rating("t", 2, 2, 2)});
  const auto& means = m.at({"t", "t5"});
  EXPECT_EQ(means.simplicity, 2.0);
  EXPECT_EQ(means.fluency, 2.0);
  EXPECT_EQ(means.adequacy, 2.0);
  EXPECT_EQ(means.count, 2u);

  const auto m2 = aggregate_ratings({rating("t", 1, 1, 1), rating("t", 2, 3, 4)});
  EXPECT_EQ(m2.at({"t", "t5"}).simplicity, 1.5);
  EXPECT_EQ(m2.at({"t", "t5"}).fluency, 2.0);
  EXPECT_EQ(m2.at({"t", "t5"}).adequacy, 2.5);
}

TEST(AggregateRatings, GroupsByTopicAndBackend) {
  const auto m = aggregate_ratings(
      {rating("t", 1, 1, 1, "a"), rating("t", 5, 5, 5, "b"), rating("u", 3, 3, 3, "a")});
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m.at({"t", "b"}).simplicity, 5.0);
}

TEST(AggregateRatings, EmptyScope) {
  try {
    aggregate_ratings({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_scope);
  }
}

TEST(RatingRecord, RangeValidation) {
  EXPECT_NO_THROW(rating("t", 1, 5, 3).validate());
  EXPECT_THROW(rating("t", 6, 2, 2).validate(), Error);
  EXPECT_THROW(rating("t", 2, 0, 2).validate(), Error);
}

TEST(RoundDisplay, HalfUp) {
  EXPECT_EQ(round_display(1.25), 1.3);
  EXPECT_EQ(round_display(1.95), 2.0);
  EXPECT_EQ(round_display(1.8333333), 1.8);
  EXPECT_EQ(round_display(2.0), 2.0);
  EXPECT_EQ(round_display(1.35), 1.4);
}

}  // namespace
}  // namespace artist
