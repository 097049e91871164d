#include <cmath>

#include <gtest/gtest.h>

#include "artist/error.hpp"
#include "artist/evalmetrics.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace artist {
namespace {

TokenList toks(std::string_view text) { return metric_tokens(text); }

TEST(ClippedPrecision, RepeatedWordIsClipped) {
  const auto m = clipped_ngram_precision(toks("the the the the the the the"),
                                         {toks("the cat is on the mat")}, 1);
  EXPECT_EQ(m, (NgramMatch{2, 7}));
}

TEST(ClippedPrecision, IdentityAndDisjoint) {
  const auto x = toks("a b c d e");
  for (int n = 1; n <= 5; ++n) {
    const auto m = clipped_ngram_precision(x, {x}, n);
    EXPECT_EQ(m.matched, m.total);
    EXPECT_EQ(m.total, static_cast<std::size_t>(6 - n));
  }
  EXPECT_EQ(clipped_ngram_precision(toks("a b"), {toks("c d")}, 1), (NgramMatch{0, 2}));
  EXPECT_EQ(clipped_ngram_precision(toks("a b"), {toks("a b")}, 3), (NgramMatch{0, 0}));
}

TEST(ClippedPrecision, MaxOverReferences) {
  const auto m = clipped_ngram_precision(toks("a a a"), {toks("a b"), toks("a a c")}, 1);
  EXPECT_EQ(m, (NgramMatch{2, 3}));
}

TEST(BrevityPenalty, Values) {
  EXPECT_EQ(brevity_penalty(6, 6), 1.0);
  EXPECT_EQ(brevity_penalty(7, 6), 1.0);
  EXPECT_NEAR(brevity_penalty(5, 6), std::exp(1.0 - 6.0 / 5.0), 1e-15);
  EXPECT_EQ(closest_reference_length(5, {toks("a b c d"), toks("a b c d e f")}), 4u);
  EXPECT_EQ(closest_reference_length(5, {toks("a b c d e f"), toks("a b c d")}), 4u);
  EXPECT_EQ(closest_reference_length(5, {toks("a b c d e f g"), toks("a b c d e f")}), 6u);
}

TEST(Bleu, IdentityIsExactlyOne) {
  for (const char* x : {"a", "a b", "De kat zit op de mat.", "x y z x y z x y z"})
    EXPECT_EQ(bleu(x, {x}), 1.0) << x;
}

TEST(Bleu, DisjointIsZero) { EXPECT_EQ(bleu("a b", {"c d"}), 0.0); }

TEST(Bleu, BrevityOnlyExample) {
  const double expected = std::exp(1.0 - 6.0 / 5.0);
  EXPECT_NEAR(bleu("the cat sat on the", {"the cat sat on the mat"}), expected, 1e-12);
  EXPECT_NEAR(expected, 0.81873, 1e-5);
}

TEST(Bleu, CaseFolding) {
  EXPECT_EQ(bleu("De Kat", {"de kat"}), 1.0);
  BleuOptions strict;
  strict.case_fold = false;
  EXPECT_EQ(bleu("De Kat", {"de kat"}, strict), 0.0);
}

TEST(Bleu, SmoothingOnlyTouchesZeroOrders) {
  BleuOptions smooth;
  smooth.smoothing = Smoothing::add_one_on_zero;
  // unigrams 2/3, bigrams 0/2 -> 1/3, trigram 0/1 -> 1/2
  const double expected = std::cbrt((2.0 / 3.0) * (1.0 / 3.0) * (1.0 / 2.0));
  EXPECT_NEAR(bleu("a x b", {"a y b"}, smooth), expected, 1e-12);
  EXPECT_EQ(bleu("a x b", {"a y b"}), 0.0);
}

TEST(Bleu, Errors) {
  try {
    bleu("", {"a"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_candidate);
  }
  try {
    bleu("a", std::vector<std::string>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_references);
  }
  BleuOptions bad;
  bad.max_n = 10;
  EXPECT_THROW(bleu("a", {"a"}, bad), Error);
  bad.max_n = 0;
  EXPECT_THROW(bleu("a", {"a"}, bad), Error);
}

TEST(BleuStats, PoolingSumsCounts) {
  auto a = bleu_stats(toks("a b c"), {toks("a b d")}, 2);
  const auto b = bleu_stats(toks("x y"), {toks("x y z")}, 2);
  a += b;
  EXPECT_EQ(a.orders[0], (NgramMatch{4, 5}));
  EXPECT_EQ(a.orders[1], (NgramMatch{2, 3}));
  EXPECT_EQ(a.candidate_length, 5u);
  EXPECT_EQ(a.reference_length, 6u);
}

TEST(BleuProperty, RangeIdentityAndReferenceMonotonicity) {
  testing::Rng rng(17);
  for (int i = 0; i < 3000; ++i) {
    const auto cand = testing::random_symbols(rng, 1, 9);
    std::vector<TokenList> refs = {testing::random_symbols(rng, 1, 9)};
    const double b = bleu(cand, refs);
    ASSERT_GE(b, 0.0);
    ASSERT_LE(b, 1.0);
    ASSERT_EQ(bleu(cand, {cand}), 1.0);
    for (int n = 1; n <= 4; ++n) {
      const auto before = clipped_ngram_precision(cand, refs, n);
      auto more = refs;
      more.push_back(testing::random_symbols(rng, 1, 9));
      const auto after = clipped_ngram_precision(cand, more, n);
      ASSERT_LE(before.matched, before.total);
      ASSERT_GE(after.matched, before.matched);
    }
    const auto s = bleu_stats(cand, refs, 4);
    const double bp = brevity_penalty(s.candidate_length, s.reference_length);
    ASSERT_LE(bp, 1.0);
    ASSERT_EQ(bp == 1.0, s.candidate_length >= s.reference_length);
  }
}

TEST(BleuProperty, MatchesOracleOnRandomInstances) {
  testing::Rng rng(23);
  for (int i = 0; i < 20000; ++i) {
    const auto cand = testing::random_symbols(rng, 1, 8);
    std::vector<TokenList> refs;
    const std::size_t n_refs = testing::uniform(rng, 1, 3);
    for (std::size_t r = 0; r < n_refs; ++r) refs.push_back(testing::random_symbols(rng, 1, 8));
    const int max_n = static_cast<int>(testing::uniform(rng, 1, 5));
    for (bool add_one : {false, true}) {
      BleuOptions opts;
      opts.max_n = max_n;
      opts.smoothing = add_one ? Smoothing::add_one_on_zero : Smoothing::none;
      ASSERT_NEAR(bleu(cand, refs, opts), oracle::bleu(cand, refs, max_n, add_one), 1e-12);
    }
  }
}

}  // namespace
}  // namespace artist
