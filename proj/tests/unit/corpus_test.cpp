#include "artist/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "artist/error.hpp"
#include "generators.hpp"

namespace artist {
namespace {

const std::string kTopic =
    R"({"record_type":"topic","topic_id":"t1","title":"T","levels":{"upper_secondary":["lang een","lang twee"],"primary":["kort een","kort twee"]}})";

Corpus load(const std::string& text) {
  std::istringstream in(text);
  return load_corpus(in);
}

std::string alignment(const std::string& topic, int c, int s) {
  return R"({"record_type":"alignment","topic_id":")" + topic +
         R"(","complex_level":"upper_secondary","simple_level":"primary","complex_idx":)" +
         std::to_string(c) + R"(,"simple_idx":)" + std::to_string(s) + "}";
}

template <typename E>
E expect_throw(const std::string& text) {
  try {
    load(text);
  } catch (const E& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error";
  throw std::logic_error("unreachable");
}

TEST(LoadCorpus, TopicsAndPairs) {
  const auto c = load(alignment("t1", 1, 0) + "\n\n" + kTopic + "\n" + alignment("t1", 0, 0) +
                      "\n");
  ASSERT_EQ(c.topics.size(), 1u);
  EXPECT_EQ(c.topics[0].title, "T");
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[0].complex_paragraph_idx, 0u);
  EXPECT_EQ(c.pairs[0].complex_text, "lang een");
  EXPECT_EQ(c.pairs[1].complex_text, "lang twee");
  EXPECT_EQ(c.pairs[1].simple_text, "kort een");
  ASSERT_NE(c.find("t1"), nullptr);
  EXPECT_EQ(c.find("t2"), nullptr);
}

TEST(LoadCorpus, DuplicateAlignmentsCollapse) {
  const auto c = load(kTopic + "\n" + alignment("t1", 0, 0) + "\n" + alignment("t1", 0, 0));
  EXPECT_EQ(c.pairs.size(), 1u);
}

TEST(LoadCorpus, ParseErrorNamesLine) {
  const auto e = expect_throw<ParseError>(kTopic + "\n" + alignment("t1", 0, 0) + "\n{kapot\n");
  EXPECT_EQ(e.line_no(), 3u);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  EXPECT_EQ(expect_throw<ParseError>(R"({"record_type":"iets"})").line_no(), 1u);
  EXPECT_EQ(expect_throw<ParseError>("[1,2]").line_no(), 1u);
  EXPECT_EQ(expect_throw<ParseError>(
                R"({"record_type":"topic","topic_id":"x","title":"","levels":{"hbo":["a"]}})")
                .line_no(),
            1u);
}

TEST(LoadCorpus, TypedErrors) {
  EXPECT_EQ(expect_throw<Error>(alignment("t9", 0, 0)).code(), ErrorCode::unknown_topic);
  EXPECT_EQ(expect_throw<Error>(kTopic + "\n" + kTopic).code(), ErrorCode::duplicate_topic);
  const auto range = expect_throw<Error>(kTopic + "\n" + alignment("t1", 2, 0));
  EXPECT_EQ(range.code(), ErrorCode::index_out_of_range);
  EXPECT_NE(std::string(range.what()).find("line 2"), std::string::npos);
}

TEST(LoadCorpus, MissingFileIsIoError) {
  try {
    load_corpus_file("/nonexistent/corpus.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_error);
  }
}

TEST(GetPairs, FiltersByLevels) {
  const auto c = load_corpus_file(std::string(ARTIST_SOURCE_DIR) +
                                  "/tests/data/fixture_corpus.jsonl");
  EXPECT_EQ(c.topics.size(), 5u);
  const auto pairs = get_pairs(c, Level::upper_secondary, Level::primary);
  EXPECT_FALSE(pairs.empty());
  for (const auto& p : pairs) {
    EXPECT_EQ(p.complex_level, Level::upper_secondary);
    EXPECT_EQ(p.simple_level, Level::primary);
  }
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(), pair_order));
  EXPECT_TRUE(get_pairs(c, Level::primary, Level::upper_secondary).empty());
}

TEST(Levels, RoundTrip) {
  for (auto l : {Level::primary, Level::lower_secondary, Level::upper_secondary})
    EXPECT_EQ(parse_level(to_string(l)), l);
  EXPECT_FALSE(parse_level("vwo"));
}

TEST(CorpusProperty, SaveLoadRoundTrip) {
  testing::Rng rng(301);
  for (int i = 0; i < 300; ++i) {
    const Corpus c = testing::random_corpus(rng);
    std::ostringstream out;
    save_corpus(out, c);
    std::istringstream in(out.str());
    ASSERT_EQ(load_corpus(in), c) << out.str();
  }
}

TEST(EvalResultsProperty, WriteLoadRoundTrip) {
  testing::Rng rng(307);
  for (int i = 0; i < 300; ++i) {
    EvalResults r;
    for (std::size_t k = testing::uniform(rng, 0, 6); k > 0; --k)
      r.rows.push_back(testing::random_eval_row(rng));
    for (std::size_t k = testing::uniform(rng, 0, 6); k > 0; --k)
      r.ratings.push_back(testing::random_rating(rng));
    std::ostringstream out;
    write_eval_results(out, r);
    std::istringstream in(out.str());
    ASSERT_EQ(load_eval_results(in), r) << out.str();
  }
}

TEST(EvalResults, FileAppendAndSave) {
  const auto dir = std::filesystem::temp_directory_path() / "artist_corpus_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "results.jsonl").string();
  std::filesystem::remove(path);
  RatingRecord r;
  r.topic_id = "t";
  r.backend_id = "b";
  r.simplicity = 3;
  r.fluency = 4;
  r.adequacy = 5;
  append_rating(path, r);
  append_rating(path, r);
  EXPECT_EQ(load_eval_results_file(path).ratings.size(), 2u);
  save_eval_results(path, {{"t", "b", EvalMetric::sari, 41.25}}, {r});
  const auto loaded = load_eval_results_file(path);
  ASSERT_EQ(loaded.rows.size(), 1u);
  EXPECT_EQ(loaded.rows[0].score, 41.25);
  EXPECT_EQ(loaded.ratings, std::vector<RatingRecord>{r});
  std::filesystem::remove_all(dir);
}

TEST(EvalResults, BadRecordNamesLine) {
  std::istringstream in("\n{\"record_type\":\"rating\",\"topic_id\":\"t\"}\n");
  try {
    load_eval_results(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line_no(), 2u);
  }
}

}  // namespace
}  // namespace artist
