#include "artist/diagnostics.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "artist/error.hpp"
#include "generators.hpp"

namespace artist {
namespace {

constexpr const char* kHuygensSource =
    "Christiaan Huygens wordt in 1629 geboren als tweede zoon van Suzanna van Baerle en "
    "Constantijn Huygens, dichter en secretaris van twee prinsen van Oranje.";
constexpr const char* kHuygensSimplified =
    "Hij wordt geboren als tweede zoon van Suzanna van Baerle. Hij was secretaris van twee "
    "prinsen van Oranje.";

std::size_t count(const std::vector<Finding>& fs, CheckId id) {
  return static_cast<std::size_t>(
      std::count_if(fs.begin(), fs.end(), [&](const Finding& f) { return f.check_id == id; }));
}

std::vector<std::string> values(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& n : extract_numbers(text)) out.push_back(n.value);
  return out;
}

TEST(ExtractNumbers, Examples) {
  EXPECT_EQ(values("in 1915."), std::vector<std::string>{"1915"});
  EXPECT_EQ(values("18e congres in 1915"), (std::vector<std::string>{"18", "1915"}));
  EXPECT_TRUE(values("geen cijfers").empty());
  EXPECT_EQ(values("16.000 jaar"), std::vector<std::string>{"16000"});
  const auto n = extract_numbers("in 1915 en 18e");
  ASSERT_EQ(n.size(), 2u);
  EXPECT_TRUE(n[0].is_year);
  EXPECT_FALSE(n[1].is_year);
  EXPECT_EQ(n[0].span, (Span{3, 7}));
}

TEST(NumberPreservation, YearMutation) {
  const std::string src = "... van het 18e Internationale Vrouwencongres in 1915.";
  const std::string simp = "... van het 18e Internationale Vrouwencongres in 2015.";
  const auto fs = check_number_preservation(src, simp);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].check_id, CheckId::number_mutation);
  EXPECT_EQ(fs[0].severity, Severity::error);
  ASSERT_TRUE(fs[0].source_span && fs[0].simplified_span);
  EXPECT_EQ(src.substr(fs[0].source_span->begin, fs[0].source_span->size()), "1915");
  EXPECT_EQ(simp.substr(fs[0].simplified_span->begin, fs[0].simplified_span->size()), "2015");
}

TEST(NumberPreservation, Identity) {
  EXPECT_TRUE(check_number_preservation("in 1915 en 1916", "in 1915 en 1916").empty());
}

TEST(NumberPreservation, Dropped) {
  const auto fs = check_number_preservation("in 1629 en later 1657", "in 1629");
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].check_id, CheckId::number_dropped);
  EXPECT_EQ(fs[0].severity, Severity::warning);
  EXPECT_NE(fs[0].message.find("1657"), std::string::npos);
}

TEST(NumberPreservation, DifferentMagnitudesDoNotPair) {
  const auto fs = check_number_preservation("in 1915", "in 15");
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].check_id, CheckId::number_mutation);
  EXPECT_EQ(fs[0].severity, Severity::warning);  // unpaired addition
  EXPECT_FALSE(fs[0].source_span);
  EXPECT_EQ(fs[1].check_id, CheckId::number_dropped);
}

TEST(NumberPreservation, SmallIntegersPair) {
  const auto fs = check_number_preservation("twaalf of 12 landen", "twaalf of 13 landen");
  EXPECT_EQ(count(fs, CheckId::number_mutation), 1u);
  EXPECT_EQ(fs.size(), 1u);
}

TEST(NumberPreservation, OrdinalAndPlainAreTheSameNumber) {
  EXPECT_TRUE(check_number_preservation("het 18e congres", "congres nummer 18").empty());
}

TEST(EntityRetention, HuygensDropped) {
  const auto fs = check_entity_retention(kHuygensSource, kHuygensSimplified);
  std::vector<std::string> dropped;
  for (const auto& f : fs) {
    ASSERT_EQ(f.check_id, CheckId::entity_dropped);
    ASSERT_TRUE(f.source_span);
    dropped.emplace_back(std::string(kHuygensSource).substr(f.source_span->begin,
                                                            f.source_span->size()));
  }
  EXPECT_NE(std::find(dropped.begin(), dropped.end(), "Constantijn Huygens"), dropped.end());
  EXPECT_NE(std::find(dropped.begin(), dropped.end(), "Christiaan Huygens"), dropped.end());
  EXPECT_EQ(std::find(dropped.begin(), dropped.end(), "Oranje"), dropped.end());
}

TEST(EntityRetention, OverlapKeepsEntity) {
  EXPECT_TRUE(check_entity_retention("Anton de Kom schreef.", "Anton de Kom schreef een boek.")
                  .empty());
  EXPECT_TRUE(check_entity_retention(kHuygensSource, kHuygensSource).empty());
}

TEST(EntityRetention, SentenceInitialWordIsNotAnEntity) {
  EXPECT_TRUE(check_entity_retention("Gisteren regende het.", "Het regende.").empty());
}

TEST(AcronymExpansion, Unexpanded) {
  const auto fs = check_acronym_expansion("De EEG is een douane-unie.");
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].check_id, CheckId::acronym_unexpanded);
  EXPECT_NE(fs[0].message.find("EEG"), std::string::npos);
}

TEST(AcronymExpansion, ExpandedBeforeFirstUse) {
  EXPECT_TRUE(check_acronym_expansion(
                  "De Europese Economische Gemeenschap (EEG) groeide. De EEG werd de EU.")
                  .size() == 1u);  // EU itself is unexpanded
  EXPECT_TRUE(check_acronym_expansion(
                  "De Europese Economische Gemeenschap (EEG) groeide. Later groeide de EEG.")
                  .empty());
}

TEST(AcronymExpansion, ExpandedAfterFirstUse) {
  EXPECT_TRUE(check_acronym_expansion("De EEG (Europese Economische Gemeenschap) groeide.")
                  .empty());
}

TEST(AcronymExpansion, OnlyFirstUseCounts) {
  EXPECT_EQ(check_acronym_expansion("De NAVO en de NAVO en de NAVO.").size(), 1u);
  EXPECT_TRUE(check_acronym_expansion("de kat zit op de mat").empty());
}

std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += i == 0 ? "Woord" : " woord";
  return s + ".";
}

TEST(SentenceLength, Threshold) {
  EXPECT_EQ(check_sentence_length(words(20)).size(), 1u);
  EXPECT_TRUE(check_sentence_length(words(15)).empty());
  const auto fs = check_sentence_length(words(16) + " " + words(14) + " " + words(18));
  EXPECT_EQ(fs.size(), 2u);
  for (const auto& f : fs) {
    EXPECT_EQ(f.severity, Severity::warning);
    EXPECT_TRUE(f.simplified_span);
  }
}

TEST(LowFrequencyWords, Threshold) {
  const FrequencyList freq({{"de", 1000}, {"kat", 50}}, "t");
  DiagnosticsConfig cfg;
  cfg.freq_threshold = 0.01;
  const auto fs = check_low_frequency_words("de felis", freq, cfg);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].severity, Severity::info);
  EXPECT_NE(fs[0].message.find("felis"), std::string::npos);
  EXPECT_TRUE(check_low_frequency_words("de kat", freq, cfg).empty());
  EXPECT_EQ(check_low_frequency_words("felis de felis Felis", freq, cfg).size(), 1u);
}

TEST(LowFrequencyWords, EmptyListIsAnError) {
  EXPECT_THROW(check_low_frequency_words("de kat", FrequencyList{}), Error);
}

TEST(Compression, Floor) {
  std::string src, simp;
  for (int i = 0; i < 100; ++i) src += "woord ";
  for (int i = 0; i < 30; ++i) simp += "woord ";
  const auto fs = check_compression(src, simp);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].check_id, CheckId::aggressive_compression);
  std::string simp50;
  for (int i = 0; i < 50; ++i) simp50 += "woord ";
  EXPECT_TRUE(check_compression(src, simp50).empty());
}

TEST(RunDiagnostics, HuygensPair) {
  const auto fs = run_diagnostics(kHuygensSource, kHuygensSimplified, FrequencyList{});
  EXPECT_GE(count(fs, CheckId::entity_dropped), 1u);
  EXPECT_EQ(count(fs, CheckId::number_dropped), 1u);  // 1629
}

TEST(RunDiagnostics, VotingExampleFlagsNothingContentual) {
  const auto fs =
      run_diagnostics("Op dat moment mag nog maar een deel van de mannelijke Nederlandse "
                      "bevolking stemmen.",
                      "Slechts een deel van de Nederlandse bevolking mag stemmen.",
                      FrequencyList{});
  for (const auto& f : fs) EXPECT_FALSE(is_preservation_check(f.check_id)) << f.message;
}

TEST(RunDiagnostics, OrderedByCheckThenPosition) {
  const std::string src = "In 1915 en 1916 kwam Aletta Jacobs naar Den Haag.";
  const std::string simp = "In 2015 kwam ze. De NAVO en de EEG.";
  const auto fs = run_diagnostics(src, simp, FrequencyList{});
  for (std::size_t i = 1; i < fs.size(); ++i)
    ASSERT_LE(static_cast<int>(fs[i - 1].check_id), static_cast<int>(fs[i].check_id));
  EXPECT_EQ(fs, run_diagnostics(src, simp, FrequencyList{}));
}

TEST(RunDiagnostics, Errors) {
  EXPECT_THROW(run_diagnostics("", "x", FrequencyList{}), Error);
  EXPECT_THROW(run_diagnostics("x", " ", FrequencyList{}), Error);
  DiagnosticsConfig bad;
  bad.min_sentence_words = 20;
  EXPECT_THROW(run_diagnostics("x", "x", FrequencyList{}, bad), Error);
}

TEST(DiagnosticsProperty, IdentityHasNoPreservationFindings) {
  testing::Rng rng(101);
  const FrequencyList freq({{"de", 1000}, {"het", 800}, {"een", 700}}, "t");
  for (int i = 0; i < 300; ++i) {
    const std::string x = i % 4 == 3 ? testing::random_noise(rng) + "x" : testing::random_text(rng);
    for (const auto& f : run_diagnostics(x, x, freq))
      ASSERT_FALSE(is_preservation_check(f.check_id)) << x << " -> " << f.message;
  }
}

TEST(DiagnosticsProperty, SpansInBoundsAndDeterministic) {
  testing::Rng rng(103);
  const FrequencyList freq({{"de", 1000}}, "t");
  for (int i = 0; i < 300; ++i) {
    const std::string a = testing::random_text(rng);
    const std::string b = testing::random_text(rng);
    const auto fs = run_diagnostics(a, b, freq);
    ASSERT_EQ(fs, run_diagnostics(a, b, freq));
    for (const auto& f : fs) {
      ASSERT_FALSE(f.message.empty());
      if (f.source_span) ASSERT_LE(f.source_span->end, a.size());
      if (f.simplified_span) ASSERT_LE(f.simplified_span->end, b.size());
    }
    ASSERT_LE(check_sentence_length(b).size(), split_sentences(b, Language::nl).size());
  }
}

}  // namespace
}  // namespace artist
