#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "artist/serialization.hpp"
#include "artist/service.hpp"
#include "stub_server.hpp"

namespace artist {
namespace {

using nlohmann::json;

const std::filesystem::path kSource(ARTIST_SOURCE_DIR);
const std::string kFixture = (kSource / "tests" / "data" / "fixture_corpus.jsonl").string();

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("artist_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, AssessTsv) {
  const auto f = write("a.txt", "De kat zit op de mat. Hij slaapt.");
  const auto r = run({"assess", "--metrics", "flesch_douma,flesch_reading_ease", f});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, first, second, extra;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "metric\tscore");
  EXPECT_EQ(first.rfind("flesch_douma\t", 0), 0u);
  EXPECT_EQ(second.rfind("flesch_reading_ease\t", 0), 0u);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_TRUE(r.err.empty());
  const auto smog = run({"assess", "--metrics", "smog", f});
  EXPECT_EQ(smog.code, cli::kOk);
  EXPECT_NE(smog.err.find("SMOG unreliable"), std::string::npos);
}

TEST_F(CliTest, AssessJsonMatchesService) {
  const std::string text = "De kat zit op de mat. Hij slaapt.";
  const auto f = write("a.txt", text);
  const auto r = run({"assess", "--format", "json", f});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  Service svc(Workbench::load(ServerConfig::defaults()));
  EXPECT_EQ(r.out, dump_json(svc.assess({{"text", text}, {"language", "nl"}}).body) + "\n");
}

TEST_F(CliTest, AssessErrors) {
  const auto f = write("a.txt", "Tekst.");
  EXPECT_EQ(run({"assess", "--metrics", "gunning_fog", f}).code, cli::kUsage);
  EXPECT_EQ(run({"assess", "--lang", "fr", f}).code, cli::kUsage);
  EXPECT_EQ(run({"assess"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"assess", write("e.txt", "  \n")}).code, cli::kDataError);
  EXPECT_EQ(run({"assess", (dir_ / "missing.txt").string()}).code, cli::kDataError);
}

TEST_F(CliTest, SimplifyMockAndDiagnostics) {
  const auto f = write("s.txt", "In 1915 was er een congres.");
  const auto r = run({"simplify", "--backend", "mock", f});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "In 1915 was er een congres.");
  const auto d = run({"simplify", "--backend", "mock", "--diagnostics", f});
  EXPECT_EQ(d.code, cli::kOk);
  EXPECT_TRUE(json::parse(d.err).is_array());
  EXPECT_EQ(run({"simplify", "--backend", "gpt", f}).code, cli::kUsage);
}

TEST_F(CliTest, SimplifyBackendDownIsExitThree) {
  const std::string url =
      "http://127.0.0.1:" + std::to_string(testing::dead_port()) + "/simplify";
  const auto cfg = write("c.json", json{{"backends",
                                         {{{"backend_id", "t5"},
                                           {"kind", "external_model"},
                                           {"endpoint_url", url},
                                           {"timeout_ms", 500}}}}}
                                       .dump());
  const auto r = run({"simplify", "--config", cfg, "--backend", "t5", write("s.txt", "x")});
  EXPECT_EQ(r.code, cli::kBackendError);
  EXPECT_NE(r.err.find("backend_unavailable"), std::string::npos) << r.err;
}

TEST_F(CliTest, SimplifyWithStubModel) {
  testing::StubServer stub(testing::uppercase_model());
  const auto cfg = write("c.json", json{{"backends",
                                         {{{"backend_id", "t5"},
                                           {"kind", "external_model"},
                                           {"endpoint_url", stub.url("/simplify")}}}}}
                                       .dump());
  const auto r = run({"simplify", "--config", cfg, "--backend", "t5", write("s.txt", "abc")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "ABC");
}

TEST_F(CliTest, EvalIdentityOnFixture) {
  const auto r = run({"eval", "--corpus", kFixture, "--backend", "mock"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "topic\tscore");
  EXPECT_EQ(first, "tulpen\t1.000");
}

TEST_F(CliTest, EvalJsonMatchesService) {
  const auto cfg = write("c.json", json{{"backends",
                                         {{{"backend_id", "halve"},
                                           {"kind", "mock"},
                                           {"model_params",
                                            {{"mode", "drop_every_second_word"}}}}}}}
                                       .dump());
  for (const std::string metric : {"bleu", "sari"}) {
    const auto r = run({"eval", "--corpus", kFixture, "--backend", "halve", "--config", cfg,
                        "--metric", metric, "--format", "json", "--top", "3", "--jobs", "3"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto config = ServerConfig::load_file(cfg);
    config.corpora["cvn"] = kFixture;
    Service svc(Workbench::load(config));
    const auto resp = svc.evaluate(
        {{"corpus_id", "cvn"}, {"backend_id", "halve"}, {"metric", metric}, {"top_k", 3}});
    ASSERT_EQ(resp.status, 200);
    EXPECT_EQ(r.out, dump_json(resp.body) + "\n");
  }
}

TEST_F(CliTest, EvalCorruptedCorpusNamesLine) {
  std::ifstream in(kFixture);
  std::string content, line;
  int n = 0;
  while (std::getline(in, line)) content += (++n == 4 ? "{\"record_type\": " : line) + "\n";
  const auto r = run({"eval", "--corpus", write("bad.jsonl", content), "--backend", "mock"});
  EXPECT_EQ(r.code, cli::kDataError);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalUsageErrors) {
  EXPECT_EQ(run({"eval", "--corpus", kFixture, "--backend", "nope"}).code, cli::kUsage);
  EXPECT_EQ(run({"eval", "--corpus", kFixture, "--backend", "mock", "--metric", "meteor"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"eval", "--corpus", kFixture, "--backend", "mock", "--top", "0"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"eval", "--backend", "mock"}).code, cli::kUsage);
}

}  // namespace
}  // namespace artist
