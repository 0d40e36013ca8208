// Copyright 2026 The Disambig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disambig/pipeline.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <sstream>

#include "disambig/error.h"
#include "disambig/synth.h"
#include "test_util.h"

namespace disambig {
namespace {

using testing::read_file;
using testing::TempDir;
using testing::write_file;

TEST(ConfigTest, ParsesKeysAndComments) {
  std::stringstream in(
      "# replay settings\n"
      "corpus = data/x.jsonl\n"
      "entity=abdul_razak_hamdan  # trailing comment\n"
      "\n"
      "top_k = 5\n"
      "mode = union\n"
      "report_format = csv\n"
      "workers = 2\n");
  auto config = parse_config(in);
  EXPECT_EQ(config.corpus, "data/x.jsonl");
  EXPECT_EQ(config.entity, "abdul_razak_hamdan");
  EXPECT_EQ(config.top_k, 5u);
  EXPECT_EQ(config.mode, ReportMode::kUnion);
  EXPECT_EQ(config.report_format, ReportFormat::kCsv);
  EXPECT_EQ(config.workers, 2u);
  EXPECT_EQ(config.snippet_cap, 1000u);
}

TEST(ConfigTest, RejectsBadLines) {
  for (const char *text : {"corpus\n", "colour = red\n", "top_k = many\n",
                           "provider = bing\n", "mode = all\n"}) {
    std::stringstream in(text);
    EXPECT_THROW(parse_config(in), UsageError) << text;
  }
}

TEST(ConfigTest, RelativePathsFollowTheConfigFile) {
  TempDir dir;
  std::filesystem::create_directories(dir / "conf");
  write_file(dir / "conf" / "run.conf",
             "corpus = ../corpus.jsonl\noutput_dir = out\n");
  auto config = load_config(dir / "conf" / "run.conf");
  EXPECT_EQ(std::filesystem::weakly_canonical(config.corpus),
            std::filesystem::weakly_canonical(dir / "corpus.jsonl"));
  EXPECT_EQ(std::filesystem::weakly_canonical(config.output_dir),
            std::filesystem::weakly_canonical(dir / "conf" / "out"));
  EXPECT_THROW(load_config(dir / "missing.conf"), UsageError);
}

TEST(ConfigTest, Validation) {
  TempDir dir;
  write_file(dir / "c.jsonl", "");
  RunConfig config;
  EXPECT_THROW(validate(config), UsageError);
  config.corpus = dir / "c.jsonl";
  EXPECT_THROW(validate(config), UsageError);  // no entity
  config.entity = "someone";
  EXPECT_NO_THROW(validate(config));
  config.top_k = 0;
  EXPECT_THROW(validate(config), UsageError);
  config.top_k = 3;
  config.provider = "http";
  EXPECT_THROW(validate(config), UsageError);
}

TEST(ParallelForTest, RunsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> seen(100);
  parallel_for(seen.size(), 4, [&](std::size_t i) { ++seen[i]; });
  for (const auto &s : seen) EXPECT_EQ(s, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw DataError("boom");
                            }),
               DataError);
}

class PipelineTest : public ::testing::Test {
 protected:
  PipelineTest() {
    save_corpus(generate_synthetic({.entities = 3,
                                    .docs_per_entity = 30,
                                    .vocabulary = 60,
                                    .ambiguity = 1.0,
                                    .seed = 9}),
                dir_ / "corpus.jsonl");
    config_.corpus = dir_ / "corpus.jsonl";
    config_.entity = "person_001";
    config_.min_snippet_freq = 3;
    config_.top_k = 5;
    config_.output_dir = dir_ / "out";
    config_.cache_dir = dir_ / "cache";
  }

  TempDir dir_;
  RunConfig config_;
};

TEST_F(PipelineTest, WritesArtifacts) {
  auto result = run_pipeline(config_);
  for (const char *name :
       {"candidates.tsv", "scores.tsv", "keywords.txt", "report.jsonl",
        "report.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(config_.output_dir / name)) << name;
  }
  EXPECT_FALSE(std::filesystem::exists(config_.output_dir / "report.csv"));
  EXPECT_EQ(result.artifacts.size(), 5u);
  EXPECT_TRUE(result.report.aggregate.has_value());
  std::ifstream jsonl(config_.output_dir / "report.jsonl");
  EXPECT_EQ(read_report_jsonl(jsonl), result.report);
}

TEST_F(PipelineTest, RepeatedRunsAreByteIdentical) {
  run_pipeline(config_);
  auto first = read_file(config_.output_dir / "report.jsonl");
  auto scores = read_file(config_.output_dir / "scores.tsv");
  std::filesystem::remove_all(config_.cache_dir.value());
  config_.workers = 1;
  run_pipeline(config_);
  EXPECT_EQ(read_file(config_.output_dir / "report.jsonl"), first);
  EXPECT_EQ(read_file(config_.output_dir / "scores.tsv"), scores);
}

TEST_F(PipelineTest, FailedStageLeavesNoPartialOutput) {
  // A directory in the way of the report makes the last stage fail.
  std::filesystem::create_directories(config_.output_dir / "report.jsonl");
  write_file(config_.output_dir / "report.jsonl" / "keep", "x");
  try {
    run_pipeline(config_);
    FAIL() << "expected StageError";
  } catch (const StageError &e) {
    EXPECT_EQ(e.stage(), "report");
    EXPECT_EQ(e.exit_code(), 2);
  }
  EXPECT_FALSE(std::filesystem::exists(config_.output_dir / "candidates.tsv"));
  EXPECT_FALSE(std::filesystem::exists(config_.output_dir / "scores.tsv"));
  EXPECT_TRUE(std::filesystem::exists(config_.output_dir / "report.jsonl" / "keep"));
}

TEST_F(PipelineTest, UnknownEntityFailsAtIngest) {
  config_.entity = "person_999";
  try {
    run_pipeline(config_);
    FAIL() << "expected StageError";
  } catch (const StageError &e) {
    EXPECT_EQ(e.stage(), "ingest");
    EXPECT_EQ(e.exit_code(), 2);
  }
}

TEST_F(PipelineTest, EmptyCorpusIsADataError) {
  write_file(dir_ / "empty.jsonl", "");
  config_.corpus = dir_ / "empty.jsonl";
  EXPECT_THROW(run_pipeline(config_), StageError);
}

TEST(SynthTest, FullAmbiguitySharesTheName) {
  auto corpus = generate_synthetic(
      {.entities = 2, .docs_per_entity = 10, .ambiguity = 1.0, .seed = 7});
  ASSERT_EQ(corpus.entities().size(), 2u);
  EXPECT_EQ(corpus.entities()[0].canonical_name,
            corpus.entities()[1].canonical_name);
  EXPECT_EQ(corpus.documents().size(), 20u);
  EXPECT_EQ(corpus.gold().labeled_count(), 20u);
  EXPECT_EQ(corpus.gold().members("person_001").size(), 10u);
}

TEST(SynthTest, NoAmbiguityMeansDisjointNames) {
  auto corpus = generate_synthetic(
      {.entities = 6, .docs_per_entity = 3, .ambiguity = 0.0, .seed = 7});
  std::set<std::string> tokens;
  std::size_t total = 0;
  for (const auto &e : corpus.entities()) {
    auto words = tokenize(e.canonical_name, {});
    total += words.size();
    tokens.insert(words.begin(), words.end());
  }
  EXPECT_EQ(tokens.size(), total);
}

TEST(SynthTest, SeedDeterminesOutput) {
  SynthSpec spec{.entities = 4, .docs_per_entity = 5, .ambiguity = 0.5, .seed = 42};
  std::stringstream a, b, c;
  save_corpus(generate_synthetic(spec), a);
  save_corpus(generate_synthetic(spec), b);
  spec.seed = 43;
  save_corpus(generate_synthetic(spec), c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
  EXPECT_THROW(generate_synthetic({.ambiguity = 1.5}), UsageError);
}

int run_cli(const std::string &args) {
  std::string cmd = std::string(DISAMBIG_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  TempDir dir;
  auto corpus = (dir / "c.jsonl").string();
  EXPECT_EQ(run_cli("synth --entities 2 --docs 10 --ambiguity 1 --seed 7 --out " +
                    corpus),
            0);
  EXPECT_EQ(run_cli("ingest --corpus " + corpus), 0);
  EXPECT_EQ(run_cli("run --corpus " + corpus + " --entity person_001 --output-dir " +
                    (dir / "out").string()),
            0);
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "report.txt"));
  EXPECT_EQ(run_cli("frobnicate"), 1);
  EXPECT_EQ(run_cli("run --entity person_001"), 1);

  write_file(dir / "bad.jsonl", "{\"type\": \"entity\"\n");
  EXPECT_EQ(run_cli("ingest --corpus " + (dir / "bad.jsonl").string()), 2);

  EXPECT_EQ(run_cli("run --corpus " + corpus +
                    " --entity person_001 --provider http --endpoint "
                    "'http://127.0.0.1:1/s?q={query}' --output-dir " +
                    (dir / "out2").string()),
            3);
}

}  // namespace
}  // namespace disambig
