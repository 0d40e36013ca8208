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

#ifndef DISAMBIG_PIPELINE_H_
#define DISAMBIG_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "disambig/corpus.h"
#include "disambig/evaluation.h"
#include "disambig/keywords.h"
#include "disambig/overlap.h"
#include "disambig/query_cache.h"
#include "disambig/search.h"

namespace disambig {

struct RunConfig {
  std::filesystem::path corpus;
  std::string entity;

  std::string provider = "offline";  // offline | http
  std::string endpoint;
  double rate_limit = 1.0;
  int max_retries = 3;
  std::optional<std::filesystem::path> cache_dir;

  std::size_t snippet_cap = 1000;   // results fetched per single-term query
  std::size_t page_load_cap = 500;  // results fetched per conjunctive query

  std::int64_t min_snippet_freq = 5;
  std::size_t max_candidates = 100;
  std::optional<std::filesystem::path> stopwords;

  std::size_t top_k = 11;
  ReportMode mode = ReportMode::kBoth;
  ReportFormat report_format = ReportFormat::kTable;
  std::filesystem::path output_dir = "out";
  std::size_t workers = 4;
  std::uint64_t seed = 0;
};

// Applies one `key = value` setting. Throws UsageError for unknown keys or
// unparsable values.
void set_config_value(RunConfig &config, const std::string &key,
                      const std::string &value);

// Flat key-value file: `key = value` per line, '#' starts a comment.
RunConfig parse_config(std::istream &in);
RunConfig load_config(const std::filesystem::path &path);

// Checks caps and that referenced paths exist. Throws UsageError.
void validate(const RunConfig &config);

// $DISAMBIG_CACHE_DIR when set, otherwise the configured cache directory.
std::optional<std::filesystem::path> effective_cache_dir(const RunConfig &config);

std::unique_ptr<Provider> make_provider(const RunConfig &config,
                                        const Corpus &corpus);

// Runs fn(0..n-1) on at most `workers` threads; rethrows the first failure.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)> &fn);

// Search access shared by the stages: optional cache plus worker fan-out.
class Searcher {
 public:
  Searcher(Provider &provider, QueryCache *cache, std::size_t workers)
      : provider_(provider), cache_(cache), workers_(workers) {}

  QueryOutcome fetch(const Query &query, std::size_t max_results);

  // Keyword-alone and (name, keyword) outcomes for every word.
  std::map<std::string, KeywordOutcomes> fetch_keywords(
      const SearchTerm &name, const std::vector<std::string> &words,
      std::size_t single_cap, std::size_t conjunctive_cap);

  Provider &provider() { return provider_; }

 private:
  Provider &provider_;
  QueryCache *cache_;
  std::size_t workers_;
};

// The phrase query used for a person.
SearchTerm name_term(const PersonEntity &person);

TokenizerConfig tokenizer_config(const RunConfig &config);

std::vector<CandidateKeyword> candidates_stage(const Corpus &corpus,
                                               const RunConfig &config,
                                               Searcher &searcher);

std::vector<ScoredKeyword> score_stage(
    const Corpus &corpus, const RunConfig &config, Searcher &searcher,
    const std::vector<CandidateKeyword> &candidates);

EvalReport evaluate_stage(const Corpus &corpus, const RunConfig &config,
                          Searcher &searcher,
                          const std::vector<std::string> &keywords);

struct PipelineResult {
  EvalReport report;
  std::vector<std::filesystem::path> artifacts;
};

// ingest -> candidates -> score -> evaluate -> report. Writes candidates.tsv,
// scores.tsv, keywords.txt, report.jsonl and the formatted report into the
// output directory. On failure the artifacts of this run are removed and a
// StageError naming the stage is thrown.
PipelineResult run_pipeline(const RunConfig &config);

}  // namespace disambig

#endif  // DISAMBIG_PIPELINE_H_
