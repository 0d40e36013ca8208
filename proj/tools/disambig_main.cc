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

// Command-line front end: ingest, candidates, score, evaluate, report, synth
// and run (the whole pipeline).
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 provider error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disambig/corpus.h"
#include "disambig/error.h"
#include "disambig/evaluation.h"
#include "disambig/keywords.h"
#include "disambig/overlap.h"
#include "disambig/pipeline.h"
#include "disambig/synth.h"

namespace {

using namespace disambig;

struct Options {
  std::string config_file;
  std::string cache_dir;
  bool verbose = false;

  // Per-command values; empty/unset means "keep the config value".
  std::string corpus;
  std::string entity;
  std::string out;
  std::string input;
  std::string provider;
  std::string endpoint;
  std::string stopwords;
  std::string mode;
  std::string format;
  std::optional<std::int64_t> min_freq;
  std::optional<std::size_t> max_candidates;
  std::optional<std::size_t> top_k;
  std::optional<std::size_t> snippet_cap;
  std::optional<std::size_t> page_load_cap;
  std::optional<std::size_t> workers;
  std::string output_dir;

  SynthSpec synth;
};

void log(const Options &opts, const std::string &msg) {
  if (opts.verbose) std::cerr << "disambig: " << msg << '\n';
}

RunConfig make_config(const Options &opts) {
  RunConfig config;
  if (!opts.config_file.empty()) config = load_config(opts.config_file);
  if (!opts.corpus.empty()) config.corpus = opts.corpus;
  if (!opts.entity.empty()) config.entity = opts.entity;
  if (!opts.cache_dir.empty()) config.cache_dir = opts.cache_dir;
  if (!opts.provider.empty()) set_config_value(config, "provider", opts.provider);
  if (!opts.endpoint.empty()) config.endpoint = opts.endpoint;
  if (!opts.stopwords.empty()) config.stopwords = opts.stopwords;
  if (!opts.mode.empty()) set_config_value(config, "mode", opts.mode);
  if (!opts.format.empty()) set_config_value(config, "report_format", opts.format);
  if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
  if (opts.min_freq) config.min_snippet_freq = *opts.min_freq;
  if (opts.max_candidates) config.max_candidates = *opts.max_candidates;
  if (opts.top_k) config.top_k = *opts.top_k;
  if (opts.snippet_cap) config.snippet_cap = *opts.snippet_cap;
  if (opts.page_load_cap) config.page_load_cap = *opts.page_load_cap;
  if (opts.workers) config.workers = *opts.workers;
  return config;
}

// Stage context for the single-stage subcommands.
struct Session {
  RunConfig config;
  Corpus corpus;
  std::unique_ptr<Provider> provider;
  std::optional<QueryCache> cache;
  std::optional<Searcher> searcher;

  explicit Session(const Options &opts) : config(make_config(opts)) {
    validate(config);
    corpus = load_corpus(config.corpus);
    corpus.entity(config.entity);
    provider = make_provider(config, corpus);
    if (auto dir = effective_cache_dir(config)) {
      cache.emplace(*dir);
      log(opts, "query cache at " + dir->string());
    }
    searcher.emplace(*provider, cache ? &*cache : nullptr, config.workers);
  }
};

// Writes to the --out file, or stdout when none was given.
template <typename Fn>
void emit(const std::string &path, Fn &&fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  fn(out);
  if (!out) throw DataError("write failed for " + path);
}

std::vector<std::string> read_word_list(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    // Accept plain word lists as well as candidates/scores files.
    auto word = line.substr(0, line.find('\t'));
    auto tokens = tokenize(word, {.min_token_len = 1});
    if (tokens.size() == 1) words.push_back(tokens.front());
  }
  return words;
}

int cmd_ingest(const Options &opts) {
  RunConfig config = make_config(opts);
  if (config.corpus.empty()) throw UsageError("--corpus is required");
  Corpus corpus = load_corpus(config.corpus);
  for (const auto &w : corpus.warnings()) std::cerr << "warning: " << w << '\n';
  if (!opts.out.empty()) save_corpus(corpus, std::filesystem::path(opts.out));
  std::printf("%-28s %-12s %s\n", "Entity", "Position", "Pages");
  for (const auto &e : corpus.entities()) {
    std::printf("%-28s %-12s %zu\n", e.canonical_name.c_str(),
                e.description.value_or("-").c_str(),
                corpus.gold().members(e.entity_id).size());
  }
  std::printf("%zu documents, %zu gold-labeled\n", corpus.documents().size(),
              corpus.gold().labeled_count());
  return 0;
}

int cmd_candidates(const Options &opts) {
  Session s(opts);
  auto candidates = candidates_stage(s.corpus, s.config, *s.searcher);
  log(opts, std::to_string(candidates.size()) + " candidates");
  emit(opts.out, [&](std::ostream &out) { write_candidates(candidates, out); });
  return 0;
}

int cmd_score(const Options &opts) {
  Session s(opts);
  std::ifstream in(opts.input);
  if (!in) throw DataError("cannot read candidates file " + opts.input);
  auto candidates = read_candidates(in);
  auto scores = score_stage(s.corpus, s.config, *s.searcher, candidates);
  if (opts.top_k && scores.size() > *opts.top_k) scores.resize(*opts.top_k);
  emit(opts.out, [&](std::ostream &out) { write_scores(scores, out); });
  return 0;
}

int cmd_evaluate(const Options &opts) {
  Session s(opts);
  auto keywords = read_word_list(opts.input);
  auto report = evaluate_stage(s.corpus, s.config, *s.searcher, keywords);
  emit(opts.out, [&](std::ostream &out) {
    write_report(report, s.config.report_format, out);
  });
  return 0;
}

int cmd_report(const Options &opts) {
  std::ifstream in(opts.input);
  if (!in) throw DataError("cannot read report " + opts.input);
  auto report = read_report_jsonl(in);
  auto format = parse_report_format(opts.format.empty() ? "table" : opts.format);
  emit(opts.out, [&](std::ostream &out) { write_report(report, format, out); });
  return 0;
}

int cmd_synth(const Options &opts) {
  if (opts.out.empty()) throw UsageError("--out is required");
  save_corpus(generate_synthetic(opts.synth), std::filesystem::path(opts.out));
  return 0;
}

int cmd_run(const Options &opts) {
  RunConfig config = make_config(opts);
  auto result = run_pipeline(config);
  for (const auto &path : result.artifacts) log(opts, "wrote " + path.string());
  write_report(result.report, ReportFormat::kTable, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Keyword extraction and evaluation for personal-name disambiguation"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--config", opts.config_file, "Flat key = value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--cache", opts.cache_dir, "Query cache directory");
  app.add_flag("-v,--verbose", opts.verbose, "Log progress to stderr");

  auto corpus_opts = [&](CLI::App *cmd) {
    cmd->add_option("--corpus", opts.corpus, "Corpus file (jsonl)");
    cmd->add_option("--entity", opts.entity, "Entity id");
    cmd->add_option("--provider", opts.provider, "offline or http");
    cmd->add_option("--endpoint", opts.endpoint, "HTTP endpoint template");
    cmd->add_option("--snippet-cap", opts.snippet_cap, "Results per single-term query");
    cmd->add_option("--page-load-cap", opts.page_load_cap,
                    "Results per conjunctive query");
    cmd->add_option("--workers", opts.workers, "Concurrent queries");
  };

  auto *ingest = app.add_subcommand("ingest", "Validate a corpus and print its statistics");
  ingest->add_option("--corpus", opts.corpus, "Corpus file (jsonl)");
  ingest->add_option("--out", opts.out, "Write the canonical corpus here");

  auto *candidates = app.add_subcommand("candidates", "Candidate keywords for an entity");
  corpus_opts(candidates);
  candidates->add_option("--min-freq", opts.min_freq, "Minimum snippet frequency");
  candidates->add_option("--max-candidates", opts.max_candidates, "Candidate list cap");
  candidates->add_option("--stopwords", opts.stopwords, "Stopword file");
  candidates->add_option("--out", opts.out, "Output file (default stdout)");

  auto *score = app.add_subcommand("score", "Score candidates by overlap with the name");
  corpus_opts(score);
  score->add_option("--candidates", opts.input, "Candidates file")->required();
  score->add_option("--top", opts.top_k, "Emit only the top K");
  score->add_option("--out", opts.out, "Output file (default stdout)");

  auto *evaluate = app.add_subcommand("evaluate", "Recall/precision/F of keyword clusters");
  corpus_opts(evaluate);
  evaluate->add_option("--keywords", opts.input, "Keyword list")->required();
  evaluate->add_option("--mode", opts.mode, "per-keyword, union or both");
  evaluate->add_option("--format", opts.format, "table, csv or jsonl");
  evaluate->add_option("--out", opts.out, "Report file (default stdout)");

  auto *report = app.add_subcommand("report", "Reformat a jsonl report");
  report->add_option("--in", opts.input, "report.jsonl")->required();
  report->add_option("--format", opts.format, "table, csv or jsonl");
  report->add_option("--out", opts.out, "Output file (default stdout)");

  auto *synth = app.add_subcommand("synth", "Generate a synthetic ambiguous-name corpus");
  synth->add_option("--entities", opts.synth.entities, "Entity count");
  synth->add_option("--docs", opts.synth.docs_per_entity, "Documents per entity");
  synth->add_option("--vocabulary", opts.synth.vocabulary, "Vocabulary size");
  synth->add_option("--ambiguity", opts.synth.ambiguity, "Shared-name rate in [0,1]");
  synth->add_option("--seed", opts.synth.seed, "Random seed");
  synth->add_option("--out", opts.out, "Corpus file")->required();

  auto *run = app.add_subcommand("run", "Full pipeline");
  corpus_opts(run);
  run->add_option("--output-dir", opts.output_dir, "Artifact directory");
  run->add_option("--format", opts.format, "Report file format");
  run->add_option("--mode", opts.mode, "per-keyword, union or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) return cmd_ingest(opts);
    if (*candidates) return cmd_candidates(opts);
    if (*score) return cmd_score(opts);
    if (*evaluate) return cmd_evaluate(opts);
    if (*report) return cmd_report(opts);
    if (*synth) return cmd_synth(opts);
    if (*run) return cmd_run(opts);
  } catch (const Error &e) {
    std::cerr << "disambig: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception &e) {
    std::cerr << "disambig: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
