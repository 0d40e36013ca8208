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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "disambig/error.h"
#include "disambig/http_provider.h"

namespace disambig {
namespace {

std::string trim(const std::string &s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError("config key '" + key + "': bad number '" + value + "'");
  }
  return out;
}

double parse_double(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used == value.size()) return out;
  } catch (const std::exception &) {
  }
  throw UsageError("config key '" + key + "': bad number '" + value + "'");
}

// Removes everything written so far if the run does not complete.
class ArtifactSet {
 public:
  explicit ArtifactSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  ArtifactSet(const ArtifactSet &) = delete;
  ArtifactSet &operator=(const ArtifactSet &) = delete;
  ~ArtifactSet() {
    if (committed_) return;
    for (const auto &path : written_) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
  }

  template <typename Fn>
  std::filesystem::path write(const std::string &name, Fn &&fn) {
    auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    written_.push_back(path);
    fn(out);
    if (!out) throw DataError("write failed for " + path.string());
    return path;
  }

  std::vector<std::filesystem::path> commit() {
    committed_ = true;
    return written_;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
  bool committed_ = false;
};

template <typename Fn>
auto run_stage(const std::string &stage, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const Error &e) {
    throw StageError(stage, e.what(), e.exit_code());
  } catch (const std::exception &e) {
    throw StageError(stage, e.what(), 2);
  }
}

}  // namespace

void set_config_value(RunConfig &config, const std::string &key,
                      const std::string &value) {
  if (key == "corpus") {
    config.corpus = value;
  } else if (key == "entity") {
    config.entity = value;
  } else if (key == "provider") {
    if (value != "offline" && value != "http") {
      throw UsageError("provider must be offline or http, got '" + value + "'");
    }
    config.provider = value;
  } else if (key == "endpoint") {
    config.endpoint = value;
  } else if (key == "rate_limit") {
    config.rate_limit = parse_double(key, value);
  } else if (key == "max_retries") {
    config.max_retries = parse_number<int>(key, value);
  } else if (key == "cache_dir") {
    if (value.empty()) {
      config.cache_dir.reset();
    } else {
      config.cache_dir = value;
    }
  } else if (key == "snippet_cap") {
    config.snippet_cap = parse_number<std::size_t>(key, value);
  } else if (key == "page_load_cap") {
    config.page_load_cap = parse_number<std::size_t>(key, value);
  } else if (key == "min_snippet_freq") {
    config.min_snippet_freq = parse_number<std::int64_t>(key, value);
  } else if (key == "max_candidates") {
    config.max_candidates = parse_number<std::size_t>(key, value);
  } else if (key == "stopwords") {
    if (value.empty()) {
      config.stopwords.reset();
    } else {
      config.stopwords = value;
    }
  } else if (key == "top_k") {
    config.top_k = parse_number<std::size_t>(key, value);
  } else if (key == "mode") {
    config.mode = parse_report_mode(value);
  } else if (key == "report_format") {
    config.report_format = parse_report_format(value);
  } else if (key == "output_dir") {
    config.output_dir = value;
  } else if (key == "workers") {
    config.workers = parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(std::istream &in) {
  RunConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(number) +
                       ": expected key = value");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  RunConfig config = parse_config(in);
  // Relative paths in a config file are relative to the file itself.
  auto base = path.parent_path();
  auto rebase = [&](std::filesystem::path &p) {
    if (!p.empty() && p.is_relative()) p = base / p;
  };
  rebase(config.corpus);
  rebase(config.output_dir);
  if (config.cache_dir) rebase(*config.cache_dir);
  if (config.stopwords) rebase(*config.stopwords);
  return config;
}

void validate(const RunConfig &config) {
  if (config.corpus.empty()) throw UsageError("no corpus configured");
  if (!std::filesystem::is_regular_file(config.corpus)) {
    throw UsageError("corpus file not found: " + config.corpus.string());
  }
  if (config.entity.empty()) throw UsageError("no entity configured");
  if (config.snippet_cap < 1 || config.page_load_cap < 1) {
    throw UsageError("snippet_cap and page_load_cap must be at least 1");
  }
  if (config.min_snippet_freq < 1) {
    throw UsageError("min_snippet_freq must be at least 1");
  }
  if (config.max_candidates < 1 || config.top_k < 1 || config.workers < 1) {
    throw UsageError("max_candidates, top_k and workers must be at least 1");
  }
  if (config.stopwords && !std::filesystem::is_regular_file(*config.stopwords)) {
    throw UsageError("stopword file not found: " + config.stopwords->string());
  }
  if (config.provider == "http" && config.endpoint.empty()) {
    throw UsageError("the http provider needs an endpoint");
  }
}

std::optional<std::filesystem::path> effective_cache_dir(
    const RunConfig &config) {
  const char *env = std::getenv(kCacheDirEnv);
  if (env != nullptr && *env != '\0') return std::filesystem::path(env);
  return config.cache_dir;
}

std::unique_ptr<Provider> make_provider(const RunConfig &config,
                                        const Corpus &corpus) {
  if (config.provider == "http") {
    HttpProviderConfig http;
    http.endpoint_template = config.endpoint;
    http.rate_limit = config.rate_limit;
    http.max_retries = config.max_retries;
    return std::make_unique<HttpProvider>(std::move(http));
  }
  return std::make_unique<OfflineProvider>(corpus);
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)> &fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

QueryOutcome Searcher::fetch(const Query &query, std::size_t max_results) {
  if (cache_ != nullptr) {
    return cached_search(*cache_, provider_, query, max_results);
  }
  return search(provider_, query, max_results);
}

std::map<std::string, KeywordOutcomes> Searcher::fetch_keywords(
    const SearchTerm &name, const std::vector<std::string> &words,
    std::size_t single_cap, std::size_t conjunctive_cap) {
  std::vector<std::optional<KeywordOutcomes>> slots(words.size());
  parallel_for(words.size(), workers_, [&](std::size_t i) {
    SearchTerm keyword = SearchTerm::word(words[i]);
    auto alone = fetch(Query(keyword), single_cap);
    auto both = fetch(Query(name, keyword), conjunctive_cap);
    slots[i] = KeywordOutcomes{std::move(alone), std::move(both)};
  });
  std::map<std::string, KeywordOutcomes> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.emplace(words[i], *std::move(slots[i]));
  }
  return out;
}

SearchTerm name_term(const PersonEntity &person) {
  return SearchTerm::phrase(person.canonical_name);
}

TokenizerConfig tokenizer_config(const RunConfig &config) {
  TokenizerConfig tc;
  if (config.stopwords) tc.stopwords = load_stopwords(*config.stopwords);
  return tc;
}

std::vector<CandidateKeyword> candidates_stage(const Corpus &corpus,
                                               const RunConfig &config,
                                               Searcher &searcher) {
  const PersonEntity &person = corpus.entity(config.entity);
  auto outcome = searcher.fetch(Query(name_term(person)), config.snippet_cap);
  return generate_candidates(
      outcome.results, person, tokenizer_config(config),
      {.min_snippet_freq = config.min_snippet_freq,
       .max_candidates = config.max_candidates});
}

std::vector<ScoredKeyword> score_stage(
    const Corpus &corpus, const RunConfig &config, Searcher &searcher,
    const std::vector<CandidateKeyword> &candidates) {
  const PersonEntity &person = corpus.entity(config.entity);
  SearchTerm name = name_term(person);
  auto name_outcome = searcher.fetch(Query(name), config.snippet_cap);
  std::vector<std::string> words;
  for (const auto &c : candidates) words.push_back(c.word);
  auto outcomes = searcher.fetch_keywords(name, words, config.snippet_cap,
                                          config.page_load_cap);
  return rank_keywords(candidates, name, name_outcome, outcomes);
}

EvalReport evaluate_stage(const Corpus &corpus, const RunConfig &config,
                          Searcher &searcher,
                          const std::vector<std::string> &keywords) {
  const PersonEntity &person = corpus.entity(config.entity);
  SearchTerm name = name_term(person);
  std::vector<std::optional<QueryOutcome>> slots(keywords.size());
  parallel_for(keywords.size(), config.workers, [&](std::size_t i) {
    slots[i] = searcher.fetch(Query(name, SearchTerm::word(keywords[i])),
                              config.page_load_cap);
  });
  std::map<std::string, QueryOutcome> outcomes;
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    outcomes.emplace(keywords[i], *std::move(slots[i]));
  }
  return evaluate_keywords(corpus, config.entity, keywords, outcomes,
                           config.mode);
}

PipelineResult run_pipeline(const RunConfig &config) {
  validate(config);
  Corpus corpus = run_stage("ingest", [&] {
    Corpus c = load_corpus(config.corpus);
    c.entity(config.entity);
    return c;
  });

  std::filesystem::create_directories(config.output_dir);
  // Outputs of an earlier run would be stale once this one starts.
  for (const char *name : {"candidates.tsv", "scores.tsv", "keywords.txt",
                           "report.jsonl", "report.txt", "report.csv"}) {
    std::error_code ec;
    std::filesystem::remove(config.output_dir / name, ec);
  }
  ArtifactSet artifacts(config.output_dir);

  auto provider = make_provider(config, corpus);
  std::optional<QueryCache> cache;
  if (auto dir = effective_cache_dir(config)) cache.emplace(*dir);
  Searcher searcher(*provider, cache ? &*cache : nullptr, config.workers);

  auto candidates = run_stage("candidates", [&] {
    auto c = candidates_stage(corpus, config, searcher);
    artifacts.write("candidates.tsv",
                    [&](std::ostream &out) { write_candidates(c, out); });
    return c;
  });

  auto keywords = run_stage("score", [&] {
    auto scores = score_stage(corpus, config, searcher, candidates);
    artifacts.write("scores.tsv",
                    [&](std::ostream &out) { write_scores(scores, out); });
    auto selected = select_keywords(scores, config.top_k);
    artifacts.write("keywords.txt", [&](std::ostream &out) {
      for (const auto &k : selected) out << k << '\n';
    });
    return selected;
  });

  EvalReport report = run_stage("evaluate", [&] {
    return evaluate_stage(corpus, config, searcher, keywords);
  });

  run_stage("report", [&] {
    artifacts.write("report.jsonl", [&](std::ostream &out) {
      write_report(report, ReportFormat::kJsonl, out);
    });
    if (config.report_format == ReportFormat::kTable) {
      artifacts.write("report.txt", [&](std::ostream &out) {
        write_report(report, ReportFormat::kTable, out);
      });
    } else if (config.report_format == ReportFormat::kCsv) {
      artifacts.write("report.csv", [&](std::ostream &out) {
        write_report(report, ReportFormat::kCsv, out);
      });
    }
    return 0;
  });

  return {std::move(report), artifacts.commit()};
}

}  // namespace disambig
