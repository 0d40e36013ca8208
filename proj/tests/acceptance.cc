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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "disambig/corpus.h"
#include "disambig/error.h"
#include "disambig/evaluation.h"
#include "disambig/keywords.h"
#include "disambig/overlap.h"
#include "disambig/pipeline.h"
#include "disambig/replay_fixture.h"
#include "disambig/search.h"

namespace {

using namespace disambig;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Collects failure messages for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string &message) {
    if (!ok && failures_.size() < 5) failures_.push_back(message);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string out;
    for (const auto &f : failures_) out += "\n    " + f;
    if (count_ > failures_.size()) {
      out += "\n    ... " + std::to_string(count_ - failures_.size()) + " more";
    }
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

bool within_hundredth(double got, double want) {
  return std::fabs(round2(got) - want) <= 0.01 + 1e-9;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

fs::path fresh_dir(const std::string &tag) {
  static int counter = 0;
  auto dir = fs::temp_directory_path() /
             ("disambig-acceptance-" + std::to_string(::getpid()) + "-" + tag +
              "-" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig replay_config(const fs::path &work) {
  RunConfig config = load_config(fs::path(DISAMBIG_SOURCE_DIR) / "data" /
                                 "table2_replay.conf");
  config.output_dir = work / "out";
  config.cache_dir = work / "cache";
  return config;
}

void table2_replay(Check &check) {
  auto work = fresh_dir("ac1");
  auto start = Clock::now();
  auto result = run_pipeline(replay_config(work));
  double elapsed = seconds_since(start);

  const EvalRow *science = nullptr;
  for (const auto &row : result.report.rows) {
    if (row.label == "science") science = &row;
  }
  check.expect(science != nullptr, "no science row");
  if (science) {
    check.expect(within_hundredth(science->recall, 0.46),
                 "science recall " + fmt(science->recall));
    check.expect(within_hundredth(science->precision, 0.10),
                 "science precision " + fmt(science->precision));
    check.expect(within_hundredth(science->f_measure, 0.16),
                 "science F " + fmt(science->f_measure));
  }
  check.expect(result.report.aggregate.has_value(), "no overlap row");
  if (result.report.aggregate) {
    const auto &o = *result.report.aggregate;
    check.expect(within_hundredth(o.recall, 0.82), "overlap REC " + fmt(o.recall));
    check.expect(within_hundredth(o.precision, 0.23),
                 "overlap PREC " + fmt(o.precision));
    check.expect(within_hundredth(o.f_measure, 0.36), "overlap F " + fmt(o.f_measure));
  }
  check.expect(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
  fs::remove_all(work);
}

void f_measure_arithmetic(Check &check) {
  auto combined = [](double r, double p) {
    ReferenceScore s{"x", r, p};
    return aggregate(std::span<const ReferenceScore>(&s, 1)).f_measure;
  };
  double a = combined(0.82, 0.23);
  double b = combined(0.46, 0.10);
  check.expect(std::fabs(a - 0.36) <= 0.005, "F(0.82, 0.23) = " + fmt(a));
  check.expect(std::fabs(b - 0.16) <= 0.005, "F(0.46, 0.10) = " + fmt(b));
  std::mt19937_64 rng(20150101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    double r = u(rng);
    check.expect(std::fabs(f_measure(r, r) - r) <= 1e-12, "F(r, r) != r for r=" + fmt(r));
  }
}

void sim_properties(Check &check) {
  auto start = Clock::now();
  constexpr std::int64_t kMax = 64;
  for (std::int64_t a = 0; a <= kMax; ++a) {
    for (std::int64_t x = 0; x <= kMax; ++x) {
      double prev = -1.0;
      for (std::int64_t ax = 0; ax <= std::min(a, x); ++ax) {
        OverlapCounts c{a, x, ax};
        double s = sim(c);
        std::string where = "(" + std::to_string(a) + "," + std::to_string(x) +
                            "," + std::to_string(ax) + ")";
        check.expect(s >= 0.0 && s <= 1.0 + 1e-12, "out of range at " + where);
        check.expect(s == sim({x, a, ax}), "asymmetric at " + where);
        if (ax > 0) check.expect(s > prev, "not increasing at " + where);
        if (ax == 0) check.expect(s == 0.0, "sim(.,.,0) != 0 at " + where);
        if (a == x && x == ax && ax > 0) {
          check.expect(std::fabs(s - 1.0) <= 1e-12, "sim(n,n,n) != 1 at " + where);
        }
        prev = s;
      }
    }
  }
  double elapsed = seconds_since(start);
  check.expect(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
}

void condition2_order(Check &check) {
  constexpr std::int64_t kMax = 64;
  for (std::int64_t a = 1; a <= kMax; ++a) {
    for (std::int64_t x = 1; x <= kMax; ++x) {
      std::int64_t m = std::min(a, x);
      for (std::int64_t p = 0; p <= m; ++p) {
        for (std::int64_t q = 0; q <= m; ++q) {
          OverlapCounts cx{a, x, p}, cy{a, x, q};
          Preference pref = compare_condition2(cx, cy);
          double sx = sim(cx), sy = sim(cy);
          Preference by_sim = sx > sy   ? Preference::kX
                              : sx < sy ? Preference::kY
                                        : Preference::kTie;
          check.expect(pref == by_sim, "disagreement at n_a=" + std::to_string(a) +
                                           " n_x=" + std::to_string(x) + " " +
                                           std::to_string(p) + " vs " +
                                           std::to_string(q));
        }
      }
    }
  }
}

std::string url_of(int i) { return "http://oracle.example/" + std::to_string(i); }

void evaluation_oracle(Check &check) {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    int docs = 1 + static_cast<int>(rng() % 50);
    int people = 1 + static_cast<int>(rng() % 5);
    std::vector<int> label(docs);
    CorpusBuilder builder;
    for (int p = 0; p < people; ++p) {
      builder.add_entity({"e" + std::to_string(p), "Person " + std::to_string(p)});
    }
    for (int d = 0; d < docs; ++d) {
      label[d] = static_cast<int>(rng() % (people + 1)) - 1;
      builder.add_document({url_of(d), "s", d + 1});
      if (label[d] >= 0) builder.add_gold("e" + std::to_string(label[d]), url_of(d));
    }
    Corpus corpus = std::move(builder).build();

    int k = 1 + static_cast<int>(rng() % 8);
    std::vector<int> cluster(docs);
    std::map<int, std::set<std::string>> members;
    for (int d = 0; d < docs; ++d) {
      cluster[d] = static_cast<int>(rng() % (k + 1)) - 1;
      if (cluster[d] >= 0) members[cluster[d]].insert(url_of(d));
    }
    Clustering clustering;
    for (const auto &[id, urls] : members) {
      clustering.add_cluster("c" + std::to_string(id), urls);
    }

    for (int d = 0; d < docs; ++d) {
      if (cluster[d] < 0 || label[d] < 0) continue;
      int in_partition = 0, same_both = 0, in_cluster = 0;
      for (int o = 0; o < docs; ++o) {
        if (label[o] == label[d]) ++in_partition;
        if (cluster[o] == cluster[d]) ++in_cluster;
        if (label[o] == label[d] && cluster[o] == cluster[d]) ++same_both;
      }
      double want_rec = static_cast<double>(same_both) / in_partition;
      double want_prec = static_cast<double>(same_both) / in_cluster;
      double rec = rec_of_reference(url_of(d), corpus.gold(), clustering);
      double prec = prec_of_reference(url_of(d), corpus.gold(), clustering);
      check.expect(rec == want_rec, "trial " + std::to_string(trial) + " Rec(" +
                                        url_of(d) + ")");
      check.expect(prec == want_prec, "trial " + std::to_string(trial) +
                                          " Prec(" + url_of(d) + ")");
    }
  }

  CorpusBuilder builder;
  for (int p = 0; p < 3; ++p) {
    builder.add_entity({"e" + std::to_string(p), "Person " + std::to_string(p)});
  }
  for (int d = 0; d < 30; ++d) {
    builder.add_document({url_of(d), "s", d + 1});
    builder.add_gold("e" + std::to_string(d % 3), url_of(d));
  }
  Corpus corpus = std::move(builder).build();
  Clustering perfect;
  for (const auto &[id, urls] : corpus.gold().assignments()) {
    perfect.add_cluster(id, urls);
  }
  auto row = evaluate_clustering(corpus.gold(), perfect, "perfect").row;
  check.expect(row.recall == 1.0 && row.precision == 1.0 && row.f_measure == 1.0,
               "perfect clustering scored " + fmt(row.recall) + "/" +
                   fmt(row.precision) + "/" + fmt(row.f_measure));
}

std::map<std::string, std::string> snapshot(const fs::path &dir) {
  std::map<std::string, std::string> files;
  for (const auto &entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(entry.path(), dir).string()] = ss.str();
  }
  return files;
}

void offline_determinism(Check &check) {
  std::vector<std::map<std::string, std::string>> reports, caches;
  std::vector<fs::path> dirs;
  for (int run = 0; run < 2; ++run) {
    auto work = fresh_dir("ac6");
    run_pipeline(replay_config(work));
    reports.push_back(snapshot(work / "out"));
    caches.push_back(snapshot(work / "cache"));
    dirs.push_back(work);
  }
  check.expect(!reports[0].empty(), "no report files");
  check.expect(!caches[0].empty(), "no cache entries");
  check.expect(reports[0] == reports[1], "report files differ between runs");
  check.expect(caches[0] == caches[1], "cache files differ between runs");
  for (const auto &d : dirs) fs::remove_all(d);
}

void corpus_round_trip(Check &check) {
  auto path = fs::path(DISAMBIG_SOURCE_DIR) / "data" / "table2_replay.jsonl";
  Corpus first = load_corpus(path);
  std::stringstream once, twice;
  save_corpus(first, once);
  std::stringstream reread(once.str());
  Corpus second = parse_corpus(reread);
  save_corpus(second, twice);
  check.expect(once.str() == twice.str(), "save(load(save(c))) != save(c)");
  check.expect(first.documents() == second.documents(), "documents differ");
  check.expect(first.entities() == second.entities(), "entities differ");
  check.expect(first.gold().assignments() == second.gold().assignments(),
               "gold partition differs");

  std::string text =
      R"({"kind":"entity","entity_id":"p1","canonical_name":"Ann Lee"})" "\n"
      R"({"kind":"entity","entity_id":"p2","canonical_name":"Bo Tan"})" "\n"
      R"({"kind":"doc","url":"http://a.example/1","snippet":"Ann Lee","rank":1})" "\n"
      R"({"kind":"gold","entity_id":"p1","url":"http://a.example/1"})" "\n"
      R"({"kind":"gold","entity_id":"p2","url":"HTTP://A.example/1/"})" "\n";
  std::istringstream in(text);
  try {
    parse_corpus(in);
    check.expect(false, "overlapping gold sets were accepted");
  } catch (const CorpusError &e) {
    std::string what = e.what();
    check.expect(e.line() == 5, "diagnostic line " + std::to_string(e.line()));
    check.expect(what.find("line 4") != std::string::npos,
                 "first assignment not cited: " + what);
    check.expect(what.find("p1") != std::string::npos &&
                     what.find("p2") != std::string::npos,
                 "entities not named: " + what);
  }
}

void candidate_generation(Check &check) {
  auto work = fresh_dir("ac8");
  RunConfig config = replay_config(work);
  Corpus corpus = load_corpus(config.corpus);
  auto provider = make_provider(config, corpus);
  Searcher searcher(*provider, nullptr, config.workers);
  auto candidates = candidates_stage(corpus, config, searcher);
  check.expect(candidates.size() == 26,
               "candidate count " + std::to_string(candidates.size()));
  for (auto keyword : fixtures::kTable2Keywords) {
    bool found = std::any_of(candidates.begin(), candidates.end(),
                             [&](const auto &c) { return c.word == keyword; });
    check.expect(found, "missing candidate " + std::string(keyword));
  }
  fs::remove_all(work);
}

struct Criterion {
  int number;
  const char *title;
  std::function<void(Check &)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "replay fixture rows for science and Overlap", table2_replay},
      {2, "F-measure arithmetic", f_measure_arithmetic},
      {3, "similarity properties over all counts up to 64", sim_properties},
      {4, "condition 2 agrees with similarity order", condition2_order},
      {5, "evaluation matches naive recount oracle", evaluation_oracle},
      {6, "offline runs are byte-identical", offline_determinism},
      {7, "corpus round trip and disjointness diagnostics", corpus_round_trip},
      {8, "26 candidates including the 11 keywords", candidate_generation},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    Check check;
    try {
      c.run(check);
    } catch (const std::exception &e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  AC%d  %s%s\n", check.ok() ? "PASS" : "FAIL", c.number,
                c.title, check.ok() ? "" : check.summary().c_str());
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
