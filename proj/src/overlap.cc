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

#include "disambig/overlap.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "disambig/error.h"

namespace disambig {

double sim(const OverlapCounts &c) {
  if (c.n_ax >= 1 && c.n_a + c.n_x < 2) {
    throw std::domain_error("sim undefined: n_ax >= 1 with n_a + n_x < 2");
  }
  if (!c.consistent()) {
    throw std::invalid_argument("inconsistent overlap counts");
  }
  if (c.n_ax == 0) return 0.0;
  return std::log(2.0 * static_cast<double>(c.n_ax)) /
         std::log(static_cast<double>(c.n_a + c.n_x));
}

bool check_condition1(const SearchTerm &name, const SearchTerm &keyword,
                      const QueryOutcome &outcome) {
  for (const auto &w : keyword.words()) {
    const auto &nw = name.words();
    if (std::find(nw.begin(), nw.end(), w) != nw.end()) return false;
  }
  return std::any_of(outcome.results.begin(), outcome.results.end(),
                     [&](const DocRef &doc) {
                       auto tokens = match_tokens(doc.snippet);
                       return name.matches(tokens) && keyword.matches(tokens);
                     });
}

Preference compare_condition2(const OverlapCounts &x, const OverlapCounts &y) {
  if (x.n_a != y.n_a || x.n_x != y.n_x) {
    throw std::invalid_argument(
        "condition 2 compares keywords with equal marginals only");
  }
  if (x.n_ax > y.n_ax) return Preference::kX;
  if (x.n_ax < y.n_ax) return Preference::kY;
  return Preference::kTie;
}

std::vector<ScoredKeyword> rank_keywords(
    std::span<const CandidateKeyword> candidates, const SearchTerm &name,
    const QueryOutcome &name_outcome,
    const std::map<std::string, KeywordOutcomes> &outcomes,
    CountSource source) {
  auto count = [source](const QueryOutcome &o) {
    return source == CountSource::kHitCount
               ? o.hit_count
               : static_cast<std::int64_t>(o.results.size());
  };

  std::vector<ScoredKeyword> scored;
  scored.reserve(candidates.size());
  for (const auto &candidate : candidates) {
    auto it = outcomes.find(candidate.word);
    if (it == outcomes.end()) {
      throw DataError("no search outcome for candidate '" + candidate.word +
                      "'");
    }
    ScoredKeyword s;
    s.word = candidate.word;
    s.counts.n_a = count(name_outcome);
    s.counts.n_x = count(it->second.keyword);
    // Engine estimates can disagree with each other; the overlap can never
    // exceed either marginal.
    s.counts.n_ax = std::min({count(it->second.conjunctive), s.counts.n_a,
                              s.counts.n_x});
    s.sim = sim(s.counts);
    s.condition1_met = check_condition1(name, SearchTerm::word(candidate.word),
                                        it->second.conjunctive);
    scored.push_back(std::move(s));
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredKeyword &a, const ScoredKeyword &b) {
              if (a.condition1_met != b.condition1_met) return a.condition1_met;
              if (a.sim != b.sim) return a.sim > b.sim;
              if (a.counts.n_ax != b.counts.n_ax) {
                return a.counts.n_ax > b.counts.n_ax;
              }
              return a.word < b.word;
            });
  return scored;
}

std::vector<std::string> select_keywords(std::span<const ScoredKeyword> ranked,
                                         std::size_t top_k) {
  std::vector<std::string> out;
  for (const auto &s : ranked) {
    if (out.size() == top_k) break;
    if (s.condition1_met) out.push_back(s.word);
  }
  return out;
}

void write_scores(std::span<const ScoredKeyword> scores, std::ostream &out) {
  char buf[32];
  for (const auto &s : scores) {
    std::snprintf(buf, sizeof(buf), "%.6f", s.sim);
    out << s.word << '\t' << s.counts.n_a << '\t' << s.counts.n_x << '\t'
        << s.counts.n_ax << '\t' << buf << '\t' << (s.condition1_met ? 1 : 0)
        << '\n';
  }
}

std::vector<ScoredKeyword> read_scores(std::istream &in) {
  std::vector<ScoredKeyword> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    ScoredKeyword s;
    int cond = -1;
    std::string rest;
    if (!std::getline(fields, s.word, '\t') ||
        !(fields >> s.counts.n_a >> s.counts.n_x >> s.counts.n_ax >> s.sim >>
          cond) ||
        (cond != 0 && cond != 1) || (fields >> rest) ||
        !s.counts.consistent()) {
      throw DataError("scores line " + std::to_string(number) +
                      ": expected word<TAB>n_a<TAB>n_x<TAB>n_ax<TAB>sim<TAB>cond1");
    }
    s.condition1_met = cond == 1;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace disambig
