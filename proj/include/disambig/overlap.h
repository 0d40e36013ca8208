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

#ifndef DISAMBIG_OVERLAP_H_
#define DISAMBIG_OVERLAP_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "disambig/keywords.h"
#include "disambig/search.h"

namespace disambig {

// Result-set sizes for a name term a and a keyword term x.
struct OverlapCounts {
  std::int64_t n_a = 0;   // |Omega_a|
  std::int64_t n_x = 0;   // |Omega_x|
  std::int64_t n_ax = 0;  // |Omega_a intersect Omega_x|

  bool consistent() const {
    return n_a >= 0 && n_x >= 0 && n_ax >= 0 && n_ax <= n_a && n_ax <= n_x;
  }
  bool operator==(const OverlapCounts &) const = default;
};

// log(2 n_ax) / log(n_a + n_x), in [0, 1]. Zero when n_ax == 0.
// Throws std::domain_error when n_ax >= 1 but n_a + n_x < 2, and
// std::invalid_argument for inconsistent counts.
double sim(const OverlapCounts &counts);

// The name and keyword share no word, and at least one snippet of the
// conjunctive outcome contains both terms.
bool check_condition1(const SearchTerm &name, const SearchTerm &keyword,
                      const QueryOutcome &outcome);

enum class Preference { kX, kY, kTie };

// Prefers the keyword with the larger overlap with the name. Only defined for
// equal marginals (same n_a and n_x); anything else throws
// std::invalid_argument.
Preference compare_condition2(const OverlapCounts &x, const OverlapCounts &y);

struct ScoredKeyword {
  std::string word;
  OverlapCounts counts;
  double sim = 0.0;
  bool condition1_met = false;

  bool operator==(const ScoredKeyword &) const = default;
};

// Outcomes gathered for one candidate.
struct KeywordOutcomes {
  QueryOutcome keyword;      // the keyword alone
  QueryOutcome conjunctive;  // (name, keyword)
};

enum class CountSource {
  // Sizes of the returned result lists.
  kMaterialized,
  // Provider hit counts (estimates for live engines).
  kHitCount,
};

// Scores every candidate and sorts by (condition1_met desc, sim desc,
// n_ax desc, word asc). Throws DataError when a candidate has no outcomes.
std::vector<ScoredKeyword> rank_keywords(
    std::span<const CandidateKeyword> candidates, const SearchTerm &name,
    const QueryOutcome &name_outcome,
    const std::map<std::string, KeywordOutcomes> &outcomes,
    CountSource source = CountSource::kMaterialized);

// The first top_k ranked keywords that satisfy condition 1.
std::vector<std::string> select_keywords(std::span<const ScoredKeyword> ranked,
                                         std::size_t top_k);

// word<TAB>n_a<TAB>n_x<TAB>n_ax<TAB>sim<TAB>cond1 with sim to 6 decimals and
// cond1 as 1/0.
void write_scores(std::span<const ScoredKeyword> scores, std::ostream &out);
std::vector<ScoredKeyword> read_scores(std::istream &in);

}  // namespace disambig

#endif  // DISAMBIG_OVERLAP_H_
