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

#ifndef DISAMBIG_SEARCH_H_
#define DISAMBIG_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/corpus.h"
#include "json.hpp"

namespace disambig {

// A search term: one or more case-folded words. Quoted terms match as a
// contiguous phrase; unquoted terms match when every word is present.
class SearchTerm {
 public:
  // Throws UsageError when the text has no words.
  SearchTerm(std::string_view text, bool quoted);
  SearchTerm(std::vector<std::string> words, bool quoted);

  static SearchTerm phrase(std::string_view text) { return {text, true}; }
  static SearchTerm word(std::string_view text) { return {text, false}; }

  const std::vector<std::string> &words() const { return words_; }
  bool quoted() const { return quoted_; }

  // "w1 w2" for unquoted terms, "\"w1 w2\"" for quoted ones.
  std::string canonical() const;

  // True when the tokenized text satisfies this term.
  bool matches(std::span<const std::string> tokens) const;

  bool operator==(const SearchTerm &) const = default;

 private:
  std::vector<std::string> words_;
  bool quoted_;
};

// A single term (Omega_x) or a conjunction of two terms.
class Query {
 public:
  explicit Query(SearchTerm term);
  Query(SearchTerm first, SearchTerm second);
  // Throws UsageError unless 1 <= terms.size() <= 2.
  explicit Query(std::vector<SearchTerm> terms);

  const std::vector<SearchTerm> &terms() const { return terms_; }

  // Terms joined by ',' e.g. "\"abdul razak hamdan\",science".
  std::string canonical() const;

  // Parses the canonical form back.
  static Query parse(std::string_view canonical);

  bool matches(std::span<const std::string> tokens) const;

  bool operator==(const Query &) const = default;

 private:
  std::vector<SearchTerm> terms_;
};

struct QueryOutcome {
  Query query;
  // Provider-reported result count. Exact for the offline provider.
  std::int64_t hit_count = 0;
  // Set when hit_count is an engine estimate rather than an exact count.
  bool hit_count_estimated = false;
  // Rank order, distinct urls.
  std::vector<DocRef> results;
  // More matches existed than were returned.
  bool truncated = false;

  bool operator==(const QueryOutcome &) const = default;
};

nlohmann::json to_json(const QueryOutcome &outcome);
// Throws MalformedResponseError when the document does not describe a valid
// outcome.
QueryOutcome outcome_from_json(const nlohmann::json &doc);

class Provider {
 public:
  virtual ~Provider() = default;

  // Stable identifier that distinguishes cached results of different
  // providers and data sources.
  virtual std::string id() const = 0;

  // True when identical queries always produce identical outcomes.
  virtual bool deterministic() const = 0;

  // Must be safe to call concurrently.
  virtual QueryOutcome search(const Query &query, std::size_t max_results) = 0;
};

// Validates max_results >= 1 and delegates to the provider.
QueryOutcome search(Provider &provider, const Query &query,
                    std::size_t max_results);

// Corpus-backed provider: a document matches when its tokenized snippet
// satisfies every term. Results are ordered by (rank, url).
class OfflineProvider : public Provider {
 public:
  explicit OfflineProvider(const Corpus &corpus);

  std::string id() const override { return id_; }
  bool deterministic() const override { return true; }
  QueryOutcome search(const Query &query, std::size_t max_results) override;

 private:
  struct Entry {
    const DocRef *doc;
    std::vector<std::string> tokens;
  };

  std::vector<Entry> entries_;
  std::string id_;
};

// |urls(a) intersect urls(b)| under url normalization.
std::size_t intersection_count(const QueryOutcome &a, const QueryOutcome &b);

// Tokenization used for term matching: case-folded alphanumeric runs of any
// length.
std::vector<std::string> match_tokens(std::string_view text);

}  // namespace disambig

#endif  // DISAMBIG_SEARCH_H_
