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

#include "disambig/search.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "disambig/digest.h"
#include "disambig/error.h"
#include "disambig/keywords.h"
#include "disambig/url.h"

namespace disambig {
namespace {

using nlohmann::json;

std::vector<std::string> term_words(std::string_view text) {
  auto words = match_tokens(text);
  if (words.empty()) {
    throw UsageError("search term '" + std::string(text) + "' has no words");
  }
  return words;
}

}  // namespace

std::vector<std::string> match_tokens(std::string_view text) {
  return tokenize(text, {.min_token_len = 1});
}

SearchTerm::SearchTerm(std::string_view text, bool quoted)
    : words_(term_words(text)), quoted_(quoted) {}

SearchTerm::SearchTerm(std::vector<std::string> words, bool quoted)
    : quoted_(quoted) {
  for (const auto &w : words) {
    for (auto &token : match_tokens(w)) words_.push_back(std::move(token));
  }
  if (words_.empty()) throw UsageError("search term has no words");
}

std::string SearchTerm::canonical() const {
  std::string out;
  for (const auto &w : words_) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return quoted_ ? '"' + out + '"' : out;
}

bool SearchTerm::matches(std::span<const std::string> tokens) const {
  if (quoted_) {
    return std::search(tokens.begin(), tokens.end(), words_.begin(),
                       words_.end()) != tokens.end();
  }
  return std::all_of(words_.begin(), words_.end(), [&](const std::string &w) {
    return std::find(tokens.begin(), tokens.end(), w) != tokens.end();
  });
}

Query::Query(SearchTerm term) { terms_.push_back(std::move(term)); }

Query::Query(SearchTerm first, SearchTerm second) {
  terms_.push_back(std::move(first));
  terms_.push_back(std::move(second));
}

Query::Query(std::vector<SearchTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty() || terms_.size() > 2) {
    throw UsageError("a query has one or two terms, got " +
                     std::to_string(terms_.size()));
  }
}

std::string Query::canonical() const {
  std::string out;
  for (const auto &term : terms_) {
    if (!out.empty()) out.push_back(',');
    out += term.canonical();
  }
  return out;
}

Query Query::parse(std::string_view canonical) {
  std::vector<SearchTerm> terms;
  std::string current;
  bool in_quotes = false;
  bool quoted = false;
  auto flush = [&] {
    terms.emplace_back(current, quoted);
    current.clear();
    quoted = false;
  };
  for (char c : canonical) {
    if (c == '"') {
      in_quotes = !in_quotes;
      quoted = true;
    } else if (c == ',' && !in_quotes) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  if (in_quotes) {
    throw UsageError("unbalanced quote in query '" + std::string(canonical) +
                     "'");
  }
  flush();
  return Query(std::move(terms));
}

bool Query::matches(std::span<const std::string> tokens) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const SearchTerm &t) { return t.matches(tokens); });
}

json to_json(const QueryOutcome &outcome) {
  json results = json::array();
  for (const auto &doc : outcome.results) {
    results.push_back({{"url", doc.url},
                       {"snippet", doc.snippet},
                       {"rank", doc.rank},
                       {"full_page_available", doc.full_page_available}});
  }
  return {{"query", outcome.query.canonical()},
          {"hit_count", outcome.hit_count},
          {"hit_count_estimated", outcome.hit_count_estimated},
          {"truncated", outcome.truncated},
          {"results", std::move(results)}};
}

QueryOutcome outcome_from_json(const json &doc) {
  try {
    if (!doc.is_object()) throw MalformedResponseError("outcome is not an object");
    QueryOutcome out{Query::parse(doc.at("query").get<std::string>())};
    out.hit_count = doc.at("hit_count").get<std::int64_t>();
    out.hit_count_estimated = doc.value("hit_count_estimated", false);
    out.truncated = doc.value("truncated", false);
    std::set<std::string> seen;
    for (const auto &r : doc.at("results")) {
      DocRef ref;
      ref.url = normalize_url(r.at("url").get<std::string>());
      ref.snippet = r.value("snippet", "");
      ref.rank = r.value("rank", static_cast<std::int64_t>(out.results.size()));
      ref.full_page_available = r.value("full_page_available", false);
      if (!seen.insert(ref.url).second) {
        throw MalformedResponseError("duplicate result url " + ref.url);
      }
      out.results.push_back(std::move(ref));
    }
    if (out.hit_count < 0) throw MalformedResponseError("negative hit_count");
    if (!out.hit_count_estimated &&
        static_cast<std::int64_t>(out.results.size()) > out.hit_count) {
      throw MalformedResponseError("more results than hit_count");
    }
    return out;
  } catch (const json::exception &e) {
    throw MalformedResponseError(std::string("malformed outcome: ") + e.what());
  } catch (const UsageError &e) {
    throw MalformedResponseError(std::string("malformed outcome: ") + e.what());
  }
}

QueryOutcome search(Provider &provider, const Query &query,
                    std::size_t max_results) {
  if (max_results < 1) throw UsageError("max_results must be at least 1");
  return provider.search(query, max_results);
}

OfflineProvider::OfflineProvider(const Corpus &corpus) {
  for (const DocRef *doc : corpus.by_rank()) {
    entries_.push_back({doc, match_tokens(doc->snippet)});
  }
  std::ostringstream canonical;
  save_corpus(corpus, canonical);
  id_ = "offline:" + sha256_hex(canonical.str()).substr(0, 16);
}

QueryOutcome OfflineProvider::search(const Query &query,
                                     std::size_t max_results) {
  QueryOutcome out{query};
  for (const auto &entry : entries_) {
    if (!query.matches(entry.tokens)) continue;
    ++out.hit_count;
    if (out.results.size() < max_results) {
      out.results.push_back(*entry.doc);
    } else {
      out.truncated = true;
    }
  }
  return out;
}

std::size_t intersection_count(const QueryOutcome &a, const QueryOutcome &b) {
  std::set<std::string> urls;
  for (const auto &doc : a.results) urls.insert(normalize_url(doc.url));
  std::set<std::string> counted;
  for (const auto &doc : b.results) {
    auto url = normalize_url(doc.url);
    if (urls.contains(url)) counted.insert(std::move(url));
  }
  return counted.size();
}

}  // namespace disambig
