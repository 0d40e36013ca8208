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

#ifndef DISAMBIG_KEYWORDS_H_
#define DISAMBIG_KEYWORDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/corpus.h"

namespace disambig {

struct TokenizerConfig {
  bool case_fold = true;
  std::size_t min_token_len = 2;
  // When false, tokens are split on whitespace only and keep punctuation.
  bool strip_non_alphanumeric = true;
  std::set<std::string, std::less<>> stopwords;
};

// Splits text into words. Bytes >= 0x80 count as word characters so UTF-8
// sequences are never cut; only ASCII letters are case-folded.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig &config = {});

struct CandidateKeyword {
  std::string word;
  // Number of snippets containing the word.
  std::int64_t snippet_frequency = 0;
  // Total occurrences over all snippets.
  std::int64_t corpus_frequency = 0;

  bool operator==(const CandidateKeyword &) const = default;
};

struct CandidateOptions {
  std::int64_t min_snippet_freq = 5;
  std::size_t max_candidates = 100;
};

// Candidate keywords for a person from the snippets returned for the
// person's name. Words that occur in any alias are never candidates. Sorted
// by snippet frequency (descending), then word.
std::vector<CandidateKeyword> generate_candidates(
    std::span<const DocRef> snippets, const PersonEntity &person,
    const TokenizerConfig &config = {}, const CandidateOptions &options = {});

// One word per line; blank lines and lines starting with '#' are skipped.
std::set<std::string, std::less<>> load_stopwords(
    const std::filesystem::path &path);

// word<TAB>snippet_freq<TAB>corpus_freq, one candidate per line.
void write_candidates(std::span<const CandidateKeyword> candidates,
                      std::ostream &out);
std::vector<CandidateKeyword> read_candidates(std::istream &in);

}  // namespace disambig

#endif  // DISAMBIG_KEYWORDS_H_
