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

#include "disambig/keywords.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "disambig/error.h"

namespace disambig {
namespace {

// Length of the UTF-8 sequence starting at text[i], clamped to the input.
std::size_t sequence_length(std::string_view text, std::size_t i) {
  auto c = static_cast<unsigned char>(text[i]);
  std::size_t n = c < 0x80 ? 1 : c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : c >= 0xC0 ? 2 : 1;
  return std::min(n, text.size() - i);
}

// Code point of a well-formed sequence, or 0 for stray bytes.
char32_t decode(std::string_view seq) {
  auto b = [&](std::size_t k) { return static_cast<unsigned char>(seq[k]); };
  switch (seq.size()) {
    case 1: return b(0);
    case 2: return (char32_t(b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3: return (char32_t(b(0) & 0x0F) << 12) | (char32_t(b(1) & 0x3F) << 6) |
                   (b(2) & 0x3F);
    case 4: return (char32_t(b(0) & 0x07) << 18) | (char32_t(b(1) & 0x3F) << 12) |
                   (char32_t(b(2) & 0x3F) << 6) | (b(3) & 0x3F);
  }
  return 0;
}

// Non-ASCII letters stay inside words; Latin-1 and general punctuation,
// symbol blocks and CJK punctuation separate them.
bool is_word_code_point(char32_t cp) {
  if (cp < 0x80) return std::isalnum(static_cast<unsigned char>(cp)) != 0;
  if (cp >= 0xA0 && cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp == 0xFEFF) return false;
  return true;
}

std::int64_t parse_count(std::string_view field, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 0) {
    throw DataError("candidates line " + std::to_string(line) +
                    ": bad count '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig &config) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= config.min_token_len &&
        !config.stopwords.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (std::size_t i = 0; i < text.size();) {
    std::string_view seq = text.substr(i, sequence_length(text, i));
    i += seq.size();
    bool keep = config.strip_non_alphanumeric
                    ? is_word_code_point(decode(seq))
                    : !std::isspace(static_cast<unsigned char>(seq[0]));
    if (!keep) {
      flush();
      continue;
    }
    if (seq.size() == 1 && config.case_fold) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(seq[0]))));
    } else {
      current.append(seq);
    }
  }
  flush();
  return tokens;
}

std::vector<CandidateKeyword> generate_candidates(
    std::span<const DocRef> snippets, const PersonEntity &person,
    const TokenizerConfig &config, const CandidateOptions &options) {
  // Alias words are excluded regardless of length or stopword settings.
  TokenizerConfig alias_config = config;
  alias_config.min_token_len = 1;
  alias_config.stopwords.clear();
  std::set<std::string, std::less<>> excluded;
  for (const auto &alias : person.aliases) {
    for (auto &word : tokenize(alias, alias_config)) excluded.insert(word);
  }
  for (auto &word : tokenize(person.canonical_name, alias_config)) {
    excluded.insert(word);
  }

  std::map<std::string, CandidateKeyword, std::less<>> counts;
  for (const auto &doc : snippets) {
    std::set<std::string_view> seen;
    auto words = tokenize(doc.snippet, config);
    for (const auto &word : words) {
      if (excluded.contains(word)) continue;
      auto &entry = counts[word];
      ++entry.corpus_frequency;
      if (seen.insert(word).second) ++entry.snippet_frequency;
    }
  }

  std::vector<CandidateKeyword> out;
  for (auto &[word, entry] : counts) {
    if (entry.snippet_frequency < options.min_snippet_freq) continue;
    entry.word = word;
    out.push_back(entry);
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateKeyword &a, const CandidateKeyword &b) {
              if (a.snippet_frequency != b.snippet_frequency) {
                return a.snippet_frequency > b.snippet_frequency;
              }
              return a.word < b.word;
            });
  if (out.size() > options.max_candidates) out.resize(options.max_candidates);
  return out;
}

std::set<std::string, std::less<>> load_stopwords(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read stopword file " + path.string());
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = tokenize(line, {.min_token_len = 1});
    if (line.starts_with('#') || tokens.empty()) continue;
    for (auto &token : tokens) words.insert(std::move(token));
  }
  return words;
}

void write_candidates(std::span<const CandidateKeyword> candidates,
                      std::ostream &out) {
  for (const auto &c : candidates) {
    out << c.word << '\t' << c.snippet_frequency << '\t' << c.corpus_frequency
        << '\n';
  }
}

std::vector<CandidateKeyword> read_candidates(std::istream &in) {
  std::vector<CandidateKeyword> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto first = line.find('\t');
    auto second = first == std::string::npos ? first : line.find('\t', first + 1);
    if (second == std::string::npos ||
        line.find('\t', second + 1) != std::string::npos || first == 0) {
      throw DataError("candidates line " + std::to_string(number) +
                      ": expected word<TAB>snippet_freq<TAB>corpus_freq");
    }
    CandidateKeyword c;
    c.word = line.substr(0, first);
    std::string_view view(line);
    c.snippet_frequency =
        parse_count(view.substr(first + 1, second - first - 1), number);
    c.corpus_frequency = parse_count(view.substr(second + 1), number);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace disambig
