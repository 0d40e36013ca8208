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

#ifndef DISAMBIG_CORPUS_H_
#define DISAMBIG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace disambig {

// A real-world person. The alias list always starts with the canonical name.
struct PersonEntity {
  std::string entity_id;
  std::string canonical_name;
  std::vector<std::string> aliases;
  std::optional<std::string> description;

  bool operator==(const PersonEntity &) const = default;
};

// One search result / web document reference. The normalized url is the
// identity key.
struct DocRef {
  std::string url;
  std::string snippet;
  std::int64_t rank = 0;
  bool full_page_available = false;

  bool operator==(const DocRef &) const = default;
};

// Gold assignment of document urls to entities. Url sets are pairwise
// disjoint.
class GoldPartition {
 public:
  const std::map<std::string, std::set<std::string>> &assignments() const {
    return assignments_;
  }

  // Entity the url is labeled with, if any.
  std::optional<std::string_view> label_of(std::string_view url) const;

  // Members of the entity's gold set; empty when the entity has no labels.
  const std::set<std::string> &members(std::string_view entity_id) const;

  std::size_t labeled_count() const { return label_.size(); }

 private:
  friend class CorpusBuilder;

  std::map<std::string, std::set<std::string>> assignments_;
  std::map<std::string, std::string, std::less<>> label_;
};

struct LoadOptions {
  // Snippets longer than this many words are flagged in Corpus::warnings().
  std::size_t snippet_word_cap = 50;
};

// Immutable after construction; build through CorpusBuilder or load_corpus.
class Corpus {
 public:
  Corpus() = default;
  Corpus(const Corpus &) = delete;
  Corpus &operator=(const Corpus &) = delete;
  Corpus(Corpus &&) = default;
  Corpus &operator=(Corpus &&) = default;

  // Entities sorted by entity_id.
  const std::vector<PersonEntity> &entities() const { return entities_; }
  const std::map<std::string, DocRef, std::less<>> &documents() const {
    return documents_;
  }
  const GoldPartition &gold() const { return gold_; }

  // Documents ordered by (rank, url).
  const std::vector<const DocRef *> &by_rank() const { return by_rank_; }

  const PersonEntity *find_entity(std::string_view entity_id) const;
  const PersonEntity &entity(std::string_view entity_id) const;
  const DocRef *find_document(std::string_view url) const;

  // Non-fatal findings, e.g. snippets over the word cap.
  const std::vector<std::string> &warnings() const { return warnings_; }

 private:
  friend class CorpusBuilder;

  std::vector<PersonEntity> entities_;
  std::map<std::string, DocRef, std::less<>> documents_;
  GoldPartition gold_;
  std::vector<const DocRef *> by_rank_;
  std::vector<std::string> warnings_;
};

// Accumulates records, checks every corpus invariant and produces a Corpus.
// The line argument only feeds diagnostics; pass 0 for programmatic input.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(LoadOptions options = {}) : options_(options) {}

  void add_entity(PersonEntity entity, std::size_t line = 0);
  void add_document(DocRef doc, std::size_t line = 0);
  void add_gold(std::string_view entity_id, std::string_view url,
                std::size_t line = 0);

  Corpus build() &&;

 private:
  struct PendingGold {
    std::string entity_id;
    std::string url;
    std::size_t line;
  };

  LoadOptions options_;
  Corpus corpus_;
  std::map<std::string, std::size_t> entity_lines_;
  std::vector<PendingGold> gold_;
};

Corpus parse_corpus(std::istream &in, const LoadOptions &options = {});
Corpus load_corpus(const std::filesystem::path &path,
                   const LoadOptions &options = {});

// Canonical serialization: entities by entity_id, documents by url, gold
// records by (entity_id, url). One JSON object per line.
void save_corpus(const Corpus &corpus, std::ostream &out);
void save_corpus(const Corpus &corpus, const std::filesystem::path &path);

// Gold urls of one entity. Throws DataError for an unknown entity.
const std::set<std::string> &gold_set(const Corpus &corpus,
                                      std::string_view entity_id);

std::size_t word_count(std::string_view text);

}  // namespace disambig

#endif  // DISAMBIG_CORPUS_H_
