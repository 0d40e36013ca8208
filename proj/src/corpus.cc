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

#include "disambig/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "disambig/error.h"
#include "disambig/url.h"
#include "json.hpp"

namespace disambig {
namespace {

using nlohmann::json;

const std::set<std::string> kEmptySet;

std::string require_string(const json &record, const char *field,
                           std::size_t line) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string()) {
    throw CorpusError(line, std::string("missing or non-string field '") +
                                field + "'");
  }
  return it->get<std::string>();
}

PersonEntity parse_entity(const json &record, std::size_t line) {
  PersonEntity entity;
  entity.entity_id = require_string(record, "entity_id", line);
  entity.canonical_name = require_string(record, "canonical_name", line);
  if (auto it = record.find("aliases"); it != record.end()) {
    if (!it->is_array()) throw CorpusError(line, "'aliases' must be an array");
    for (const auto &alias : *it) {
      if (!alias.is_string()) {
        throw CorpusError(line, "'aliases' must contain strings");
      }
      entity.aliases.push_back(alias.get<std::string>());
    }
  }
  if (auto it = record.find("description"); it != record.end() &&
                                            !it->is_null()) {
    if (!it->is_string()) {
      throw CorpusError(line, "'description' must be a string");
    }
    entity.description = it->get<std::string>();
  }
  return entity;
}

DocRef parse_doc(const json &record, std::size_t line) {
  DocRef doc;
  doc.url = require_string(record, "url", line);
  doc.snippet = require_string(record, "snippet", line);
  auto rank = record.find("rank");
  if (rank == record.end() || !rank->is_number_integer()) {
    throw CorpusError(line, "missing or non-integer field 'rank'");
  }
  doc.rank = rank->get<std::int64_t>();
  if (auto it = record.find("full_page_available"); it != record.end()) {
    if (!it->is_boolean()) {
      throw CorpusError(line, "'full_page_available' must be a boolean");
    }
    doc.full_page_available = it->get<bool>();
  }
  return doc;
}

}  // namespace

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

std::optional<std::string_view> GoldPartition::label_of(
    std::string_view url) const {
  auto it = label_.find(url);
  if (it == label_.end()) return std::nullopt;
  return std::string_view(it->second);
}

const std::set<std::string> &GoldPartition::members(
    std::string_view entity_id) const {
  auto it = assignments_.find(std::string(entity_id));
  return it == assignments_.end() ? kEmptySet : it->second;
}

const PersonEntity *Corpus::find_entity(std::string_view entity_id) const {
  auto it = std::lower_bound(
      entities_.begin(), entities_.end(), entity_id,
      [](const PersonEntity &e, std::string_view id) { return e.entity_id < id; });
  if (it == entities_.end() || it->entity_id != entity_id) return nullptr;
  return &*it;
}

const PersonEntity &Corpus::entity(std::string_view entity_id) const {
  const PersonEntity *e = find_entity(entity_id);
  if (e == nullptr) {
    throw DataError("unknown entity '" + std::string(entity_id) + "'");
  }
  return *e;
}

const DocRef *Corpus::find_document(std::string_view url) const {
  auto it = documents_.find(url);
  return it == documents_.end() ? nullptr : &it->second;
}

void CorpusBuilder::add_entity(PersonEntity entity, std::size_t line) {
  if (entity.entity_id.empty()) throw CorpusError(line, "empty entity_id");
  if (word_count(entity.canonical_name) == 0) {
    throw CorpusError(line, "entity '" + entity.entity_id +
                                "' has an empty canonical_name");
  }
  auto [it, inserted] = entity_lines_.emplace(entity.entity_id, line);
  if (!inserted) {
    throw CorpusError(line, "duplicate entity_id '" + entity.entity_id +
                                "' (first defined on line " +
                                std::to_string(it->second) + ")");
  }

  // Canonical name first, remaining aliases in input order, no duplicates.
  std::vector<std::string> aliases{entity.canonical_name};
  for (auto &alias : entity.aliases) {
    if (word_count(alias) == 0) {
      throw CorpusError(line, "entity '" + entity.entity_id +
                                  "' has an empty alias");
    }
    if (std::find(aliases.begin(), aliases.end(), alias) == aliases.end()) {
      aliases.push_back(std::move(alias));
    }
  }
  entity.aliases = std::move(aliases);
  corpus_.entities_.push_back(std::move(entity));
}

void CorpusBuilder::add_document(DocRef doc, std::size_t line) {
  if (doc.url.empty()) throw CorpusError(line, "empty url");
  if (doc.rank < 0) {
    throw CorpusError(line, "negative rank for url " + doc.url);
  }
  doc.url = normalize_url(doc.url);
  std::size_t words = word_count(doc.snippet);
  if (words > options_.snippet_word_cap) {
    std::ostringstream msg;
    if (line > 0) msg << "line " << line << ": ";
    msg << "snippet of " << doc.url << " has " << words << " words (cap "
        << options_.snippet_word_cap << ")";
    corpus_.warnings_.push_back(msg.str());
  }
  std::string key = doc.url;
  auto [it, inserted] = corpus_.documents_.emplace(key, std::move(doc));
  if (!inserted) throw CorpusError(line, "duplicate url " + key);
}

void CorpusBuilder::add_gold(std::string_view entity_id, std::string_view url,
                             std::size_t line) {
  gold_.push_back({std::string(entity_id), normalize_url(url), line});
}

Corpus CorpusBuilder::build() && {
  if (corpus_.entities_.empty()) throw CorpusError(0, "corpus has no entities");
  std::sort(corpus_.entities_.begin(), corpus_.entities_.end(),
            [](const PersonEntity &a, const PersonEntity &b) {
              return a.entity_id < b.entity_id;
            });

  GoldPartition &gold = corpus_.gold_;
  std::map<std::string, std::size_t> label_lines;
  for (const auto &record : gold_) {
    if (corpus_.find_entity(record.entity_id) == nullptr) {
      throw CorpusError(record.line, "gold label names unknown entity '" +
                                         record.entity_id + "'");
    }
    if (corpus_.find_document(record.url) == nullptr) {
      throw CorpusError(record.line, "gold url " + record.url +
                                         " is not in the document store");
    }
    auto existing = gold.label_.find(record.url);
    if (existing != gold.label_.end()) {
      if (existing->second == record.entity_id) continue;
      throw CorpusError(
          record.line,
          "overlapping gold sets: url " + record.url + " is labeled for '" +
              existing->second + "' (line " +
              std::to_string(label_lines[record.url]) + ") and '" +
              record.entity_id + "'");
    }
    gold.label_.emplace(record.url, record.entity_id);
    label_lines[record.url] = record.line;
    gold.assignments_[record.entity_id].insert(record.url);
  }
  for (const auto &entity : corpus_.entities_) {
    gold.assignments_.try_emplace(entity.entity_id);
  }

  for (const auto &[url, doc] : corpus_.documents_) {
    corpus_.by_rank_.push_back(&doc);
  }
  std::stable_sort(corpus_.by_rank_.begin(), corpus_.by_rank_.end(),
                   [](const DocRef *a, const DocRef *b) {
                     return a->rank < b->rank;
                   });
  return std::move(corpus_);
}

Corpus parse_corpus(std::istream &in, const LoadOptions &options) {
  CorpusBuilder builder(options);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error &e) {
      throw CorpusError(line, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) {
      throw CorpusError(line, "malformed record: not a JSON object");
    }
    std::string kind = require_string(record, "kind", line);
    if (kind == "entity") {
      builder.add_entity(parse_entity(record, line), line);
    } else if (kind == "doc") {
      builder.add_document(parse_doc(record, line), line);
    } else if (kind == "gold") {
      builder.add_gold(require_string(record, "entity_id", line),
                       require_string(record, "url", line), line);
    } else {
      throw CorpusError(line, "unknown record kind '" + kind + "'");
    }
  }
  return std::move(builder).build();
}

Corpus load_corpus(const std::filesystem::path &path,
                   const LoadOptions &options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read corpus file " + path.string());
  return parse_corpus(in, options);
}

void save_corpus(const Corpus &corpus, std::ostream &out) {
  for (const auto &entity : corpus.entities()) {
    json record = {{"kind", "entity"},
                   {"entity_id", entity.entity_id},
                   {"canonical_name", entity.canonical_name},
                   {"aliases", entity.aliases}};
    if (entity.description) record["description"] = *entity.description;
    out << record.dump() << '\n';
  }
  for (const auto &[url, doc] : corpus.documents()) {
    json record = {{"kind", "doc"},
                   {"url", doc.url},
                   {"snippet", doc.snippet},
                   {"rank", doc.rank},
                   {"full_page_available", doc.full_page_available}};
    out << record.dump() << '\n';
  }
  for (const auto &[entity_id, urls] : corpus.gold().assignments()) {
    for (const auto &url : urls) {
      json record = {{"kind", "gold"}, {"entity_id", entity_id}, {"url", url}};
      out << record.dump() << '\n';
    }
  }
}

void save_corpus(const Corpus &corpus, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file " + path.string());
  save_corpus(corpus, out);
  if (!out) throw DataError("write failed for " + path.string());
}

const std::set<std::string> &gold_set(const Corpus &corpus,
                                      std::string_view entity_id) {
  corpus.entity(entity_id);
  return corpus.gold().members(entity_id);
}

}  // namespace disambig
