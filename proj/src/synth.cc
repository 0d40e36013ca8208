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

#include "disambig/synth.h"

#include <algorithm>
#include <cstdio>
#include <cctype>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "disambig/error.h"

namespace disambig {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). Modulo bias is irrelevant at these sizes, and unlike
  // std::uniform_int_distribution the sequence is the same on every
  // standard library.
  std::size_t below(std::size_t n) { return engine_() % n; }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::string pseudo_word(Rng &rng, std::size_t syllables) {
  static constexpr char kConsonants[] = "bdfghklmnprstvz";
  static constexpr char kVowels[] = "aeiou";
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w.push_back(kConsonants[rng.below(sizeof(kConsonants) - 1)]);
    w.push_back(kVowels[rng.below(sizeof(kVowels) - 1)]);
  }
  return w;
}

std::string capitalized(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

}  // namespace

Corpus generate_synthetic(const SynthSpec &spec) {
  if (spec.entities < 1 || spec.docs_per_entity < 1 || spec.vocabulary < 1) {
    throw UsageError("synthetic corpus counts must be at least 1");
  }
  if (!(spec.ambiguity >= 0.0 && spec.ambiguity <= 1.0)) {
    throw UsageError("ambiguity must lie in [0, 1]");
  }
  Rng rng(spec.seed);
  std::set<std::string> used;
  auto fresh = [&](std::size_t syllables) {
    for (;;) {
      std::string w = pseudo_word(rng, syllables);
      if (used.insert(w).second) return w;
    }
  };

  std::vector<std::string> names;
  for (std::size_t i = 0; i < spec.entities; ++i) {
    if (i > 0 && rng.unit() < spec.ambiguity) {
      names.push_back(names[rng.below(i)]);
    } else {
      names.push_back(capitalized(fresh(2)) + " " + capitalized(fresh(3)));
    }
  }
  std::vector<std::string> vocab;
  for (std::size_t i = 0; i < spec.vocabulary; ++i) vocab.push_back(fresh(3));

  CorpusBuilder builder;
  struct Pending {
    std::string entity_id;
    DocRef doc;
  };
  std::vector<Pending> docs;
  const std::size_t topic = std::max<std::size_t>(1, spec.vocabulary / spec.entities);
  for (std::size_t i = 0; i < spec.entities; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "person_%03zu", i + 1);
    builder.add_entity({id, names[i], {names[i]}, "synthetic"});
    for (std::size_t d = 0; d < spec.docs_per_entity; ++d) {
      std::string snippet = names[i];
      for (int k = 0; k < 5; ++k) {
        snippet += ' ' + vocab[(i * topic + rng.below(topic)) % vocab.size()];
      }
      for (int k = 0; k < 3; ++k) snippet += ' ' + vocab[rng.below(vocab.size())];
      char url[96];
      std::snprintf(url, sizeof(url), "http://synth.example/%s/%04zu", id, d);
      docs.push_back({id, DocRef{url, snippet, 0, false}});
    }
  }
  // Interleave entities in the result ranking.
  for (std::size_t i = docs.size(); i > 1; --i) {
    std::swap(docs[i - 1], docs[rng.below(i)]);
  }
  for (std::size_t r = 0; r < docs.size(); ++r) {
    docs[r].doc.rank = static_cast<std::int64_t>(r + 1);
    builder.add_gold(docs[r].entity_id, docs[r].doc.url);
    builder.add_document(std::move(docs[r].doc));
  }
  return std::move(builder).build();
}

}  // namespace disambig
