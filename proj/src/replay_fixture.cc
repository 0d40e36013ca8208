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

#include "disambig/replay_fixture.h"

#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace disambig::fixtures {
namespace {

// Half-open index range [begin, end).
struct Span {
  int begin;
  int end;
  bool contains(int i) const { return i >= begin && i < end; }
};

// Which of the target's linked pages (0..63) and which unlabeled mention
// pages (0..350) carry each keyword. Sizes give the published recall and
// precision: e.g. "science" has 39 target pages out of 39 + 351 results.
struct KeywordLayout {
  const char *word;
  Span target;
  Span unlabeled;
};

constexpr KeywordLayout kLayout[] = {
    {"science", {0, 39}, {0, 351}},      {"Malaysia", {30, 64}, {0, 136}},
    {"software", {54, 64}, {0, 0}},      {"data", {10, 42}, {40, 328}},
    {"based", {40, 61}, {100, 160}},     {"technology", {5, 26}, {200, 254}},
    {"study", {20, 41}, {250, 299}},     {"computer", {45, 64}, {300, 328}},
    {"using", {0, 17}, {150, 175}},      {"nor", {50, 62}, {320, 338}},
    {"system", {26, 34}, {338, 350}},
};

constexpr int kLinkedPages = 64;     // target pages mentioning the full name
constexpr int kAliasPages = 21;      // target pages using another alias only
constexpr int kUnlabeledPages = 351;
constexpr int kCoMentionPages = 160; // Sembok pages naming Hamdan + software

// Words frequent enough to be candidates but with little overlap.
constexpr const char *kFillers[] = {
    "university", "kebangsaan",  "faculty",     "research",    "journal",
    "information", "department", "bangi",       "selangor",    "conference",
    "proceedings", "engineering", "analysis",   "knowledge",   "intelligence"};

std::vector<std::string> pseudo_vocabulary(std::size_t n) {
  static constexpr const char *kSyllables[] = {
      "ba", "di", "ga", "ku", "la", "me", "no", "pa", "ri", "sa", "tu",
      "ke", "lo", "mi", "nu", "po", "ra", "si", "te", "wa", "ye", "zo"};
  constexpr std::size_t k = std::size(kSyllables);
  std::vector<std::string> out;
  for (std::size_t i = 0; out.size() < n; ++i) {
    // Stride through the 3-syllable space so neighbours differ early.
    std::size_t code = (i * 7919) % (k * k * k);
    out.push_back(std::string(kSyllables[code % k]) + kSyllables[(code / k) % k] +
                  kSyllables[code / (k * k)]);
  }
  return out;
}

struct Page {
  std::string entity;  // empty for unlabeled pages
  std::string url;
  std::string snippet;
};

std::string numbered(const char *prefix, int i) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s%03d", prefix, i);
  return buf;
}

}  // namespace

Corpus table2_replay_corpus() {
  const auto pool = pseudo_vocabulary(600);
  std::size_t pool_next = 0;
  auto pool_words = [&](int n) {
    std::string out;
    for (int i = 0; i < n; ++i) out += " " + pool[pool_next++ % pool.size()];
    return out;
  };

  std::vector<Page> pages;

  // Pages returned for the phrase "Abdul Razak Hamdan", in this order:
  // linked target pages, unlabeled mentions, co-mentions.
  const int name_pages = kLinkedPages + kUnlabeledPages + kCoMentionPages;
  std::vector<std::string> extra(name_pages);
  int filler_index = 0;
  for (const char *filler : kFillers) {
    int freq = 6 + filler_index % 8;
    for (int j = 0; j < freq; ++j) {
      extra[(filler_index * 41 + j * 37) % name_pages] += std::string(" ") + filler;
    }
    ++filler_index;
  }

  for (int i = 0; i < kLinkedPages; ++i) {
    std::string snippet = "Abdul Razak Hamdan";
    for (const auto &k : kLayout) {
      if (k.target.contains(i)) snippet += std::string(" ") + k.word;
    }
    snippet += extra[i] + pool_words(2);
    pages.push_back({std::string(kTargetEntity),
                     numbered("http://www.ftsm.example.my/arh/page-", i), snippet});
  }
  for (int i = 0; i < kUnlabeledPages; ++i) {
    std::string snippet = "Abdul Razak Hamdan";
    for (const auto &k : kLayout) {
      if (k.unlabeled.contains(i)) snippet += std::string(" ") + k.word;
    }
    snippet += extra[kLinkedPages + i] + pool_words(2);
    pages.push_back({"", numbered("http://mentions.example.com/arh/", i), snippet});
  }
  for (int i = 0; i < kCoMentionPages; ++i) {
    std::string snippet = "Abdul Razak Hamdan software" +
                          extra[kLinkedPages + kUnlabeledPages + i] +
                          pool_words(2);
    pages.push_back({"tengku_mohd_tengku_sembok",
                     numbered("http://www.example.my/tmts/software/", i), snippet});
  }

  // Everything below is outside the name query's reach.
  const char *topical[] = {"science", "data", "computer", "system", "research",
                           "university", "Malaysia", "knowledge"};
  int topical_next = 0;
  auto other_page = [&](const std::string &entity, const std::string &name,
                        const std::string &url) {
    std::string snippet = name;
    for (int k = 0; k < 2; ++k) {
      snippet += std::string(" ") + topical[topical_next++ % std::size(topical)];
    }
    snippet += pool_words(3);
    pages.push_back({entity, url, snippet});
  };
  const char *aliases[] = {"A. R. Hamdan", "Abdul Razak bin Hamdan"};
  for (int i = 0; i < kAliasPages; ++i) {
    other_page(std::string(kTargetEntity), aliases[i % 2],
               numbered("http://www.ftsm.example.my/arh/alias-", i));
  }
  struct Other {
    const char *id;
    const char *name;
    const char *prefix;
    int pages;
  };
  const Other others[] = {
      {"abdulah_mohd_zin", "Abdulah Mohd Zin", "http://www.example.my/amz/", 90},
      {"shahrul_azman_mohd_noah", "Shahrul Azman Mohd Noah",
       "http://www.example.my/samn/", 134},
      {"tengku_mohd_tengku_sembok", "Tengku Mohd Tengku Sembok",
       "http://www.example.my/tmts/", 189 - kCoMentionPages},
      {"md_jan_nordin", "Md Jan Nordin", "http://www.example.my/mjn/", 41},
  };
  for (const auto &o : others) {
    for (int i = 0; i < o.pages; ++i) {
      other_page(o.id, o.name, numbered(o.prefix, i));
    }
  }

  // Search-result ranks: a fixed shuffle of all pages.
  std::vector<std::size_t> order(pages.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(2015);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }

  CorpusBuilder builder;
  builder.add_entity({std::string(kTargetEntity), "Abdul Razak Hamdan",
                      {"A. R. Hamdan", "Abdul Razak bin Hamdan"}, "Professor"});
  builder.add_entity({"abdulah_mohd_zin", "Abdulah Mohd Zin", {"A. M. Zin"},
                      "Professor"});
  builder.add_entity({"shahrul_azman_mohd_noah", "Shahrul Azman Mohd Noah",
                      {"Shahrul Azman Noah", "S. A. M. Noah", "Noah, S. A. M.",
                       "Shahrul Azman b Mohd Noah"},
                      "Professor"});
  builder.add_entity({"tengku_mohd_tengku_sembok", "Tengku Mohd Tengku Sembok",
                      {"T. Mohd T. Sembok", "Tengku M. T. Sembok"}, "Professor"});
  builder.add_entity({"md_jan_nordin", "Md Jan Nordin", {}, "Professor"});
  for (std::size_t r = 0; r < order.size(); ++r) {
    Page &page = pages[order[r]];
    if (!page.entity.empty()) builder.add_gold(page.entity, page.url);
    builder.add_document({page.url, page.snippet,
                          static_cast<std::int64_t>(r + 1), false});
  }
  return std::move(builder).build();
}

}  // namespace disambig::fixtures
