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

#include "disambig/query_cache.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "disambig/error.h"
#include "disambig/pipeline.h"
#include "disambig/synth.h"
#include "test_util.h"

namespace disambig {
namespace {

using testing::TempDir;

// Wraps a provider and counts calls.
class CountingProvider : public Provider {
 public:
  explicit CountingProvider(Provider &inner, bool deterministic = true)
      : inner_(inner), deterministic_(deterministic) {}

  std::string id() const override { return inner_.id(); }
  bool deterministic() const override { return deterministic_; }
  QueryOutcome search(const Query &query, std::size_t max_results) override {
    ++calls;
    return inner_.search(query, max_results);
  }

  std::atomic<int> calls{0};

 private:
  Provider &inner_;
  bool deterministic_;
};

class QueryCacheTest : public ::testing::Test {
 protected:
  QueryCacheTest()
      : corpus_(generate_synthetic({.entities = 3,
                                    .docs_per_entity = 20,
                                    .vocabulary = 40,
                                    .ambiguity = 0.5,
                                    .seed = 5})),
        offline_(corpus_),
        provider_(offline_),
        query_(SearchTerm::phrase(corpus_.entities().front().canonical_name)) {}

  Corpus corpus_;
  OfflineProvider offline_;
  CountingProvider provider_;
  Query query_;
  TempDir dir_;
};

TEST_F(QueryCacheTest, SecondCallIsServedFromDisk) {
  QueryCache cache(dir_.path());
  auto first = cached_search(cache, provider_, query_, 100);
  auto path = cache.path_for(QueryCache::key(provider_, query_, 100));
  std::string bytes = testing::read_file(path);
  auto second = cached_search(cache, provider_, query_, 100);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first, offline_.search(query_, 100));
  EXPECT_EQ(provider_.calls, 1);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(testing::read_file(path), bytes);

  // A new cache object over the same directory reuses the entry.
  QueryCache reopened(dir_.path());
  EXPECT_EQ(cached_search(reopened, provider_, query_, 100), first);
  EXPECT_EQ(provider_.calls, 1);
}

TEST_F(QueryCacheTest, CapIsPartOfTheKey) {
  QueryCache cache(dir_.path());
  cached_search(cache, provider_, query_, 5);
  cached_search(cache, provider_, query_, 6);
  EXPECT_EQ(provider_.calls, 2);
  std::size_t files = 0;
  for (const auto &entry : std::filesystem::directory_iterator(dir_.path())) {
    EXPECT_EQ(entry.path().extension(), ".json");
    ++files;
  }
  EXPECT_EQ(files, 2u);
}

TEST_F(QueryCacheTest, CorruptEntryFallsThroughAndIsRewritten) {
  QueryCache cache(dir_.path());
  auto path = cache.path_for(QueryCache::key(provider_, query_, 50));
  testing::write_file(path, "{\"key\": truncated garbage");
  auto outcome = cached_search(cache, provider_, query_, 50);
  EXPECT_EQ(outcome, offline_.search(query_, 50));
  EXPECT_EQ(provider_.calls, 1);
  // The rewritten entry now serves hits.
  EXPECT_TRUE(cache.lookup(QueryCache::key(provider_, query_, 50)).has_value());
  cached_search(cache, provider_, query_, 50);
  EXPECT_EQ(provider_.calls, 1);
}

TEST_F(QueryCacheTest, EntryForAnotherKeyIsIgnored) {
  QueryCache cache(dir_.path());
  auto key = QueryCache::key(provider_, query_, 10);
  QueryOutcome wrong{Query(SearchTerm::word("other"))};
  ASSERT_TRUE(cache.store("different key", wrong, 0));
  std::filesystem::rename(cache.path_for("different key"), cache.path_for(key));
  EXPECT_FALSE(cache.lookup(key).has_value());
}

TEST_F(QueryCacheTest, FirstWriteWins) {
  QueryCache cache(dir_.path());
  auto key = QueryCache::key(provider_, query_, 10);
  QueryOutcome a = offline_.search(query_, 10);
  QueryOutcome b = a;
  b.results.clear();
  EXPECT_TRUE(cache.store(key, a, 0));
  EXPECT_FALSE(cache.store(key, b, 0));
  EXPECT_EQ(*cache.lookup(key), a);
}

TEST_F(QueryCacheTest, ConcurrentCallersShareOneFetch) {
  QueryCache cache(dir_.path());
  std::vector<QueryOutcome> seen(8, QueryOutcome{query_});
  {
    std::vector<std::jthread> threads;
    for (int i = 0; i < 8; ++i) {
      threads.emplace_back([&, i] { seen[i] = cached_search(cache, provider_, query_, 20); });
    }
  }
  EXPECT_EQ(provider_.calls, 1);
  for (const auto &o : seen) EXPECT_EQ(o, seen.front());
}

TEST_F(QueryCacheTest, FetchTimeOnlyForLiveProviders) {
  QueryCache cache(dir_.path());
  cached_search(cache, provider_, query_, 3);
  auto doc = nlohmann::json::parse(
      testing::read_file(cache.path_for(QueryCache::key(provider_, query_, 3))));
  EXPECT_EQ(doc["fetched_at"], 0);

  CountingProvider live(offline_, /*deterministic=*/false);
  TempDir other;
  QueryCache live_cache(other.path());
  cached_search(live_cache, live, query_, 3);
  auto live_doc = nlohmann::json::parse(
      testing::read_file(live_cache.path_for(QueryCache::key(live, query_, 3))));
  EXPECT_GT(live_doc["fetched_at"].get<std::int64_t>(), 1'600'000'000);
}

TEST(CacheDirTest, EnvironmentOverridesConfig) {
  RunConfig config;
  config.cache_dir = "/from/config";
  ::unsetenv(kCacheDirEnv);
  EXPECT_EQ(effective_cache_dir(config), std::filesystem::path("/from/config"));
  ::setenv(kCacheDirEnv, "/from/env", 1);
  EXPECT_EQ(effective_cache_dir(config), std::filesystem::path("/from/env"));
  ::unsetenv(kCacheDirEnv);
  config.cache_dir.reset();
  EXPECT_FALSE(effective_cache_dir(config).has_value());
}

}  // namespace
}  // namespace disambig
