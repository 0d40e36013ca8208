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

#ifndef DISAMBIG_QUERY_CACHE_H_
#define DISAMBIG_QUERY_CACHE_H_

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "disambig/search.h"

namespace disambig {

// Environment variable that overrides the cache directory.
inline constexpr const char *kCacheDirEnv = "DISAMBIG_CACHE_DIR";

// Persistent query cache: one JSON file per key, named by the SHA-256 of the
// key. The first completed write of a key wins; later writes of the same key
// are no-ops. A file that fails to parse is treated as a miss and replaced.
class QueryCache {
 public:
  explicit QueryCache(std::filesystem::path dir);

  const std::filesystem::path &dir() const { return dir_; }

  static std::string key(const Provider &provider, const Query &query,
                         std::size_t max_results);
  std::filesystem::path path_for(const std::string &key) const;

  // Outcome stored under the key, or nullopt on a miss or corrupt entry.
  std::optional<QueryOutcome> lookup(const std::string &key) const;

  // Persists the outcome. Returns false when another writer got there first.
  // `replace` overwrites an existing (corrupt) entry.
  bool store(const std::string &key, const QueryOutcome &outcome,
             std::int64_t fetched_at, bool replace = false);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  friend QueryOutcome cached_search(QueryCache &, Provider &, const Query &,
                                    std::size_t);

  std::mutex &lock_for(const std::string &key);

  std::filesystem::path dir_;
  std::array<std::mutex, 64> locks_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

// Returns the cached outcome when present; otherwise searches, persists and
// returns the persisted outcome. Entries of deterministic providers record a
// fetch time of 0 so identical runs leave identical cache files.
QueryOutcome cached_search(QueryCache &cache, Provider &provider,
                           const Query &query, std::size_t max_results);

}  // namespace disambig

#endif  // DISAMBIG_QUERY_CACHE_H_
