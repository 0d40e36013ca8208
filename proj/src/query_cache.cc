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

#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "disambig/digest.h"
#include "disambig/error.h"

namespace disambig {
namespace {

using nlohmann::json;

std::filesystem::path temp_path(const std::filesystem::path &final_path) {
  static std::atomic<std::uint64_t> counter{0};
  std::ostringstream name;
  name << final_path.filename().string() << ".tmp." << ::getpid() << '.'
       << std::hash<std::thread::id>()(std::this_thread::get_id()) << '.'
       << counter++;
  return final_path.parent_path() / name.str();
}

}  // namespace

QueryCache::QueryCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    throw DataError("cannot create cache directory " + dir_.string() + ": " +
                    ec.message());
  }
}

std::string QueryCache::key(const Provider &provider, const Query &query,
                            std::size_t max_results) {
  return provider.id() + "\n" + query.canonical() + "\n" +
         std::to_string(max_results);
}

std::filesystem::path QueryCache::path_for(const std::string &key) const {
  return dir_ / (sha256_hex(key) + ".json");
}

std::mutex &QueryCache::lock_for(const std::string &key) {
  return locks_[std::hash<std::string>()(key) % locks_.size()];
}

std::optional<QueryOutcome> QueryCache::lookup(const std::string &key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    json doc = json::parse(buffer.str());
    if (doc.at("key").get<std::string>() != key) return std::nullopt;
    return outcome_from_json(doc.at("outcome"));
  } catch (const json::exception &) {
    return std::nullopt;
  } catch (const MalformedResponseError &) {
    return std::nullopt;
  }
}

bool QueryCache::store(const std::string &key, const QueryOutcome &outcome,
                       std::int64_t fetched_at, bool replace) {
  json doc = {{"key", key}, {"fetched_at", fetched_at}, {"outcome", to_json(outcome)}};
  auto final_path = path_for(key);
  auto tmp = temp_path(final_path);
  {
    std::ofstream out(tmp, std::ios::binary);
    out << doc.dump() << '\n';
    if (!out) throw DataError("cannot write cache file " + tmp.string());
  }
  if (replace) {
    std::filesystem::rename(tmp, final_path);
    return true;
  }
  // link() refuses to overwrite, so concurrent writers cannot clobber the
  // first completed entry.
  int rc = ::link(tmp.c_str(), final_path.c_str());
  int err = errno;
  std::filesystem::remove(tmp);
  if (rc == 0) return true;
  if (err == EEXIST) return false;
  throw DataError("cannot publish cache file " + final_path.string() + ": " +
                  std::strerror(err));
}

QueryOutcome cached_search(QueryCache &cache, Provider &provider,
                           const Query &query, std::size_t max_results) {
  const std::string key = QueryCache::key(provider, query, max_results);
  std::lock_guard<std::mutex> lock(cache.lock_for(key));
  if (auto hit = cache.lookup(key)) {
    ++cache.hits_;
    return *std::move(hit);
  }
  ++cache.misses_;
  bool corrupt = std::filesystem::exists(cache.path_for(key));
  QueryOutcome fresh = search(provider, query, max_results);
  std::int64_t fetched_at = 0;
  if (!provider.deterministic()) {
    fetched_at = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::system_clock::now().time_since_epoch())
                     .count();
  }
  cache.store(key, fresh, fetched_at, corrupt);
  // Whatever entry won is the one every caller sees.
  if (auto stored = cache.lookup(key)) return *std::move(stored);
  return fresh;
}

}  // namespace disambig
