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

#ifndef DISAMBIG_HTTP_PROVIDER_H_
#define DISAMBIG_HTTP_PROVIDER_H_

#include <chrono>
#include <functional>
#include <mutex>
#include <string>

#include "disambig/search.h"

namespace disambig {

// Spaces calls at least 1/rate seconds apart across all threads.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  // rate_per_second <= 0 disables limiting.
  explicit RateLimiter(double rate_per_second);

  // Blocks until the caller may issue the next request.
  void acquire();

 private:
  Clock::duration interval_;
  Clock::time_point next_;
  std::mutex mu_;
};

struct HttpProviderConfig {
  // e.g. "http://localhost:8080/search?q={query}&n={max}". {query} receives
  // the url-encoded canonical query, {max} the result cap.
  std::string endpoint_template;
  double rate_limit = 1.0;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{10};
};

// Generic JSON search endpoint. The response body is
//   {"hit_count": N, "estimated": bool,
//    "results": [{"url": ..., "snippet": ..., "rank": ...}, ...]}
// Connection failures and 5xx responses are retried with exponential
// backoff; 429 raises RateLimitError immediately.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  std::string id() const override { return "http:" + config_.endpoint_template; }
  bool deterministic() const override { return false; }
  QueryOutcome search(const Query &query, std::size_t max_results) override;

  // Replaces the sleep used between retries (tests).
  void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    sleep_ = std::move(sleeper);
  }

 private:
  HttpProviderConfig config_;
  std::string origin_;
  std::string path_template_;
  RateLimiter limiter_;
  std::function<void(std::chrono::milliseconds)> sleep_;
};

std::string url_encode(std::string_view text);

// Builds an outcome from a response body; throws MalformedResponseError.
QueryOutcome parse_search_response(const Query &query, std::string_view body,
                                   std::size_t max_results);

}  // namespace disambig

#endif  // DISAMBIG_HTTP_PROVIDER_H_
