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

#include "disambig/http_provider.h"

#include <cctype>
#include <set>
#include <thread>

#include "disambig/error.h"
#include "disambig/url.h"
#include "httplib.h"

namespace disambig {
namespace {

using nlohmann::json;

void replace_all(std::string &s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

RateLimiter::RateLimiter(double rate_per_second)
    : interval_(rate_per_second > 0
                    ? std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(1.0 / rate_per_second))
                    : Clock::duration::zero()),
      next_(Clock::now()) {}

void RateLimiter::acquire() {
  if (interval_ == Clock::duration::zero()) return;
  Clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    slot = std::max(next_, Clock::now());
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xf]);
    }
  }
  return out;
}

QueryOutcome parse_search_response(const Query &query, std::string_view body,
                                   std::size_t max_results) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error &e) {
    throw MalformedResponseError(std::string("response is not JSON: ") +
                                 e.what());
  }
  try {
    QueryOutcome out{query};
    out.hit_count = doc.at("hit_count").get<std::int64_t>();
    out.hit_count_estimated = doc.value("estimated", true);
    if (out.hit_count < 0) throw MalformedResponseError("negative hit_count");
    std::set<std::string> seen;
    for (const auto &r : doc.at("results")) {
      DocRef ref;
      ref.url = normalize_url(r.at("url").get<std::string>());
      ref.snippet = r.value("snippet", "");
      ref.rank = r.value("rank", static_cast<std::int64_t>(out.results.size()));
      // Mirrors of the same page collapse onto one reference.
      if (!seen.insert(ref.url).second) continue;
      if (out.results.size() == max_results) {
        out.truncated = true;
        break;
      }
      out.results.push_back(std::move(ref));
    }
    if (out.results.size() == max_results &&
        static_cast<std::int64_t>(out.results.size()) < out.hit_count) {
      out.truncated = true;
    }
    return out;
  } catch (const json::exception &e) {
    throw MalformedResponseError(std::string("malformed response: ") +
                                 e.what());
  }
}

HttpProvider::HttpProvider(HttpProviderConfig config)
    : config_(std::move(config)),
      limiter_(config_.rate_limit),
      sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  const std::string &t = config_.endpoint_template;
  auto sep = t.find("://");
  if (sep == std::string::npos) {
    throw UsageError("endpoint template needs a scheme: " + t);
  }
  auto path = t.find('/', sep + 3);
  origin_ = t.substr(0, path);
  path_template_ = path == std::string::npos ? "/" : t.substr(path);
  if (t.find("{query}") == std::string::npos) {
    throw UsageError("endpoint template lacks {query}: " + t);
  }
  if (config_.max_retries < 0) throw UsageError("max_retries must be >= 0");
}

QueryOutcome HttpProvider::search(const Query &query, std::size_t max_results) {
  std::string path = path_template_;
  replace_all(path, "{query}", url_encode(query.canonical()));
  replace_all(path, "{max}", std::to_string(max_results));

  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);

  const int attempts = config_.max_retries + 1;
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      sleep_(config_.initial_backoff * (1 << (attempt - 2)));
    }
    limiter_.acquire();
    auto res = client.Get(path);
    if (!res) {
      last_error = "request to " + origin_ + " failed: " +
                   httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429) {
      long seconds = 1;
      if (res->has_header("Retry-After")) {
        try {
          seconds = std::stol(res->get_header_value("Retry-After"));
        } catch (const std::exception &) {
        }
      }
      throw RateLimitError(std::chrono::seconds(seconds),
                           "rate limit exceeded at " + origin_);
    }
    if (res->status >= 500) {
      last_error = "server error " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError("unexpected HTTP status " +
                          std::to_string(res->status) + " from " + origin_);
    }
    return parse_search_response(query, res->body, max_results);
  }
  throw ProviderIoError(attempts, last_error);
}

}  // namespace disambig
