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

#include "disambig/url.h"

#include <cctype>

namespace disambig {
namespace {

void lowercase(std::string &s, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  }
}

}  // namespace

std::string normalize_url(std::string_view url) {
  std::string out(url);
  auto hash = out.find('#');
  if (hash != std::string::npos) out.resize(hash);

  auto sep = out.find("://");
  if (sep != std::string::npos) {
    auto host_end = out.find_first_of("/?", sep + 3);
    if (host_end == std::string::npos) host_end = out.size();
    lowercase(out, 0, host_end);
  }

  while (!out.empty() && out.back() == '/') out.pop_back();
  return out;
}

}  // namespace disambig
