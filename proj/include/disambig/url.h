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

#ifndef DISAMBIG_URL_H_
#define DISAMBIG_URL_H_

#include <string>
#include <string_view>

namespace disambig {

// Canonical form used for every URL identity comparison: scheme and host are
// lowercased, the fragment is dropped, and trailing slashes are removed.
// Path and query keep their case. Strings without "://" are treated as opaque
// identifiers and only get the fragment and trailing-slash rules.
std::string normalize_url(std::string_view url);

}  // namespace disambig

#endif  // DISAMBIG_URL_H_
