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

#ifndef DISAMBIG_REPLAY_FIXTURE_H_
#define DISAMBIG_REPLAY_FIXTURE_H_

#include <array>
#include <string_view>

#include "disambig/corpus.h"

namespace disambig::fixtures {

// Reconstruction of the five-professor dataset, with snippets arranged so
// that offline queries reproduce the published keyword table for
// "Abdul Razak Hamdan": 85 gold pages, 39 of 390 "science" results on his
// pages, a 26-word candidate list and 11 selected keywords. Snippet text
// outside the real keywords is synthetic filler.
Corpus table2_replay_corpus();

inline constexpr std::string_view kTargetEntity = "abdul_razak_hamdan";

// The eleven keywords in published order.
inline constexpr std::array<std::string_view, 11> kTable2Keywords = {
    "science", "malaysia", "software", "data",     "based",  "technology",
    "study",   "computer", "using",    "nor",      "system"};

}  // namespace disambig::fixtures

#endif  // DISAMBIG_REPLAY_FIXTURE_H_
