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

// Writes the reconstructed replay corpus in canonical form.
//
// Usage: make_replay_fixture OUTPUT.jsonl

#include <cstdio>
#include <exception>

#include "disambig/corpus.h"
#include "disambig/replay_fixture.h"

int main(int argc, char **argv) {
  if (argc != 2) {
    std::fprintf(stderr, "Usage: make_replay_fixture OUTPUT.jsonl\n");
    return 1;
  }
  try {
    disambig::save_corpus(disambig::fixtures::table2_replay_corpus(), argv[1]);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "make_replay_fixture: %s\n", e.what());
    return 2;
  }
  return 0;
}
