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

#ifndef DISAMBIG_SYNTH_H_
#define DISAMBIG_SYNTH_H_

#include <cstddef>
#include <cstdint>

#include "disambig/corpus.h"

namespace disambig {

struct SynthSpec {
  std::size_t entities = 2;
  std::size_t docs_per_entity = 10;
  std::size_t vocabulary = 200;
  // Probability that an entity reuses the full name of an earlier entity.
  double ambiguity = 0.0;
  std::uint64_t seed = 0;
};

// Deterministic, gold-labeled corpus for a given spec. Entities that do not
// reuse a name get name tokens no other entity uses. Throws UsageError for
// counts below 1 or an ambiguity outside [0, 1].
Corpus generate_synthetic(const SynthSpec &spec);

}  // namespace disambig

#endif  // DISAMBIG_SYNTH_H_
