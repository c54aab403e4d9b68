// Copyright 2026 The Entity Pulse Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entity_pulse/corpus.hpp"
#include "entity_pulse/timeline.hpp"

namespace entity_pulse::testing {

struct FuzzShape {
  std::size_t texts = 0;
  std::size_t entities = 0;
  std::size_t users = 0;
  bool empty_months = false;  // leave some months without any text
};

// Random corpus over calendar 2015. Entity popularity is skewed so pairs
// recur, and sentiment covers the whole score range including the δ edges.
struct FuzzCorpus {
  FuzzShape shape;
  std::vector<AnnotatedText> records;
};

FuzzCorpus random_corpus(std::uint64_t seed);
FuzzCorpus random_corpus(std::uint64_t seed, const FuzzShape& shape);

TimeWindow year_2015();

// Entity names used by random_corpus, e.g. "dbp:E07".
std::string fuzz_entity(std::size_t i);

AnnotatedText text(std::string id, std::string user, std::string_view when,
                   std::vector<std::string> entities, int positive = 1, int negative = -1);

}  // namespace entity_pulse::testing
