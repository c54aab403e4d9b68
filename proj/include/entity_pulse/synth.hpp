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

// Deterministic synthetic archives with planted structure.
//
// Randomness comes from SplitMix64 (Steele, Lea & Flood), fully specified
// below so the same scenario produces byte-identical output anywhere:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
//   uniform()  = (next() >> 11) * 2^-53         in [0, 1)
//   below(n)   = floor(uniform() * n)            in [0, n)
//   count(r)   = floor(r) + (uniform() < r - floor(r) ? 1 : 0)
//
// Generation walks the window period by period. In each period it emits,
// in order: background texts (no mentions), roster texts per entity, then
// planted event texts in spec order. Each text draws, in order: user,
// second offset within the period, sentiment, confidences, and any extra
// co-mention. See synth.cpp for the exact draw sequence of each kind.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entity_pulse/corpus.hpp"
#include "entity_pulse/spam_filter.hpp"
#include "entity_pulse/timeline.hpp"

namespace entity_pulse {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
};

/// Field-level validation failures, one diagnostic per offending field.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

enum class EventKind : std::uint8_t {
  kPopularitySpike,
  kControversyBurst,
  kPairLink,
  kSignedPair,
  kSpamBlock,
};

std::string_view to_string(EventKind kind);

struct PlantedEvent {
  EventKind kind = EventKind::kPopularitySpike;
  std::string entity;
  std::string other;              // pair-link, signed-pair
  std::optional<Timestamp> period;  // start instant; absent = every period
  double factor = 10.0;           // popularity-spike: rate multiplier
  double share = 0.8;             // controversy-burst: strong share of texts
  std::uint64_t count = 10;       // pair-link, signed-pair: texts per period
  int sign = -1;                  // signed-pair: +1 or -1
  double fraction = 0.1;          // spam-block: share of all texts
};

struct RosterEntity {
  std::string id;
  double rate = 0.0;  // expected mentioning texts per period
};

struct ScenarioSpec {
  std::uint64_t seed = 1;
  TimeWindow window;
  Granularity granularity = Granularity::kMonth;
  std::uint32_t users = 20;
  double background_rate = 0.0;        // texts per period without mentions
  double co_mention_probability = 0.1;  // roster texts naming a second entity
  std::vector<RosterEntity> entities;
  std::vector<PlantedEvent> events;
  std::size_t vocabulary_size = 200;  // per class, for spam-block text
  double vocabulary_overlap = 0.2;
};

/// Parses the JSON scenario document. Throws SpecError.
ScenarioSpec parse_scenario(std::string_view json);

/// Throws SpecError listing every invalid field.
void validate(const ScenarioSpec& spec);

struct GeneratedScenario {
  std::vector<AnnotatedText> records;  // generation order
  std::string manifest_json;
  std::size_t spam_count = 0;
};

/// Validates then generates. Identical specs give identical output.
GeneratedScenario generate(const ScenarioSpec& spec);

/// Writes records in generation order, canonical CSV.
void write_records(std::ostream& out, const std::vector<AnnotatedText>& records);

/// Deterministic pseudo-word vocabularies for labeled text. Each class has
/// `size` words; round(size * overlap) of them are shared between classes.
struct Vocabulary {
  std::vector<std::string> ham;
  std::vector<std::string> spam;
};
Vocabulary make_vocabulary(std::size_t size, double overlap);

struct LabeledCorpusSpec {
  std::uint64_t seed = 1;
  std::size_t documents = 1000;
  double spam_fraction = 0.5;
  std::size_t vocabulary_size = 200;
  double overlap = 0.2;
  std::size_t min_tokens = 6;
  std::size_t max_tokens = 14;
};

/// Labeled spam/ham documents drawn from make_vocabulary.
std::vector<LabeledText> generate_labeled(const LabeledCorpusSpec& spec);

/// One document of the given class; used for spam-block text as well.
std::string draw_document(SplitMix64& rng, const Vocabulary& vocab, Label label,
                          std::size_t min_tokens, std::size_t max_tokens);

}  // namespace entity_pulse
