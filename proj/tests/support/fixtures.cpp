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

#include "fixtures.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>

namespace entity_pulse::testing {

std::string fuzz_entity(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "dbp:E%02zu", i);
  return buf;
}

TimeWindow year_2015() {
  return {*parse_date_prefix("2015-01-01"), *parse_date_prefix("2016-01-01")};
}

FuzzCorpus random_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FuzzShape shape;
  shape.texts = std::uniform_int_distribution<std::size_t>(1, 10000)(rng);
  shape.entities = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
  shape.users = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
  shape.empty_months = (rng() & 3) == 0;
  return random_corpus(seed, shape);
}

FuzzCorpus random_corpus(std::uint64_t seed, const FuzzShape& shape) {
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  FuzzCorpus out{shape, {}};
  const TimeWindow year = year_2015();
  const auto months = enumerate(year, Granularity::kMonth);

  std::vector<bool> silent(months.size(), false);
  if (shape.empty_months) {
    for (auto&& s : silent) s = (rng() % 4) == 0;
  }
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < months.size(); ++i) {
    if (!silent[i]) live.push_back(i);
  }
  if (live.empty()) live.push_back(rng() % months.size());

  // Geometric-ish popularity: low ids are frequent, so pairs repeat.
  std::vector<double> weights(shape.entities);
  for (std::size_t i = 0; i < shape.entities; ++i) weights[i] = 1.0 / (1.0 + static_cast<double>(i));
  std::discrete_distribution<std::size_t> pick_entity(weights.begin(), weights.end());
  std::uniform_int_distribution<int> pos(1, 5);
  std::uniform_int_distribution<int> neg(-5, -1);
  std::uniform_int_distribution<std::size_t> mention_n(0, 4);

  out.records.reserve(shape.texts);
  for (std::size_t i = 0; i < shape.texts; ++i) {
    const Period& month = months[live[rng() % live.size()]];
    const auto span = static_cast<std::uint64_t>((month.end - month.start).count());
    AnnotatedText t;
    t.text_id = "t" + std::to_string(i);
    t.user_id = "u" + std::to_string(rng() % std::max<std::size_t>(shape.users, 1));
    t.timestamp = month.start + std::chrono::seconds(rng() % span);
    t.sentiment = {pos(rng), neg(rng)};
    std::set<std::size_t> chosen;
    const std::size_t want = shape.entities ? mention_n(rng) : 0;
    for (std::size_t j = 0; j < want; ++j) chosen.insert(pick_entity(rng));
    for (std::size_t e : chosen) {
      t.mentions.push_back({fuzz_entity(e), -static_cast<double>(rng() % 300) / 100.0});
    }
    std::shuffle(t.mentions.begin(), t.mentions.end(), rng);
    out.records.push_back(std::move(t));
  }
  return out;
}

AnnotatedText text(std::string id, std::string user, std::string_view when,
                   std::vector<std::string> entities, int positive, int negative) {
  AnnotatedText t;
  t.text_id = std::move(id);
  t.user_id = std::move(user);
  auto ts = parse_timestamp(when);
  if (!ts) ts = parse_date_prefix(when);
  if (!ts) throw std::invalid_argument("bad fixture time");
  t.timestamp = *ts;
  t.sentiment = {positive, negative};
  for (auto& e : entities) t.mentions.push_back({std::move(e), -1.0});
  return t;
}

}  // namespace entity_pulse::testing
