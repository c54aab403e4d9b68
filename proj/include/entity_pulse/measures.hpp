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

// Single-entity measures per period and top-k period selection.
//
// Every measure yields a MeasurePoint whose value is empty when the
// measure's denominator is zero: the popularity family is undefined for a
// period without texts, the averages (attitude, sentimentality,
// controversiality) for a period where the entity is not mentioned.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entity_pulse/entity_index.hpp"
#include "entity_pulse/timeline.hpp"

namespace entity_pulse {

enum class Measure : std::uint8_t {
  kPopularityC,
  kPopularityU,
  kPopularityCU,
  kAttitude,
  kSentimentality,
  kControversiality,
};

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view token);

struct MeasurePoint {
  std::string entity_id;
  Period period;
  std::optional<double> value;
  std::uint64_t support = 0;  // mentioning texts in the period
};

/// Share of the period's texts that mention the entity.
MeasurePoint popularity_c(const EntityIndex& index, std::string_view entity, const Period& period);
/// Share of the period's distinct users who mention the entity.
MeasurePoint popularity_u(const EntityIndex& index, std::string_view entity, const Period& period);
MeasurePoint popularity_cu(const EntityIndex& index, std::string_view entity, const Period& period);
/// Mean attitude of the mentioning texts.
MeasurePoint attitude(const EntityIndex& index, std::string_view entity, const Period& period);
/// Mean sentimentality of the mentioning texts.
MeasurePoint sentimentality(const EntityIndex& index, std::string_view entity,
                            const Period& period);
/// Strong-text coverage times positive/negative balance, at the index's
/// build-time delta. Zero when there are no strong texts.
MeasurePoint controversiality(const EntityIndex& index, std::string_view entity,
                              const Period& period);

MeasurePoint evaluate(const EntityIndex& index, std::string_view entity, const Period& period,
                      Measure measure);

/// The controversiality formula on raw counts; exposed for reuse by tests
/// and tools. Requires text_count > 0.
double controversiality_score(std::uint64_t strong_pos, std::uint64_t strong_neg,
                              std::uint64_t text_count);

/// One point per period of the index granularity intersecting `window`,
/// chronological, undefined points included.
std::vector<MeasurePoint> series(const EntityIndex& index, std::string_view entity,
                                 const TimeWindow& window, Measure measure);

enum class Direction : std::uint8_t { kHigh, kLow };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view token);

struct RankedPeriods {
  std::string entity_id;
  Measure measure = Measure::kPopularityCU;
  Direction direction = Direction::kHigh;
  std::size_t k = 0;
  std::vector<std::pair<Period, double>> entries;
};

/// The k defined periods with the most extreme values, best first; ties go
/// to the earlier period. Picking the k best individually maximizes (or
/// minimizes) the sum over any size-k subset, so this is the subset argmax.
/// Throws std::invalid_argument when k == 0.
RankedPeriods top_k_periods(const EntityIndex& index, std::string_view entity,
                            const TimeWindow& window, Measure measure, std::size_t k,
                            Direction direction);

}  // namespace entity_pulse
