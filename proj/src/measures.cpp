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

#include "entity_pulse/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace entity_pulse {

namespace {

struct Lookup {
  const PeriodSlice* slice;
  const EntityPosting* posting;
};

Lookup lookup(const EntityIndex& index, std::string_view entity, const Period& period) {
  const PeriodSlice* s = index.slice(period);
  const EntityPosting* p = s ? index.posting(entity, period) : nullptr;
  return {s, p};
}

MeasurePoint point(std::string_view entity, const Period& period, const Lookup& l) {
  return MeasurePoint{std::string(entity), period, std::nullopt,
                      l.posting ? l.posting->text_count : 0};
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::kPopularityC: return "popularity_c";
    case Measure::kPopularityU: return "popularity_u";
    case Measure::kPopularityCU: return "popularity_cu";
    case Measure::kAttitude: return "attitude";
    case Measure::kSentimentality: return "sentimentality";
    case Measure::kControversiality: return "controversiality";
  }
  return "popularity_cu";
}

std::optional<Measure> parse_measure(std::string_view token) {
  for (Measure m : {Measure::kPopularityC, Measure::kPopularityU, Measure::kPopularityCU,
                    Measure::kAttitude, Measure::kSentimentality, Measure::kControversiality}) {
    if (to_string(m) == token) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Direction d) { return d == Direction::kHigh ? "high" : "low"; }

std::optional<Direction> parse_direction(std::string_view token) {
  if (token == "high") return Direction::kHigh;
  if (token == "low") return Direction::kLow;
  return std::nullopt;
}

MeasurePoint popularity_c(const EntityIndex& index, std::string_view entity, const Period& period) {
  const Lookup l = lookup(index, entity, period);
  MeasurePoint mp = point(entity, period, l);
  if (l.slice && l.slice->text_total > 0) {
    const std::uint64_t n = l.posting ? l.posting->text_count : 0;
    mp.value = static_cast<double>(n) / static_cast<double>(l.slice->text_total);
  }
  return mp;
}

MeasurePoint popularity_u(const EntityIndex& index, std::string_view entity, const Period& period) {
  const Lookup l = lookup(index, entity, period);
  MeasurePoint mp = point(entity, period, l);
  if (l.slice && l.slice->user_total > 0) {
    const std::uint64_t n = l.posting ? l.posting->user_count : 0;
    mp.value = static_cast<double>(n) / static_cast<double>(l.slice->user_total);
  }
  return mp;
}

MeasurePoint popularity_cu(const EntityIndex& index, std::string_view entity,
                           const Period& period) {
  MeasurePoint by_text = popularity_c(index, entity, period);
  const MeasurePoint by_user = popularity_u(index, entity, period);
  if (by_text.value && by_user.value) {
    by_text.value = *by_text.value * *by_user.value;
  } else {
    by_text.value.reset();
  }
  return by_text;
}

MeasurePoint attitude(const EntityIndex& index, std::string_view entity, const Period& period) {
  const Lookup l = lookup(index, entity, period);
  MeasurePoint mp = point(entity, period, l);
  if (l.posting) {
    mp.value = static_cast<double>(l.posting->attitude_sum) /
               static_cast<double>(l.posting->text_count);
  }
  return mp;
}

MeasurePoint sentimentality(const EntityIndex& index, std::string_view entity,
                            const Period& period) {
  const Lookup l = lookup(index, entity, period);
  MeasurePoint mp = point(entity, period, l);
  if (l.posting) {
    mp.value = static_cast<double>(l.posting->sentimentality_sum) /
               static_cast<double>(l.posting->text_count);
  }
  return mp;
}

double controversiality_score(std::uint64_t strong_pos, std::uint64_t strong_neg,
                              std::uint64_t text_count) {
  const std::uint64_t hi = std::max(strong_pos, strong_neg);
  if (hi == 0) return 0.0;
  const std::uint64_t lo = std::min(strong_pos, strong_neg);
  const double coverage =
      static_cast<double>(strong_pos + strong_neg) / static_cast<double>(text_count);
  return coverage * (static_cast<double>(lo) / static_cast<double>(hi));
}

MeasurePoint controversiality(const EntityIndex& index, std::string_view entity,
                              const Period& period) {
  const Lookup l = lookup(index, entity, period);
  MeasurePoint mp = point(entity, period, l);
  if (l.posting) {
    mp.value = controversiality_score(l.posting->strong_pos_count, l.posting->strong_neg_count,
                                      l.posting->text_count);
  }
  return mp;
}

MeasurePoint evaluate(const EntityIndex& index, std::string_view entity, const Period& period,
                      Measure measure) {
  switch (measure) {
    case Measure::kPopularityC: return popularity_c(index, entity, period);
    case Measure::kPopularityU: return popularity_u(index, entity, period);
    case Measure::kPopularityCU: return popularity_cu(index, entity, period);
    case Measure::kAttitude: return attitude(index, entity, period);
    case Measure::kSentimentality: return sentimentality(index, entity, period);
    case Measure::kControversiality: return controversiality(index, entity, period);
  }
  throw std::invalid_argument("unknown measure");
}

std::vector<MeasurePoint> series(const EntityIndex& index, std::string_view entity,
                                 const TimeWindow& window, Measure measure) {
  std::vector<MeasurePoint> out;
  for (const Period& p : enumerate(window, index.granularity())) {
    out.push_back(evaluate(index, entity, p, measure));
  }
  return out;
}

RankedPeriods top_k_periods(const EntityIndex& index, std::string_view entity,
                            const TimeWindow& window, Measure measure, std::size_t k,
                            Direction direction) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  RankedPeriods ranked{std::string(entity), measure, direction, k, {}};
  for (const MeasurePoint& mp : series(index, entity, window, measure)) {
    if (mp.value) ranked.entries.emplace_back(mp.period, *mp.value);
  }
  // Entries are chronological, so a stable sort keeps earlier periods first
  // among equal values.
  if (direction == Direction::kHigh) {
    std::stable_sort(ranked.entries.begin(), ranked.entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
  } else {
    std::stable_sort(ranked.entries.begin(), ranked.entries.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
  }
  if (ranked.entries.size() > k) ranked.entries.resize(k);
  return ranked;
}

}  // namespace entity_pulse
