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

// Calendar periods over a UTC timeline.
//
// A period is a half-open interval [start, end) spanning exactly one
// calendar unit (day, ISO week, month or year). All arithmetic is UTC;
// weeks start on Monday.

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entity_pulse {

using Timestamp = std::chrono::sys_seconds;

enum class Granularity : std::uint8_t { kDay = 0, kWeek = 1, kMonth = 2, kYear = 3 };

std::string_view to_string(Granularity g);
std::optional<Granularity> parse_granularity(std::string_view token);

struct Period {
  Timestamp start;
  Timestamp end;  // exclusive
  Granularity granularity = Granularity::kMonth;

  bool contains(Timestamp t) const { return start <= t && t < end; }

  friend bool operator==(const Period&, const Period&) = default;
  friend auto operator<=>(const Period& a, const Period& b) {
    if (auto c = a.start <=> b.start; c != 0) return c;
    if (auto c = a.end <=> b.end; c != 0) return c;
    return a.granularity <=> b.granularity;
  }
};

/// Half-open query window [from, to).
struct TimeWindow {
  Timestamp from;
  Timestamp to;

  bool empty() const { return to <= from; }
  bool contains(Timestamp t) const { return from <= t && t < to; }
};

/// The unique period of granularity `g` containing `t`.
Period assign(Timestamp t, Granularity g);

/// The period immediately following `p`.
Period next(const Period& p);

/// All periods of granularity `g` intersecting `window`, in chronological
/// order. Partially covered periods are included whole. An empty window
/// yields an empty list.
std::vector<Period> enumerate(const TimeWindow& window, Granularity g);

/// `YYYY-MM-DD/YYYY-MM-DD` (start inclusive, end exclusive).
std::string format_period(const Period& p);

/// `YYYY-MM-DD`.
std::string format_date(Timestamp t);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);

/// Parses an ISO-8601 UTC instant `YYYY-MM-DDTHH:MM:SS[.fff][Z|+00:00]`.
/// Fractional seconds are truncated. A missing zone designator means UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Parses `YYYY`, `YYYY-MM` or `YYYY-MM-DD` to the first instant it names.
std::optional<Timestamp> parse_date_prefix(std::string_view text);

/// Inverse of format_period. The granularity is inferred from the span and
/// must be consistent with the boundaries.
std::optional<Period> parse_period(std::string_view text);

}  // namespace entity_pulse
