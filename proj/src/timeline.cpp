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

#include "entity_pulse/timeline.hpp"

#include <charconv>
#include <cstdio>

namespace entity_pulse {

namespace {

using std::chrono::days;
using std::chrono::floor;
using std::chrono::sys_days;
using std::chrono::year_month_day;

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::optional<sys_days> make_date(int y, int m, int d) {
  year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                     std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

std::optional<sys_days> parse_ymd(std::string_view text) {
  // YYYY-MM-DD
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  return make_date(y, m, d);
}

}  // namespace

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::kDay: return "day";
    case Granularity::kWeek: return "week";
    case Granularity::kMonth: return "month";
    case Granularity::kYear: return "year";
  }
  return "month";
}

std::optional<Granularity> parse_granularity(std::string_view token) {
  if (token == "day") return Granularity::kDay;
  if (token == "week") return Granularity::kWeek;
  if (token == "month") return Granularity::kMonth;
  if (token == "year") return Granularity::kYear;
  return std::nullopt;
}

Period assign(Timestamp t, Granularity g) {
  const sys_days day = floor<days>(t);
  const year_month_day ymd{day};
  sys_days start;
  sys_days end;
  switch (g) {
    case Granularity::kDay:
      start = day;
      end = day + days{1};
      break;
    case Granularity::kWeek: {
      const unsigned iso = std::chrono::weekday{day}.iso_encoding();  // Mon=1..Sun=7
      start = day - days{iso - 1};
      end = start + days{7};
      break;
    }
    case Granularity::kMonth: {
      const auto first = ymd.year() / ymd.month() / std::chrono::day{1};
      start = sys_days{first};
      end = sys_days{first + std::chrono::months{1}};
      break;
    }
    case Granularity::kYear: {
      start = sys_days{ymd.year() / std::chrono::January / 1};
      end = sys_days{(ymd.year() + std::chrono::years{1}) / std::chrono::January / 1};
      break;
    }
  }
  return Period{Timestamp{start}, Timestamp{end}, g};
}

Period next(const Period& p) { return assign(p.end, p.granularity); }

std::vector<Period> enumerate(const TimeWindow& window, Granularity g) {
  std::vector<Period> out;
  if (window.empty()) return out;
  for (Period p = assign(window.from, g); p.start < window.to; p = next(p)) {
    out.push_back(p);
  }
  return out;
}

std::string format_date(Timestamp t) {
  const year_month_day ymd{floor<days>(t)};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp t) {
  const sys_days day = floor<days>(t);
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return format_date(t) + buf;
}

std::string format_period(const Period& p) {
  return format_date(p.start) + "/" + format_date(p.end);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (text.size() < 19 || (text[10] != 'T' && text[10] != ' ')) return std::nullopt;
  const auto day = parse_ymd(text.substr(0, 10));
  if (!day) return std::nullopt;
  if (text[13] != ':' || text[16] != ':') return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!parse_int(text.substr(11, 2), hh) || !parse_int(text.substr(14, 2), mm) ||
      !parse_int(text.substr(17, 2), ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

  std::string_view rest = text.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
    if (i == 1) return std::nullopt;
    rest.remove_prefix(i);
  }
  if (!rest.empty() && rest != "Z" && rest != "+00:00") return std::nullopt;

  return Timestamp{*day} + std::chrono::hours{hh} + std::chrono::minutes{mm} +
         std::chrono::seconds{ss};
}

std::optional<Timestamp> parse_date_prefix(std::string_view text) {
  int y = 0, m = 1;
  if (text.size() == 4) {
    if (!parse_int(text, y)) return std::nullopt;
  } else if (text.size() == 7 && text[4] == '-') {
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m)) {
      return std::nullopt;
    }
  } else if (text.size() == 10) {
    const auto d = parse_ymd(text);
    if (!d) return std::nullopt;
    return Timestamp{*d};
  } else {
    return std::nullopt;
  }
  const auto d = make_date(y, m, 1);
  if (!d) return std::nullopt;
  return Timestamp{*d};
}

std::optional<Period> parse_period(std::string_view text) {
  if (text.size() != 21 || text[10] != '/') return std::nullopt;
  const auto start = parse_ymd(text.substr(0, 10));
  const auto end = parse_ymd(text.substr(11));
  if (!start || !end) return std::nullopt;
  for (Granularity g : {Granularity::kDay, Granularity::kWeek, Granularity::kMonth,
                        Granularity::kYear}) {
    const Period p = assign(Timestamp{*start}, g);
    if (p.start == Timestamp{*start} && p.end == Timestamp{*end}) return p;
  }
  return std::nullopt;
}

}  // namespace entity_pulse
