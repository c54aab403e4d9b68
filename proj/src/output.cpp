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

#include "entity_pulse/output.hpp"

#include <json.hpp>

#include "entity_pulse/csv.hpp"
#include "number_format.hpp"

namespace entity_pulse {

namespace {

using ordered = nlohmann::ordered_json;

std::string cell(const std::optional<double>& v) {
  return v ? detail::format_double(*v) : std::string();
}

ordered value_json(const std::optional<double>& v) { return v ? ordered(*v) : ordered(nullptr); }

std::string dump(const ordered& doc) { return doc.dump(2); }

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view token) {
  if (token == "csv") return OutputFormat::kCsv;
  if (token == "json") return OutputFormat::kJson;
  return std::nullopt;
}

void write_series(std::ostream& out, std::span<const MeasurePoint> points, Measure measure,
                  OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "entity,period_start,period_end,measure,value,support\n";
    for (const auto& p : points) {
      out << csv::quote(p.entity_id) << ',' << format_date(p.period.start) << ','
          << format_date(p.period.end) << ',' << to_string(measure) << ',' << cell(p.value) << ','
          << p.support << '\n';
    }
    return;
  }
  ordered doc = ordered::array();
  for (const auto& p : points) {
    doc.push_back({{"entity", p.entity_id},
                   {"period_start", format_date(p.period.start)},
                   {"period_end", format_date(p.period.end)},
                   {"measure", to_string(measure)},
                   {"value", value_json(p.value)},
                   {"support", p.support}});
  }
  out << dump(doc) << '\n';
}

void write_ranked_periods(std::ostream& out, const RankedPeriods& ranked, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "rank,entity,period_start,period_end,measure,value\n";
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
      const auto& [period, value] = ranked.entries[i];
      out << i + 1 << ',' << csv::quote(ranked.entity_id) << ',' << format_date(period.start) << ','
          << format_date(period.end) << ',' << to_string(ranked.measure) << ','
          << detail::format_double(value) << '\n';
    }
    return;
  }
  ordered doc = ordered::array();
  for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
    const auto& [period, value] = ranked.entries[i];
    doc.push_back({{"rank", i + 1},
                   {"entity", ranked.entity_id},
                   {"period_start", format_date(period.start)},
                   {"period_end", format_date(period.end)},
                   {"measure", to_string(ranked.measure)},
                   {"value", value}});
  }
  out << dump(doc) << '\n';
}

void write_network(std::ostream& out, const RankedNetwork& network, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "rank,entity,score,support\n";
    for (std::size_t i = 0; i < network.entries.size(); ++i) {
      const auto& e = network.entries[i];
      out << i + 1 << ',' << csv::quote(e.entity_id) << ',' << detail::format_double(e.score) << ','
          << e.support << '\n';
    }
    return;
  }
  ordered doc = ordered::array();
  for (std::size_t i = 0; i < network.entries.size(); ++i) {
    const auto& e = network.entries[i];
    doc.push_back({{"rank", i + 1}, {"entity", e.entity_id}, {"score", e.score}, {"support", e.support}});
  }
  out << dump(doc) << '\n';
}

void write_network_nodes(std::ostream& out, const RankedNetwork& network) {
  out << "id,label,score,support\n";
  out << "0," << csv::quote(network.entity_id) << ",1,\n";
  for (std::size_t i = 0; i < network.entries.size(); ++i) {
    const auto& e = network.entries[i];
    out << i + 1 << ',' << csv::quote(e.entity_id) << ',' << detail::format_double(e.score) << ','
        << e.support << '\n';
  }
}

void write_network_edges(std::ostream& out, const RankedNetwork& network) {
  out << "source,target,weight,support\n";
  for (std::size_t i = 0; i < network.entries.size(); ++i) {
    const auto& e = network.entries[i];
    out << "0," << i + 1 << ',' << detail::format_double(e.score) << ',' << e.support << '\n';
  }
}

void write_connectedness(std::ostream& out, const ConnectednessRow& row, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "entity,other,period_start,period_end,kind,value\n";
    out << csv::quote(row.entity) << ',' << csv::quote(row.other) << ','
        << format_date(row.period.start) << ',' << format_date(row.period.end) << ',' << row.kind
        << ',' << cell(row.value) << '\n';
    return;
  }
  ordered doc = ordered::array();
  doc.push_back({{"entity", row.entity},
                 {"other", row.other},
                 {"period_start", format_date(row.period.start)},
                 {"period_end", format_date(row.period.end)},
                 {"kind", row.kind},
                 {"value", value_json(row.value)}});
  out << dump(doc) << '\n';
}

std::string inspect_json(const EntityIndex& index, std::uintmax_t file_bytes) {
  std::uint64_t texts = 0;
  for (const auto& s : index.slices()) texts += s.text_total;
  std::uint64_t pairs = 0;
  std::uint64_t dictionary_bytes = 0;
  for (const auto& p : index.postings()) pairs += p.cooccur_count;
  for (const auto& e : index.entities()) dictionary_bytes += e.size();

  ordered doc;
  doc["format"] = "EPX1";
  doc["file_bytes"] = file_bytes;
  doc["granularity"] = to_string(index.granularity());
  doc["delta"] = index.delta();
  doc["sketch_users"] = index.sketch_users();
  doc["sections"] = {
      {"strings", {{"entities", index.entities().size()}, {"bytes", dictionary_bytes}}},
      {"slices", {{"count", index.slices().size()}, {"texts", texts}}},
      {"postings", {{"count", index.postings().size()}}},
      {"cooccur", {{"count", pairs}}},
  };
  if (!index.slices().empty()) {
    doc["span"] = {{"first", format_period(index.slices().front().period)},
                   {"last", format_period(index.slices().back().period)}};
  }
  return dump(doc);
}

std::string stats_json(const CorpusStats& stats) {
  ordered doc;
  doc["record_count"] = stats.record_count;
  doc["rejected_count"] = stats.rejected_count;
  doc["distinct_users"] = stats.distinct_users;
  doc["time_span"] = stats.first ? ordered::array({format_timestamp(*stats.first),
                                                    format_timestamp(*stats.last)})
                                 : ordered(nullptr);
  return dump(doc);
}

}  // namespace entity_pulse
