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

// Stable export formats.
//
// Series CSV:       entity,period_start,period_end,measure,value,support
// Top-k CSV:        rank,entity,period_start,period_end,measure,value
// Network CSV:      rank,entity,score,support
// Graph nodes CSV:  id,label,score,support  (node 0 is the query entity)
// Graph edges CSV:  source,target,weight,support
// Connectedness:    entity,other,period_start,period_end,kind,value
//
// Undefined values are an empty CSV field and `null` in JSON. Reals use
// the shortest representation that reads back to the same double. JSON
// outputs are arrays of flat records with the CSV column names as keys.

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "entity_pulse/corpus.hpp"
#include "entity_pulse/entity_index.hpp"
#include "entity_pulse/measures.hpp"
#include "entity_pulse/relations.hpp"

namespace entity_pulse {

enum class OutputFormat : std::uint8_t { kCsv, kJson };

std::optional<OutputFormat> parse_output_format(std::string_view token);

void write_series(std::ostream& out, std::span<const MeasurePoint> points, Measure measure,
                  OutputFormat format);

void write_ranked_periods(std::ostream& out, const RankedPeriods& ranked, OutputFormat format);

void write_network(std::ostream& out, const RankedNetwork& network, OutputFormat format);

void write_network_nodes(std::ostream& out, const RankedNetwork& network);
void write_network_edges(std::ostream& out, const RankedNetwork& network);

struct ConnectednessRow {
  std::string entity;
  std::string other;  // set members joined by ';' for set queries
  Period period;
  std::string kind;  // direct | indirect | indirect-literal | set
  std::optional<double> value;
};

void write_connectedness(std::ostream& out, const ConnectednessRow& row, OutputFormat format);

/// Section statistics of an index as a JSON document.
std::string inspect_json(const EntityIndex& index, std::uintmax_t file_bytes);

std::string stats_json(const CorpusStats& stats);

}  // namespace entity_pulse
