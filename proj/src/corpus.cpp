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

#include "entity_pulse/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "entity_pulse/csv.hpp"
#include "entity_pulse/io.hpp"
#include "entity_pulse/parallel.hpp"
#include "number_format.hpp"

namespace entity_pulse {

namespace {

constexpr std::size_t kBaseFields = 6;
constexpr std::size_t kBatchRows = 1 << 15;

Rejection reject(std::size_t row, RejectReason reason, std::string detail) {
  return Rejection{row, reason, std::move(detail)};
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool is_header(const std::vector<std::string>& fields) {
  return fields.size() >= kBaseFields && fields[0] == "text_id" && fields[1] == "user_id" &&
         fields[2] == "timestamp" && fields[3] == "mentions";
}

std::optional<std::vector<EntityMention>> parse_mentions(std::string_view field,
                                                         std::string& error) {
  std::vector<EntityMention> mentions;
  if (field.empty()) return mentions;
  std::size_t start = 0;
  while (start <= field.size()) {
    const std::size_t end = std::min(field.find(';', start), field.size());
    const std::string_view pair = field.substr(start, end - start);
    const std::size_t colon = pair.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      error = "mention '" + std::string(pair) + "' is not entity:confidence";
      return std::nullopt;
    }
    auto id = unescape_entity_id(pair.substr(0, colon));
    if (!id || id->empty()) {
      error = "bad entity id in mention '" + std::string(pair) + "'";
      return std::nullopt;
    }
    const auto confidence = detail::parse_double(pair.substr(colon + 1));
    if (!confidence) {
      error = "bad confidence in mention '" + std::string(pair) + "'";
      return std::nullopt;
    }
    // Collapse repeated entities, keeping the highest confidence.
    auto it = std::find_if(mentions.begin(), mentions.end(),
                           [&](const EntityMention& m) { return m.entity_id == *id; });
    if (it == mentions.end()) {
      mentions.push_back({std::move(*id), *confidence});
    } else {
      it->confidence = std::max(it->confidence, *confidence);
    }
    start = end + 1;
  }
  return mentions;
}

}  // namespace

std::string_view describe(RejectReason reason) {
  switch (reason) {
    case RejectReason::kFieldCount: return "wrong field count";
    case RejectReason::kEmptyId: return "empty identifier";
    case RejectReason::kBadTimestamp: return "bad timestamp";
    case RejectReason::kBadSentiment: return "malformed sentiment";
    case RejectReason::kSentimentOutOfRange: return "sentiment out of range";
    case RejectReason::kBadMentions: return "malformed mention list";
    case RejectReason::kBadQuoting: return "malformed quoting";
    case RejectReason::kDuplicateTextId: return "duplicate text id";
  }
  return "unknown";
}

std::string escape_entity_id(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    if (c == '%' || c == ';' || c == '"' || c == '\r' || c == '\n') {
      const auto u = static_cast<unsigned char>(c);
      out.push_back('%');
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xF]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::optional<std::string> unescape_entity_id(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] != '%') {
      out.push_back(escaped[i]);
      continue;
    }
    if (i + 2 >= escaped.size()) return std::nullopt;
    const int hi = hex_value(escaped[i + 1]);
    const int lo = hex_value(escaped[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

ParseResult parse_fields(std::span<const std::string> fields, std::size_t row) {
  if (fields.size() != kBaseFields && fields.size() != kBaseFields + 1) {
    return reject(row, RejectReason::kFieldCount,
                  "expected 6 or 7 fields, got " + std::to_string(fields.size()));
  }
  AnnotatedText text;
  text.text_id = fields[0];
  text.user_id = fields[1];
  if (text.text_id.empty() || text.user_id.empty()) {
    return reject(row, RejectReason::kEmptyId, "text_id and user_id must be non-empty");
  }

  const auto ts = parse_timestamp(fields[2]);
  if (!ts) return reject(row, RejectReason::kBadTimestamp, "cannot parse '" + fields[2] + "'");
  text.timestamp = *ts;

  std::string error;
  auto mentions = parse_mentions(fields[3], error);
  if (!mentions) return reject(row, RejectReason::kBadMentions, std::move(error));
  text.mentions = std::move(*mentions);

  const auto pos = detail::parse_integer<int>(fields[4]);
  const auto neg = detail::parse_integer<int>(fields[5]);
  if (!pos || !neg) {
    return reject(row, RejectReason::kBadSentiment,
                  "scores '" + fields[4] + "', '" + fields[5] + "' are not integers");
  }
  if (*pos < 1 || *pos > 5 || *neg < -5 || *neg > -1) {
    return reject(row, RejectReason::kSentimentOutOfRange,
                  "positive must be in [1,5] and negative in [-5,-1]");
  }
  text.sentiment = {*pos, *neg};

  if (fields.size() == kBaseFields + 1) text.text = fields[6];
  return text;
}

ParseResult parse_record(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  if (!csv::split(line, fields)) {
    return reject(row, RejectReason::kBadQuoting, "malformed CSV quoting");
  }
  return parse_fields(fields, row);
}

std::string serialize_record(const AnnotatedText& text) {
  std::string mentions;
  for (std::size_t i = 0; i < text.mentions.size(); ++i) {
    if (i > 0) mentions.push_back(';');
    mentions += escape_entity_id(text.mentions[i].entity_id);
    mentions.push_back(':');
    mentions += detail::format_double(text.mentions[i].confidence);
  }
  std::string out;
  out += csv::quote(text.text_id);
  out.push_back(',');
  out += csv::quote(text.user_id);
  out.push_back(',');
  out += format_timestamp(text.timestamp);
  out.push_back(',');
  out += csv::quote(mentions, /*force=*/true);
  out.push_back(',');
  out += std::to_string(text.sentiment.positive);
  out.push_back(',');
  out += std::to_string(text.sentiment.negative);
  if (text.text) {
    out.push_back(',');
    out += csv::quote(*text.text);
  }
  return out;
}

Corpus::Corpus(std::vector<AnnotatedText> records) : records_(std::move(records)) {
  std::sort(records_.begin(), records_.end(),
            [](const AnnotatedText& a, const AnnotatedText& b) {
              if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
              return a.text_id < b.text_id;
            });
}

bool Corpus::has_text() const {
  return std::any_of(records_.begin(), records_.end(),
                     [](const AnnotatedText& r) { return r.text.has_value(); });
}

std::vector<std::pair<Period, std::span<const AnnotatedText>>> Corpus::partition(
    Granularity g) const {
  std::vector<std::pair<Period, std::span<const AnnotatedText>>> out;
  std::size_t begin = 0;
  while (begin < records_.size()) {
    const Period p = assign(records_[begin].timestamp, g);
    std::size_t end = begin;
    while (end < records_.size() && records_[end].timestamp < p.end) ++end;
    out.emplace_back(p, std::span<const AnnotatedText>(records_).subspan(begin, end - begin));
    begin = end;
  }
  return out;
}

CorpusStats Corpus::stats(std::size_t rejected) const {
  CorpusStats s;
  s.record_count = records_.size();
  s.rejected_count = rejected;
  std::unordered_set<std::string_view> users;
  users.reserve(records_.size());
  for (const auto& r : records_) users.insert(r.user_id);
  s.distinct_users = users.size();
  if (!records_.empty()) {
    s.first = records_.front().timestamp;
    s.last = records_.back().timestamp;
  }
  return s;
}

IngestResult ingest(std::istream& source, const IngestOptions& options) {
  std::vector<AnnotatedText> records;
  std::vector<Rejection> rejections;
  std::unordered_set<std::string> seen_ids;

  csv::Reader reader(source);
  std::vector<csv::Row> batch;
  std::vector<ParseResult> parsed;
  bool first_row = true;

  auto flush = [&] {
    parsed.assign(batch.size(), Rejection{});
    constexpr std::size_t kChunk = 1024;
    const std::size_t chunks = (batch.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
      const std::size_t end = std::min(batch.size(), (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < end; ++i) {
        const csv::Row& row = batch[i];
        parsed[i] = row.malformed
                        ? ParseResult{reject(row.number, RejectReason::kBadQuoting,
                                             "stray quote in record at line " +
                                                 std::to_string(row.line))}
                        : parse_fields(row.fields, row.number);
      }
    });
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      auto& result = parsed[i];
      if (auto* r = std::get_if<Rejection>(&result)) {
        rejections.push_back(std::move(*r));
        continue;
      }
      auto& text = std::get<AnnotatedText>(result);
      if (!seen_ids.insert(text.text_id).second) {
        rejections.push_back(
            reject(batch[i].number, RejectReason::kDuplicateTextId, text.text_id));
        continue;
      }
      if (options.min_confidence) {
        std::erase_if(text.mentions, [&](const EntityMention& m) {
          return m.confidence < *options.min_confidence;
        });
      }
      records.push_back(std::move(text));
    }
    batch.clear();
  };

  try {
    csv::Row row;
    while (reader.next(row)) {
      if (first_row) {
        first_row = false;
        if (is_header(row.fields)) continue;
      }
      batch.push_back(std::move(row));
      if (batch.size() == kBatchRows) flush();
    }
    flush();
  } catch (const csv::ReadError& e) {
    throw IngestError(e.what(), e.line(), e.offset());
  }

  IngestResult result;
  result.corpus = Corpus(std::move(records));
  result.stats = result.corpus.stats(rejections.size());
  result.rejections = std::move(rejections);
  return result;
}

IngestResult ingest_file(const std::filesystem::path& path, const IngestOptions& options) {
  auto in = open_input(path);
  return ingest(*in, options);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& r : corpus.records()) out << serialize_record(r) << '\n';
}

void write_rejections(std::ostream& out, std::span<const Rejection> rejections) {
  out << "row,reason\n";
  for (const auto& r : rejections) out << r.row << ',' << csv::quote(describe(r.reason)) << '\n';
}

}  // namespace entity_pulse
