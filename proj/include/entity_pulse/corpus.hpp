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

// Archive record model and CSV ingestion.
//
// Row schema (RFC-4180, no header required):
//
//   text_id,user_id,timestamp,mentions,positive,negative[,text]
//
// `mentions` holds `entity_id:confidence` pairs joined by `;`. The split
// happens on the last `:` of each pair, so identifiers may contain `:`.
// `%`, `;`, `"`, CR and LF inside identifiers are percent-escaped.
// `timestamp` is ISO-8601 UTC. `positive` is in [1, 5], `negative` in
// [-5, -1]. The optional `text` column carries raw text for spam filtering.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entity_pulse/timeline.hpp"

namespace entity_pulse {

struct EntityMention {
  std::string entity_id;
  double confidence = 0.0;

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

struct SentimentScores {
  int positive = 1;   // [1, 5]
  int negative = -1;  // [-5, -1]

  friend bool operator==(const SentimentScores&, const SentimentScores&) = default;
};

/// Predominant sentiment of a text: positive + negative, in [-4, 4].
constexpr int derive_attitude(const SentimentScores& s) { return s.positive + s.negative; }

/// Magnitude of sentiment: positive - negative - 2, in [0, 8].
constexpr int derive_sentimentality(const SentimentScores& s) {
  return s.positive - s.negative - 2;
}

struct AnnotatedText {
  std::string text_id;
  std::string user_id;
  Timestamp timestamp;
  std::vector<EntityMention> mentions;  // duplicate-free by entity_id
  SentimentScores sentiment;
  std::optional<std::string> text;

  int attitude() const { return derive_attitude(sentiment); }
  int sentimentality() const { return derive_sentimentality(sentiment); }

  friend bool operator==(const AnnotatedText&, const AnnotatedText&) = default;
};

enum class RejectReason : std::uint8_t {
  kFieldCount,
  kEmptyId,
  kBadTimestamp,
  kBadSentiment,
  kSentimentOutOfRange,
  kBadMentions,
  kBadQuoting,
  kDuplicateTextId,
};

std::string_view describe(RejectReason reason);

struct Rejection {
  std::size_t row = 0;
  RejectReason reason = RejectReason::kFieldCount;
  std::string detail;
};

using ParseResult = std::variant<AnnotatedText, Rejection>;

/// Validates one already-split record. Never returns a partial record.
ParseResult parse_fields(std::span<const std::string> fields, std::size_t row = 0);

/// Parses one CSV record held in memory.
ParseResult parse_record(std::string_view line, std::size_t row = 0);

/// Canonical CSV form of a record, without a trailing newline. The mentions
/// field is always quoted; other fields only when they need it.
std::string serialize_record(const AnnotatedText& text);

/// Percent-escaping used for entity identifiers inside the mentions field.
std::string escape_entity_id(std::string_view id);
std::optional<std::string> unescape_entity_id(std::string_view escaped);

struct CorpusStats {
  std::size_t record_count = 0;
  std::size_t rejected_count = 0;
  std::size_t distinct_users = 0;
  std::optional<Timestamp> first;  // set iff record_count > 0
  std::optional<Timestamp> last;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// Immutable collection of validated records ordered by (timestamp, text_id).
class Corpus {
 public:
  Corpus() = default;
  /// Takes ownership and sorts. Text ids are assumed unique.
  explicit Corpus(std::vector<AnnotatedText> records);

  std::span<const AnnotatedText> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  /// True when at least one record carries raw text.
  bool has_text() const;

  /// Records of each period of granularity `g`, in chronological order.
  /// Only non-empty periods are returned.
  std::vector<std::pair<Period, std::span<const AnnotatedText>>> partition(Granularity g) const;

  CorpusStats stats(std::size_t rejected = 0) const;

 private:
  std::vector<AnnotatedText> records_;
};

struct IngestOptions {
  /// Mentions whose confidence is below this value are dropped; the record
  /// itself is kept.
  std::optional<double> min_confidence;
};

struct IngestResult {
  Corpus corpus;
  CorpusStats stats;
  std::vector<Rejection> rejections;
};

/// Raised when the source itself cannot be read. Malformed rows do not
/// raise; they become rejections.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::size_t line, std::size_t offset)
      : std::runtime_error(what), line_(line), offset_(offset) {}
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

IngestResult ingest(std::istream& source, const IngestOptions& options = {});

/// As above, reading `path` (gzip-compressed when it ends in `.gz`).
IngestResult ingest_file(const std::filesystem::path& path, const IngestOptions& options = {});

/// Writes every record in canonical form, one per line.
void write_corpus(std::ostream& out, const Corpus& corpus);

/// Side report: `row,reason` header followed by one line per rejection.
void write_rejections(std::ostream& out, std::span<const Rejection> rejections);

}  // namespace entity_pulse
