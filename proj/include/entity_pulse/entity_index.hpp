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

// Time-partitioned entity index.
//
// The index holds one PeriodSlice per non-empty period of its granularity
// and, inside each slice, one EntityPosting per entity mentioned in that
// period. A posting carries every aggregate the measures need: text and
// distinct-user counts, attitude and sentimentality sums, strong-attitude
// counts at the build-time threshold, and sparse co-occurrence counts with
// per-pair attitude sums. Queries never touch raw records.
//
// Layout is flat: slices reference a contiguous run of postings (sorted by
// entity id), postings reference a contiguous run of co-occurrences (sorted
// by entity id). Entity ids are assigned in lexicographic order of the
// entity strings, so id order and string order agree.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entity_pulse/corpus.hpp"
#include "entity_pulse/timeline.hpp"

namespace entity_pulse {

using EntityId = std::uint32_t;

struct CoOccurrence {
  EntityId entity = 0;
  std::uint64_t pair_text_count = 0;
  std::int64_t pair_attitude_sum = 0;

  friend bool operator==(const CoOccurrence&, const CoOccurrence&) = default;
};

struct EntityPosting {
  EntityId entity = 0;
  std::uint32_t slice = 0;  // index into EntityIndex::slices()
  std::uint64_t text_count = 0;
  std::uint64_t user_count = 0;
  std::int64_t attitude_sum = 0;
  std::int64_t sentimentality_sum = 0;
  std::uint64_t strong_pos_count = 0;
  std::uint64_t strong_neg_count = 0;
  std::uint64_t cooccur_begin = 0;
  std::uint64_t cooccur_count = 0;

  friend bool operator==(const EntityPosting&, const EntityPosting&) = default;
};

struct PeriodSlice {
  Period period;
  std::uint64_t text_total = 0;
  std::uint64_t user_total = 0;
  std::uint64_t posting_begin = 0;
  std::uint64_t posting_count = 0;

  friend bool operator==(const PeriodSlice&, const PeriodSlice&) = default;
};

/// Strong-attitude classification shared by the index and the networks.
/// Closed thresholds; when delta == 0 a neutral value counts as positive
/// only, so the two classes stay disjoint.
inline bool is_strong_positive(double attitude, double delta) { return attitude >= delta; }
inline bool is_strong_negative(double attitude, double delta) {
  return attitude <= -delta && !(attitude >= delta);
}

struct BuildOptions {
  Granularity granularity = Granularity::kMonth;
  double delta = 2.0;  // strong-attitude threshold, [0, 4]
  /// Estimate per-posting distinct users with a HyperLogLog sketch instead
  /// of exact sets. Slice user totals stay exact.
  bool sketch_users = false;
};

class IndexFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EntityIndex {
 public:
  EntityIndex() = default;

  /// Throws std::invalid_argument when delta is outside [0, 4].
  static EntityIndex build(const Corpus& corpus, const BuildOptions& options = {});

  /// Throws IndexFormatError on bad magic, version mismatch, truncation,
  /// checksum mismatch or inconsistent contents. Nothing is returned then.
  static EntityIndex load(const std::filesystem::path& path);
  static EntityIndex deserialize(std::span<const std::uint8_t> bytes);

  /// Atomic write (temp file + rename).
  void save(const std::filesystem::path& path) const;
  std::vector<std::uint8_t> serialize() const;

  Granularity granularity() const { return granularity_; }
  double delta() const { return delta_; }
  bool sketch_users() const { return sketch_users_; }

  std::span<const std::string> entities() const { return entities_; }
  std::span<const PeriodSlice> slices() const { return slices_; }
  std::span<const EntityPosting> postings() const { return postings_; }

  std::optional<EntityId> find_entity(std::string_view name) const;
  const std::string& entity_name(EntityId id) const { return entities_.at(id); }

  /// Slice for `period`, or nullptr when no text falls in it. Throws
  /// std::invalid_argument if the granularity differs from the index's.
  const PeriodSlice* slice(const Period& period) const;

  /// Stored posting, or nullptr when no text mentions the entity in `period`.
  const EntityPosting* posting(EntityId entity, const Period& period) const;
  const EntityPosting* posting(std::string_view entity, const Period& period) const;

  std::span<const CoOccurrence> cooccurrences(const EntityPosting& posting) const;

  /// Entities appearing in any text that mentions the posting's entity,
  /// the entity itself included. Sorted by id.
  std::vector<EntityId> neighbor_entities(const EntityPosting& posting) const;

  /// Co-occurrence record for (posting.entity, other), or nullptr.
  const CoOccurrence* cooccurrence(const EntityPosting& posting, EntityId other) const;

 private:
  Granularity granularity_ = Granularity::kMonth;
  double delta_ = 2.0;
  bool sketch_users_ = false;
  std::vector<std::string> entities_;
  std::unordered_map<std::string, EntityId> entity_ids_;
  std::vector<PeriodSlice> slices_;
  std::vector<EntityPosting> postings_;
  std::vector<CoOccurrence> cooccur_;

  void rebuild_lookup();
  void validate() const;
};

}  // namespace entity_pulse
