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

#include "entity_pulse/entity_index.hpp"

#include <algorithm>
#include <stdexcept>

#include "entity_pulse/distinct_counter.hpp"
#include "entity_pulse/parallel.hpp"

namespace entity_pulse {

namespace {

// Records flattened to integer ids so per-period work is allocation-light.
struct FlatCorpus {
  std::vector<std::uint32_t> user;
  std::vector<std::int8_t> attitude;
  std::vector<std::int8_t> sentimentality;
  std::vector<std::uint64_t> mention_begin;  // size = records + 1
  std::vector<EntityId> mentions;            // sorted per record
};

struct Mention {
  EntityId entity;
  std::uint32_t user;
  std::int8_t attitude;
  std::int8_t sentimentality;
};

struct Pair {
  EntityId entity;
  EntityId other;
  std::int8_t attitude;
};

struct SliceBuild {
  PeriodSlice slice;
  std::vector<EntityPosting> postings;
  std::vector<CoOccurrence> cooccur;
};

SliceBuild build_slice(const FlatCorpus& flat, const Period& period, std::size_t begin,
                       std::size_t end, const BuildOptions& options) {
  SliceBuild out;
  out.slice.period = period;
  out.slice.text_total = end - begin;

  std::vector<std::uint32_t> users(flat.user.begin() + static_cast<std::ptrdiff_t>(begin),
                                   flat.user.begin() + static_cast<std::ptrdiff_t>(end));
  std::sort(users.begin(), users.end());
  out.slice.user_total =
      static_cast<std::uint64_t>(std::unique(users.begin(), users.end()) - users.begin());

  std::vector<Mention> mentions;
  std::vector<Pair> pairs;
  mentions.reserve(flat.mention_begin[end] - flat.mention_begin[begin]);
  for (std::size_t r = begin; r < end; ++r) {
    const auto first = flat.mentions.begin() + static_cast<std::ptrdiff_t>(flat.mention_begin[r]);
    const auto last = flat.mentions.begin() + static_cast<std::ptrdiff_t>(flat.mention_begin[r + 1]);
    for (auto a = first; a != last; ++a) {
      mentions.push_back({*a, flat.user[r], flat.attitude[r], flat.sentimentality[r]});
      for (auto b = first; b != last; ++b) {
        if (a != b) pairs.push_back({*a, *b, flat.attitude[r]});
      }
    }
  }
  std::sort(mentions.begin(), mentions.end(), [](const Mention& a, const Mention& b) {
    return a.entity != b.entity ? a.entity < b.entity : a.user < b.user;
  });
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.entity != b.entity ? a.entity < b.entity : a.other < b.other;
  });

  std::size_t p = 0;
  for (std::size_t i = 0; i < mentions.size();) {
    EntityPosting posting;
    posting.entity = mentions[i].entity;
    DistinctCounter sketch;
    std::uint32_t last_user = 0;
    for (; i < mentions.size() && mentions[i].entity == posting.entity; ++i) {
      const Mention& m = mentions[i];
      if (options.sketch_users) {
        sketch.add(m.user);
      } else if (posting.text_count == 0 || m.user != last_user) {
        ++posting.user_count;
      }
      last_user = m.user;
      ++posting.text_count;
      posting.attitude_sum += m.attitude;
      posting.sentimentality_sum += m.sentimentality;
      if (is_strong_positive(m.attitude, options.delta)) {
        ++posting.strong_pos_count;
      } else if (is_strong_negative(m.attitude, options.delta)) {
        ++posting.strong_neg_count;
      }
    }
    if (options.sketch_users) {
      posting.user_count = std::clamp<std::uint64_t>(
          sketch.estimate(), 1, std::min(posting.text_count, out.slice.user_total));
    }

    posting.cooccur_begin = out.cooccur.size();
    while (p < pairs.size() && pairs[p].entity == posting.entity) {
      CoOccurrence co{pairs[p].other, 0, 0};
      for (; p < pairs.size() && pairs[p].entity == posting.entity && pairs[p].other == co.entity;
           ++p) {
        ++co.pair_text_count;
        co.pair_attitude_sum += pairs[p].attitude;
      }
      out.cooccur.push_back(co);
    }
    posting.cooccur_count = out.cooccur.size() - posting.cooccur_begin;
    out.postings.push_back(posting);
  }
  return out;
}

}  // namespace

EntityIndex EntityIndex::build(const Corpus& corpus, const BuildOptions& options) {
  if (!(options.delta >= 0.0 && options.delta <= 4.0)) {
    throw std::invalid_argument("delta must lie in [0, 4]");
  }
  EntityIndex index;
  index.granularity_ = options.granularity;
  index.delta_ = options.delta;
  index.sketch_users_ = options.sketch_users;

  const auto records = corpus.records();

  // Entity dictionary in lexicographic order.
  std::unordered_map<std::string_view, EntityId> first_seen;
  std::vector<std::string_view> names;
  for (const auto& r : records) {
    for (const auto& m : r.mentions) {
      if (first_seen.try_emplace(m.entity_id, static_cast<EntityId>(names.size())).second) {
        names.push_back(m.entity_id);
      }
    }
  }
  std::vector<EntityId> order(names.size());
  for (EntityId i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](EntityId a, EntityId b) { return names[a] < names[b]; });
  std::vector<EntityId> remap(names.size());
  index.entities_.reserve(names.size());
  for (EntityId rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    index.entities_.emplace_back(names[order[rank]]);
  }

  FlatCorpus flat;
  flat.user.reserve(records.size());
  flat.attitude.reserve(records.size());
  flat.sentimentality.reserve(records.size());
  flat.mention_begin.reserve(records.size() + 1);
  std::unordered_map<std::string_view, std::uint32_t> user_ids;
  flat.mention_begin.push_back(0);
  for (const auto& r : records) {
    const auto [it, inserted] =
        user_ids.try_emplace(r.user_id, static_cast<std::uint32_t>(user_ids.size()));
    flat.user.push_back(it->second);
    flat.attitude.push_back(static_cast<std::int8_t>(r.attitude()));
    flat.sentimentality.push_back(static_cast<std::int8_t>(r.sentimentality()));
    const std::size_t start = flat.mentions.size();
    for (const auto& m : r.mentions) flat.mentions.push_back(remap[first_seen.at(m.entity_id)]);
    std::sort(flat.mentions.begin() + static_cast<std::ptrdiff_t>(start), flat.mentions.end());
    flat.mention_begin.push_back(flat.mentions.size());
  }

  const auto partitions = corpus.partition(options.granularity);
  std::vector<SliceBuild> built(partitions.size());
  parallel_for(partitions.size(), [&](std::size_t i) {
    const auto& [period, span] = partitions[i];
    const auto begin = static_cast<std::size_t>(span.data() - records.data());
    built[i] = build_slice(flat, period, begin, begin + span.size(), options);
  });

  for (std::size_t i = 0; i < built.size(); ++i) {
    SliceBuild& b = built[i];
    b.slice.posting_begin = index.postings_.size();
    b.slice.posting_count = b.postings.size();
    const std::uint64_t co_base = index.cooccur_.size();
    for (auto& posting : b.postings) {
      posting.slice = static_cast<std::uint32_t>(i);
      posting.cooccur_begin += co_base;
      index.postings_.push_back(posting);
    }
    index.cooccur_.insert(index.cooccur_.end(), b.cooccur.begin(), b.cooccur.end());
    index.slices_.push_back(b.slice);
  }
  index.rebuild_lookup();
  return index;
}

void EntityIndex::rebuild_lookup() {
  entity_ids_.clear();
  entity_ids_.reserve(entities_.size());
  for (EntityId i = 0; i < entities_.size(); ++i) entity_ids_.emplace(entities_[i], i);
}

std::optional<EntityId> EntityIndex::find_entity(std::string_view name) const {
  const auto it = entity_ids_.find(std::string(name));
  if (it == entity_ids_.end()) return std::nullopt;
  return it->second;
}

const PeriodSlice* EntityIndex::slice(const Period& period) const {
  if (period.granularity != granularity_) {
    throw std::invalid_argument("period granularity '" + std::string(to_string(period.granularity)) +
                                "' does not match index granularity '" +
                                std::string(to_string(granularity_)) + "'");
  }
  const auto it = std::lower_bound(
      slices_.begin(), slices_.end(), period.start,
      [](const PeriodSlice& s, Timestamp start) { return s.period.start < start; });
  if (it == slices_.end() || it->period != period) return nullptr;
  return &*it;
}

const EntityPosting* EntityIndex::posting(EntityId entity, const Period& period) const {
  const PeriodSlice* s = slice(period);
  if (s == nullptr) return nullptr;
  const auto first = postings_.begin() + static_cast<std::ptrdiff_t>(s->posting_begin);
  const auto last = first + static_cast<std::ptrdiff_t>(s->posting_count);
  const auto it = std::lower_bound(
      first, last, entity, [](const EntityPosting& p, EntityId e) { return p.entity < e; });
  if (it == last || it->entity != entity) return nullptr;
  return &*it;
}

const EntityPosting* EntityIndex::posting(std::string_view entity, const Period& period) const {
  const auto id = find_entity(entity);
  if (!id) {
    slice(period);  // still validates the granularity
    return nullptr;
  }
  return posting(*id, period);
}

std::span<const CoOccurrence> EntityIndex::cooccurrences(const EntityPosting& posting) const {
  return std::span<const CoOccurrence>(cooccur_).subspan(posting.cooccur_begin,
                                                         posting.cooccur_count);
}

const CoOccurrence* EntityIndex::cooccurrence(const EntityPosting& posting, EntityId other) const {
  const auto co = cooccurrences(posting);
  const auto it = std::lower_bound(co.begin(), co.end(), other,
                                   [](const CoOccurrence& c, EntityId e) { return c.entity < e; });
  if (it == co.end() || it->entity != other) return nullptr;
  return &*it;
}

std::vector<EntityId> EntityIndex::neighbor_entities(const EntityPosting& posting) const {
  std::vector<EntityId> out;
  const auto co = cooccurrences(posting);
  out.reserve(co.size() + 1);
  bool self_added = false;
  for (const auto& c : co) {
    if (!self_added && posting.entity < c.entity) {
      out.push_back(posting.entity);
      self_added = true;
    }
    out.push_back(c.entity);
  }
  if (!self_added) out.push_back(posting.entity);
  return out;
}

}  // namespace entity_pulse
