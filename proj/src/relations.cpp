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

#include "entity_pulse/relations.hpp"

#include <algorithm>
#include <stdexcept>

namespace entity_pulse {

namespace {

void require_distinct(std::string_view a, std::string_view b) {
  if (a == b) throw std::invalid_argument("connectedness of an entity to itself is undefined");
}

std::vector<EntityId> neighborhood(const EntityIndex& index, const EntityPosting* posting) {
  return posting ? index.neighbor_entities(*posting) : std::vector<EntityId>{};
}

RankedNetwork rank(const EntityIndex& index, std::string_view entity, const Period& period,
                   std::size_t k, NetworkVariant variant, const SignedNetworkOptions* filter) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  RankedNetwork net;
  net.entity_id = std::string(entity);
  net.period = period;
  net.variant = variant;
  if (filter) net.delta = filter->delta;

  const EntityPosting* posting = index.posting(entity, period);
  if (posting == nullptr) return net;

  struct Candidate {
    const CoOccurrence* co;
    double score;
  };
  std::vector<Candidate> candidates;
  const double total = static_cast<double>(posting->text_count);
  for (const CoOccurrence& co : index.cooccurrences(*posting)) {
    if (filter) {
      if (co.pair_text_count < filter->min_support) continue;
      const double mean =
          static_cast<double>(co.pair_attitude_sum) / static_cast<double>(co.pair_text_count);
      const bool keep = variant == NetworkVariant::kPositive
                            ? is_strong_positive(mean, filter->delta)
                            : is_strong_negative(mean, filter->delta);
      if (!keep) continue;
    }
    candidates.push_back({&co, static_cast<double>(co.pair_text_count) / total});
  }

  // Ids follow lexicographic order of names, so comparing ids is the
  // documented name tie-break.
  const auto better = [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.co->pair_text_count != b.co->pair_text_count) {
      return a.co->pair_text_count > b.co->pair_text_count;
    }
    return a.co->entity < b.co->entity;
  };
  const std::size_t n = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                    candidates.end(), better);
  for (std::size_t i = 0; i < n; ++i) {
    net.entries.push_back(
        {index.entity_name(candidates[i].co->entity), candidates[i].score,
         candidates[i].co->pair_text_count});
  }
  return net;
}

}  // namespace

std::optional<double> direct_connectedness(const EntityIndex& index, std::string_view entity,
                                           std::string_view other, const Period& period) {
  require_distinct(entity, other);
  const EntityPosting* posting = index.posting(entity, period);
  if (posting == nullptr) return std::nullopt;
  const auto other_id = index.find_entity(other);
  const CoOccurrence* co = other_id ? index.cooccurrence(*posting, *other_id) : nullptr;
  const std::uint64_t shared = co ? co->pair_text_count : 0;
  return static_cast<double>(shared) / static_cast<double>(posting->text_count);
}

std::optional<double> indirect_connectedness(const EntityIndex& index, std::string_view entity,
                                             std::string_view other, const Period& period,
                                             NeighborMode mode) {
  require_distinct(entity, other);
  std::vector<EntityId> mine = neighborhood(index, index.posting(entity, period));
  std::vector<EntityId> theirs = neighborhood(index, index.posting(other, period));
  if (mode == NeighborMode::kExcludeQueryPair) {
    const auto self = index.find_entity(entity);
    const auto peer = index.find_entity(other);
    const auto drop = [&](EntityId id) { return id == self || id == peer; };
    std::erase_if(mine, drop);
    std::erase_if(theirs, drop);
  }
  if (mine.empty()) return std::nullopt;
  std::vector<EntityId> common;
  std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(mine.size());
}

std::optional<double> connectedness_to_set(const EntityIndex& index, std::string_view entity,
                                           std::span<const std::string> others,
                                           const Period& period) {
  if (others.empty()) throw std::invalid_argument("entity set must be non-empty");
  double sum = 0.0;
  for (const std::string& other : others) {
    if (other == entity) throw std::invalid_argument("entity set must not contain the query entity");
  }
  for (const std::string& other : others) {
    const auto score = direct_connectedness(index, entity, other, period);
    if (!score) return std::nullopt;
    sum += *score;
  }
  return sum / static_cast<double>(others.size());
}

std::vector<std::string> neighbor_entities(const EntityIndex& index, std::string_view entity,
                                           const Period& period) {
  std::vector<std::string> out;
  for (EntityId id : neighborhood(index, index.posting(entity, period))) {
    out.push_back(index.entity_name(id));
  }
  return out;
}

std::string_view to_string(NetworkVariant v) {
  switch (v) {
    case NetworkVariant::kPlain: return "plain";
    case NetworkVariant::kPositive: return "positive";
    case NetworkVariant::kNegative: return "negative";
  }
  return "plain";
}

std::optional<NetworkVariant> parse_network_variant(std::string_view token) {
  if (token == "plain") return NetworkVariant::kPlain;
  if (token == "positive") return NetworkVariant::kPositive;
  if (token == "negative") return NetworkVariant::kNegative;
  return std::nullopt;
}

RankedNetwork k_network(const EntityIndex& index, std::string_view entity, const Period& period,
                        std::size_t k) {
  return rank(index, entity, period, k, NetworkVariant::kPlain, nullptr);
}

RankedNetwork signed_k_network(const EntityIndex& index, std::string_view entity,
                               const Period& period, std::size_t k, NetworkVariant sign,
                               const SignedNetworkOptions& options) {
  if (sign == NetworkVariant::kPlain) {
    throw std::invalid_argument("signed network requires the positive or negative variant");
  }
  if (!(options.delta >= 0.0 && options.delta <= 4.0)) {
    throw std::invalid_argument("delta must lie in [0, 4]");
  }
  if (options.min_support == 0) throw std::invalid_argument("min_support must be at least 1");
  return rank(index, entity, period, k, sign, &options);
}

}  // namespace entity_pulse
