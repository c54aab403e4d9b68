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

// Entity-to-entity connectedness and k-Networks.
//
// All scores are directed: connectedness(e -> e') is normalized by e's
// texts (or neighbourhood), so swapping the arguments changes the value.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entity_pulse/entity_index.hpp"

namespace entity_pulse {

/// Share of e's texts in `period` that also mention `other`. Empty when e
/// is not mentioned. Throws std::invalid_argument when entity == other.
std::optional<double> direct_connectedness(const EntityIndex& index, std::string_view entity,
                                           std::string_view other, const Period& period);

enum class NeighborMode : std::uint8_t {
  /// Drop both query entities from both neighbourhoods (default).
  kExcludeQueryPair,
  /// Use the raw neighbourhoods, each of which contains its own entity.
  kLiteral,
};

/// |N(e) ∩ N(other)| / |N(e)| where N(x) is the set of entities appearing
/// in texts that mention x. Empty when N(e) is empty after the mode's
/// exclusions. Throws std::invalid_argument when entity == other.
std::optional<double> indirect_connectedness(const EntityIndex& index, std::string_view entity,
                                             std::string_view other, const Period& period,
                                             NeighborMode mode = NeighborMode::kExcludeQueryPair);

/// Mean direct connectedness from `entity` to each member of `others`.
/// Throws std::invalid_argument when `others` is empty or contains `entity`.
std::optional<double> connectedness_to_set(const EntityIndex& index, std::string_view entity,
                                           std::span<const std::string> others,
                                           const Period& period);

/// Neighbourhood of `entity` in `period` as entity names, sorted, the entity
/// itself included. Empty when not mentioned.
std::vector<std::string> neighbor_entities(const EntityIndex& index, std::string_view entity,
                                           const Period& period);

enum class NetworkVariant : std::uint8_t { kPlain, kPositive, kNegative };

std::string_view to_string(NetworkVariant v);
std::optional<NetworkVariant> parse_network_variant(std::string_view token);

struct NetworkEntry {
  std::string entity_id;
  double score = 0.0;         // direct connectedness
  std::uint64_t support = 0;  // shared texts

  friend bool operator==(const NetworkEntry&, const NetworkEntry&) = default;
};

struct RankedNetwork {
  std::string entity_id;
  Period period;
  NetworkVariant variant = NetworkVariant::kPlain;
  std::optional<double> delta;  // signed variants only
  std::vector<NetworkEntry> entries;
};

/// The k co-occurring entities with the highest direct connectedness.
/// Order: score desc, shared texts desc, entity id ascending. A mean over a
/// size-k subset is maximized by the k best individual scores, so this is
/// the subset argmax. Throws std::invalid_argument when k == 0.
RankedNetwork k_network(const EntityIndex& index, std::string_view entity, const Period& period,
                        std::size_t k);

struct SignedNetworkOptions {
  double delta = 2.0;              // [0, 4]
  std::uint64_t min_support = 1;   // shared texts required per candidate
};

/// k_network restricted to co-entities whose mean pair attitude is >= delta
/// (positive) or <= -delta (negative), with the positive side winning a
/// shared boundary. Throws std::invalid_argument for k == 0, a plain
/// variant, delta outside [0, 4] or min_support == 0.
RankedNetwork signed_k_network(const EntityIndex& index, std::string_view entity,
                               const Period& period, std::size_t k, NetworkVariant sign,
                               const SignedNetworkOptions& options = {});

}  // namespace entity_pulse
