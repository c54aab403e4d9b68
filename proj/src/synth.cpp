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

// Per-text draw sequence (every text, in this order):
//   1. user        below(users)
//   2. offset      below(period length in seconds)
//   3. sentiment   mild: pos = 1 + [uniform() < 0.3], neg = -1 - [uniform() < 0.3]
//                  burst texts first draw uniform() < share; strong texts
//                  alternate (4,-1) and (1,-4), others fall back to mild
//                  signed-pair: (4,-1) or (1,-4), no draw
//   4. confidence  -below(300) / 100 for each mention, in mention order
//   5. co-mention  roster texts only: uniform() < p, then below(n - 1)
//                  picks another roster entity, then its confidence (step 4)
//   6. text        only with a spam-block: uniform() < fraction marks spam,
//                  then draw_document for the drawn class

#include "entity_pulse/synth.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "number_format.hpp"

namespace entity_pulse {

namespace {

using nlohmann::json;

constexpr const char* kSyllables[16] = {"ba", "ko", "ri", "te", "mu", "sa", "lo", "ne",
                                        "vi", "da", "pe", "gu", "fo", "zi", "ha", "ju"};

std::string pseudo_word(std::string_view prefix, std::size_t i) {
  std::string w(prefix);
  std::string tail;
  int digits = 0;
  do {
    tail.insert(0, kSyllables[i % 16]);
    i /= 16;
    ++digits;
  } while (i > 0 || digits < 2);
  return w + tail;
}

std::uint64_t draw_count(SplitMix64& rng, double rate) {
  const double whole = std::floor(rate);
  const double frac = rate - whole;
  return static_cast<std::uint64_t>(whole) + (rng.uniform() < frac ? 1 : 0);
}

SentimentScores mild_sentiment(SplitMix64& rng) {
  SentimentScores s;
  s.positive = 1 + (rng.uniform() < 0.3 ? 1 : 0);
  s.negative = -1 - (rng.uniform() < 0.3 ? 1 : 0);
  return s;
}

double draw_confidence(SplitMix64& rng) { return -static_cast<double>(rng.below(300)) / 100.0; }

EventKind parse_kind(std::string_view s, bool& ok) {
  ok = true;
  if (s == "popularity-spike") return EventKind::kPopularitySpike;
  if (s == "controversy-burst") return EventKind::kControversyBurst;
  if (s == "pair-link") return EventKind::kPairLink;
  if (s == "signed-pair") return EventKind::kSignedPair;
  if (s == "spam-block") return EventKind::kSpamBlock;
  ok = false;
  return EventKind::kPopularitySpike;
}

bool is_pair(EventKind k) { return k == EventKind::kPairLink || k == EventKind::kSignedPair; }

class Generator {
 public:
  explicit Generator(const ScenarioSpec& spec)
      : spec_(spec), rng_(spec.seed),
        vocab_(make_vocabulary(spec.vocabulary_size, spec.vocabulary_overlap)) {
    for (const auto& ev : spec.events) {
      if (ev.kind == EventKind::kSpamBlock) spam_ = &ev;
    }
  }

  GeneratedScenario run() {
    const auto periods = enumerate(spec_.window, spec_.granularity);
    json expectations = json::array();
    std::vector<std::uint64_t> pair_totals(spec_.events.size(), 0);

    for (const Period& period : periods) {
      const std::uint64_t background = draw_count(rng_, spec_.background_rate);
      for (std::uint64_t i = 0; i < background; ++i) emit(period, {}, Mood::kMild, nullptr);

      for (std::size_t e = 0; e < spec_.entities.size(); ++e) {
        double rate = spec_.entities[e].rate;
        const PlantedEvent* burst = nullptr;
        for (const auto& ev : spec_.events) {
          if (ev.entity != spec_.entities[e].id || !applies(ev, period)) continue;
          if (ev.kind == EventKind::kPopularitySpike) rate *= ev.factor;
          if (ev.kind == EventKind::kControversyBurst) burst = &ev;
        }
        const std::uint64_t n = draw_count(rng_, rate);
        strong_parity_ = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
          emit(period, {spec_.entities[e].id}, burst ? Mood::kBurst : Mood::kMild, burst, e);
        }
      }

      for (std::size_t j = 0; j < spec_.events.size(); ++j) {
        const PlantedEvent& ev = spec_.events[j];
        if (!is_pair(ev.kind) || !applies(ev, period)) continue;
        const Mood mood = ev.kind == EventKind::kPairLink
                              ? Mood::kMild
                              : (ev.sign > 0 ? Mood::kPositive : Mood::kNegative);
        for (std::uint64_t i = 0; i < ev.count; ++i) emit(period, {ev.entity, ev.other}, mood, nullptr);
        pair_totals[j] += ev.count;
      }
    }

    for (std::size_t j = 0; j < spec_.events.size(); ++j) {
      const PlantedEvent& ev = spec_.events[j];
      json x;
      x["kind"] = to_string(ev.kind);
      switch (ev.kind) {
        case EventKind::kPopularitySpike:
          x["entity"] = ev.entity;
          x["period"] = format_period(assign(*ev.period, spec_.granularity));
          x["factor"] = ev.factor;
          x["measure"] = "popularity_cu";
          x["expect"] = "top-1 high period";
          break;
        case EventKind::kControversyBurst:
          x["entity"] = ev.entity;
          x["period"] = format_period(assign(*ev.period, spec_.granularity));
          x["share"] = ev.share;
          x["measure"] = "controversiality";
          x["expect"] = "among top high periods";
          break;
        case EventKind::kPairLink:
        case EventKind::kSignedPair:
          x["entity"] = ev.entity;
          x["other"] = ev.other;
          x["period"] = ev.period ? json(format_period(assign(*ev.period, spec_.granularity)))
                                  : json(nullptr);
          x["planted_pair_texts"] = pair_totals[j];
          if (ev.kind == EventKind::kSignedPair) {
            x["sign"] = ev.sign > 0 ? "positive" : "negative";
            x["expect"] = std::string("in ") + (ev.sign > 0 ? "positive" : "negative") +
                          " network only";
          }
          break;
        case EventKind::kSpamBlock:
          x["fraction"] = ev.fraction;
          x["planted_spam"] = spam_count_;
          break;
      }
      expectations.push_back(std::move(x));
    }

    json manifest;
    manifest["seed"] = spec_.seed;
    manifest["granularity"] = to_string(spec_.granularity);
    manifest["window"] = {{"from", format_date(spec_.window.from)},
                          {"to", format_date(spec_.window.to)}};
    manifest["record_count"] = records_.size();
    manifest["spam_count"] = spam_count_;
    manifest["expectations"] = std::move(expectations);

    GeneratedScenario out;
    out.records = std::move(records_);
    out.manifest_json = manifest.dump(2);
    out.spam_count = spam_count_;
    return out;
  }

 private:
  enum class Mood { kMild, kBurst, kPositive, kNegative };

  bool applies(const PlantedEvent& ev, const Period& period) const {
    return !ev.period || period.contains(*ev.period);
  }

  void emit(const Period& period, std::vector<std::string> entities, Mood mood,
            const PlantedEvent* burst, std::optional<std::size_t> roster_index = std::nullopt) {
    AnnotatedText t;
    char id[32];
    std::snprintf(id, sizeof id, "t%08llu", static_cast<unsigned long long>(records_.size() + 1));
    t.text_id = id;
    t.user_id = "u" + std::to_string(rng_.below(spec_.users));
    const auto span = (period.end - period.start).count();
    t.timestamp = period.start + std::chrono::seconds{rng_.below(static_cast<std::uint64_t>(span))};

    switch (mood) {
      case Mood::kMild:
        t.sentiment = mild_sentiment(rng_);
        break;
      case Mood::kBurst:
        if (rng_.uniform() < burst->share) {
          t.sentiment = (strong_parity_++ % 2 == 0) ? SentimentScores{4, -1} : SentimentScores{1, -4};
        } else {
          t.sentiment = mild_sentiment(rng_);
        }
        break;
      case Mood::kPositive:
        t.sentiment = {4, -1};
        break;
      case Mood::kNegative:
        t.sentiment = {1, -4};
        break;
    }

    for (auto& e : entities) t.mentions.push_back({std::move(e), draw_confidence(rng_)});

    if (roster_index && spec_.entities.size() > 1) {
      if (rng_.uniform() < spec_.co_mention_probability) {
        std::size_t other = rng_.below(spec_.entities.size() - 1);
        if (other >= *roster_index) ++other;
        t.mentions.push_back({spec_.entities[other].id, draw_confidence(rng_)});
      }
    }

    if (spam_) {
      const bool spam = rng_.uniform() < spam_->fraction;
      if (spam) ++spam_count_;
      t.text = draw_document(rng_, vocab_, spam ? Label::kSpam : Label::kHam, 6, 14);
    }
    records_.push_back(std::move(t));
  }

  const ScenarioSpec& spec_;
  SplitMix64 rng_;
  Vocabulary vocab_;
  const PlantedEvent* spam_ = nullptr;
  std::vector<AnnotatedText> records_;
  std::size_t spam_count_ = 0;
  std::uint64_t strong_parity_ = 0;
};

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& path,
                std::vector<std::string>& errors) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    errors.push_back(path + key + ": wrong type");
  }
}

void read_instant(const json& obj, const char* key, std::optional<Timestamp>& out,
                  const std::string& path, std::vector<std::string>& errors) {
  if (!obj.contains(key) || obj.at(key).is_null()) return;
  const auto& v = obj.at(key);
  std::optional<Timestamp> t;
  if (v.is_string()) t = parse_date_prefix(v.get<std::string>());
  if (!t) {
    errors.push_back(path + key + ": expected YYYY, YYYY-MM or YYYY-MM-DD");
    return;
  }
  out = t;
}

}  // namespace

SpecError::SpecError(std::vector<std::string> diagnostics)
    : std::runtime_error([&] {
        std::string msg = "invalid scenario:";
        for (const auto& d : diagnostics) msg += "\n  " + d;
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kPopularitySpike: return "popularity-spike";
    case EventKind::kControversyBurst: return "controversy-burst";
    case EventKind::kPairLink: return "pair-link";
    case EventKind::kSignedPair: return "signed-pair";
    case EventKind::kSpamBlock: return "spam-block";
  }
  return "popularity-spike";
}

ScenarioSpec parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError({std::string("document: ") + e.what()});
  }
  if (!doc.is_object()) throw SpecError({"document: expected a JSON object"});

  std::vector<std::string> errors;
  ScenarioSpec spec;
  read_field(doc, "seed", spec.seed, "", errors);
  read_field(doc, "users", spec.users, "", errors);
  read_field(doc, "background_rate", spec.background_rate, "", errors);
  read_field(doc, "co_mention_probability", spec.co_mention_probability, "", errors);
  read_field(doc, "vocabulary_size", spec.vocabulary_size, "", errors);
  read_field(doc, "vocabulary_overlap", spec.vocabulary_overlap, "", errors);

  if (doc.contains("granularity")) {
    const auto& g = doc.at("granularity");
    const auto parsed = g.is_string() ? parse_granularity(g.get<std::string>()) : std::nullopt;
    if (parsed) {
      spec.granularity = *parsed;
    } else {
      errors.push_back("granularity: expected day, week, month or year");
    }
  }

  if (!doc.contains("window") || !doc.at("window").is_object()) {
    errors.push_back("window: required object with from/to");
  } else {
    std::optional<Timestamp> from, to;
    read_instant(doc.at("window"), "from", from, "window.", errors);
    read_instant(doc.at("window"), "to", to, "window.", errors);
    if (!from) errors.push_back("window.from: required");
    if (!to) errors.push_back("window.to: required");
    if (from && to) spec.window = {*from, *to};
  }

  if (doc.contains("entities")) {
    const auto& arr = doc.at("entities");
    if (!arr.is_array()) {
      errors.push_back("entities: expected an array");
    } else {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "entities[" + std::to_string(i) + "].";
        RosterEntity e;
        read_field(arr[i], "id", e.id, path, errors);
        read_field(arr[i], "rate", e.rate, path, errors);
        spec.entities.push_back(std::move(e));
      }
    }
  }

  if (doc.contains("events")) {
    const auto& arr = doc.at("events");
    if (!arr.is_array()) {
      errors.push_back("events: expected an array");
    } else {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "events[" + std::to_string(i) + "].";
        const json& obj = arr[i];
        PlantedEvent ev;
        std::string kind;
        read_field(obj, "kind", kind, path, errors);
        bool ok = false;
        ev.kind = parse_kind(kind, ok);
        if (!ok) errors.push_back(path + "kind: unknown event kind '" + kind + "'");
        read_field(obj, "entity", ev.entity, path, errors);
        read_field(obj, "other", ev.other, path, errors);
        read_instant(obj, "period", ev.period, path, errors);
        read_field(obj, "factor", ev.factor, path, errors);
        read_field(obj, "share", ev.share, path, errors);
        read_field(obj, "count", ev.count, path, errors);
        read_field(obj, "fraction", ev.fraction, path, errors);
        if (obj.contains("sign")) {
          const auto& s = obj.at("sign");
          if (s == "positive" || s == 1) {
            ev.sign = 1;
          } else if (s == "negative" || s == -1) {
            ev.sign = -1;
          } else {
            errors.push_back(path + "sign: expected positive or negative");
          }
        }
        spec.events.push_back(std::move(ev));
      }
    }
  }

  if (!errors.empty()) throw SpecError(std::move(errors));
  validate(spec);
  return spec;
}

void validate(const ScenarioSpec& spec) {
  std::vector<std::string> errors;
  const auto bad_real = [](double v) { return !std::isfinite(v) || v < 0.0; };

  if (spec.window.empty()) errors.push_back("window: from must precede to");
  if (spec.users == 0) errors.push_back("users: must be at least 1");
  if (bad_real(spec.background_rate)) errors.push_back("background_rate: must be >= 0");
  if (!(spec.co_mention_probability >= 0.0 && spec.co_mention_probability <= 1.0)) {
    errors.push_back("co_mention_probability: must lie in [0, 1]");
  }
  if (spec.vocabulary_size == 0) errors.push_back("vocabulary_size: must be at least 1");
  if (!(spec.vocabulary_overlap >= 0.0 && spec.vocabulary_overlap < 1.0)) {
    errors.push_back("vocabulary_overlap: must lie in [0, 1)");
  }

  std::set<std::string> roster;
  for (std::size_t i = 0; i < spec.entities.size(); ++i) {
    const std::string path = "entities[" + std::to_string(i) + "].";
    const auto& e = spec.entities[i];
    if (e.id.empty()) errors.push_back(path + "id: must be non-empty");
    if (!roster.insert(e.id).second) errors.push_back(path + "id: duplicate '" + e.id + "'");
    if (bad_real(e.rate)) errors.push_back(path + "rate: must be >= 0");
  }

  int spam_blocks = 0;
  for (std::size_t i = 0; i < spec.events.size(); ++i) {
    const std::string path = "events[" + std::to_string(i) + "].";
    const auto& ev = spec.events[i];
    if (ev.period && !spec.window.empty()) {
      const Timestamp first = assign(spec.window.from, spec.granularity).start;
      if (*ev.period < first || *ev.period >= spec.window.to) {
        errors.push_back(path + "period: outside window");
      }
    }
    switch (ev.kind) {
      case EventKind::kPopularitySpike:
      case EventKind::kControversyBurst:
        if (!roster.contains(ev.entity)) {
          errors.push_back(path + "entity: '" + ev.entity + "' is not in the roster");
        }
        if (!ev.period) errors.push_back(path + "period: required");
        if (ev.kind == EventKind::kPopularitySpike && bad_real(ev.factor)) {
          errors.push_back(path + "factor: must be >= 0");
        }
        if (ev.kind == EventKind::kControversyBurst && !(ev.share >= 0.0 && ev.share <= 1.0)) {
          errors.push_back(path + "share: must lie in [0, 1]");
        }
        break;
      case EventKind::kPairLink:
      case EventKind::kSignedPair:
        if (ev.entity.empty()) errors.push_back(path + "entity: required");
        if (ev.other.empty()) errors.push_back(path + "other: required");
        if (!ev.entity.empty() && ev.entity == ev.other) {
          errors.push_back(path + "other: must differ from entity");
        }
        if (ev.sign != 1 && ev.sign != -1) errors.push_back(path + "sign: must be +1 or -1");
        break;
      case EventKind::kSpamBlock:
        if (++spam_blocks > 1) errors.push_back(path + "kind: at most one spam-block");
        if (!(ev.fraction >= 0.0 && ev.fraction <= 1.0)) {
          errors.push_back(path + "fraction: must lie in [0, 1]");
        }
        break;
    }
  }
  if (!errors.empty()) throw SpecError(std::move(errors));
}

GeneratedScenario generate(const ScenarioSpec& spec) {
  validate(spec);
  return Generator(spec).run();
}

void write_records(std::ostream& out, const std::vector<AnnotatedText>& records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

Vocabulary make_vocabulary(std::size_t size, double overlap) {
  const auto shared = static_cast<std::size_t>(std::llround(static_cast<double>(size) * overlap));
  Vocabulary v;
  for (std::size_t i = 0; i < shared; ++i) {
    v.ham.push_back(pseudo_word("me", i));
    v.spam.push_back(v.ham.back());
  }
  for (std::size_t i = shared; i < size; ++i) {
    v.ham.push_back(pseudo_word("ka", i - shared));
    v.spam.push_back(pseudo_word("zo", i - shared));
  }
  return v;
}

std::string draw_document(SplitMix64& rng, const Vocabulary& vocab, Label label,
                          std::size_t min_tokens, std::size_t max_tokens) {
  const auto& words = label == Label::kSpam ? vocab.spam : vocab.ham;
  const std::size_t n = min_tokens + rng.below(max_tokens - min_tokens + 1);
  std::string doc;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) doc.push_back(' ');
    doc += words[rng.below(words.size())];
  }
  return doc;
}

std::vector<LabeledText> generate_labeled(const LabeledCorpusSpec& spec) {
  if (spec.vocabulary_size == 0 || spec.min_tokens > spec.max_tokens ||
      !(spec.overlap >= 0.0 && spec.overlap < 1.0) ||
      !(spec.spam_fraction >= 0.0 && spec.spam_fraction <= 1.0)) {
    throw SpecError({"labeled corpus: invalid parameters"});
  }
  const Vocabulary vocab = make_vocabulary(spec.vocabulary_size, spec.overlap);
  SplitMix64 rng(spec.seed);
  std::vector<LabeledText> out;
  out.reserve(spec.documents);
  for (std::size_t i = 0; i < spec.documents; ++i) {
    const Label label = rng.uniform() < spec.spam_fraction ? Label::kSpam : Label::kHam;
    out.push_back({draw_document(rng, vocab, label, spec.min_tokens, spec.max_tokens), label});
  }
  return out;
}

}  // namespace entity_pulse
