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

#include "entity_pulse/spam_filter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cwctype>
#include <locale>
#include <map>

#include <json.hpp>

#include "entity_pulse/csv.hpp"
#include "entity_pulse/parallel.hpp"

namespace entity_pulse {

namespace {

constexpr std::string_view kFormat = "entity-pulse-nb";
constexpr int kModelVersion = 1;

// Decodes one UTF-8 sequence; invalid bytes decode as U+FFFD.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i++]);
  if (b0 < 0x80) return b0;
  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    return 0xFFFD;
  }
  for (int k = 0; k < extra; ++k) {
    if (i >= s.size() || (static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) return 0xFFFD;
    cp = (cp << 6) | (static_cast<unsigned char>(s[i++]) & 0x3F);
  }
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode classification for non-ASCII code points, via a UTF-8 locale when
// the platform has one. Without it, every non-ASCII code point is treated
// as a letter and left unchanged.
class UnicodeClassifier {
 public:
  UnicodeClassifier() {
    for (const char* name : {"C.UTF-8", "C.utf8", "en_US.UTF-8"}) {
      try {
        locale_ = std::locale(name);
        ctype_ = &std::use_facet<std::ctype<wchar_t>>(locale_);
        return;
      } catch (const std::runtime_error&) {
      }
    }
  }

  bool is_alnum(char32_t cp) const {
    if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    if (cp == 0xFFFD) return false;
    if (ctype_ == nullptr) return true;
    return ctype_->is(std::ctype_base::alnum, static_cast<wchar_t>(cp));
  }

  char32_t lower(char32_t cp) const {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    if (ctype_ == nullptr) return cp;
    return static_cast<char32_t>(ctype_->tolower(static_cast<wchar_t>(cp)));
  }

 private:
  std::locale locale_;
  const std::ctype<wchar_t>* ctype_ = nullptr;
};

const UnicodeClassifier& classifier() {
  static const UnicodeClassifier instance;
  return instance;
}

}  // namespace

std::string_view to_string(Label label) { return label == Label::kSpam ? "spam" : "ham"; }

std::vector<std::string> tokenize(std::string_view text) {
  const UnicodeClassifier& uc = classifier();
  std::vector<std::string> tokens;
  std::string current;
  std::size_t length = 0;
  const auto emit = [&] {
    if (length > 1) tokens.push_back(current);
    current.clear();
    length = 0;
  };
  for (std::size_t i = 0; i < text.size();) {
    const char32_t cp = decode_utf8(text, i);
    if (uc.is_alnum(cp)) {
      encode_utf8(uc.lower(cp), current);
      ++length;
    } else {
      emit();
    }
  }
  emit();
  return tokens;
}

std::vector<LabeledText> read_labeled_csv(std::istream& in) {
  std::vector<LabeledText> out;
  csv::Reader reader(in);
  csv::Row row;
  while (reader.next(row)) {
    if (row.number == 1 && row.fields.size() == 2 && row.fields[0] == "label") continue;
    if (row.fields.size() != 2 || row.malformed) {
      throw std::invalid_argument("labeled row " + std::to_string(row.number) +
                                  ": expected label,text");
    }
    Label label;
    if (row.fields[0] == "spam") {
      label = Label::kSpam;
    } else if (row.fields[0] == "ham") {
      label = Label::kHam;
    } else {
      throw std::invalid_argument("labeled row " + std::to_string(row.number) +
                                  ": unknown label '" + row.fields[0] + "'");
    }
    out.push_back({std::move(row.fields[1]), label});
  }
  return out;
}

void write_labeled_csv(std::ostream& out, std::span<const LabeledText> examples) {
  out << "label,text\n";
  for (const auto& ex : examples) out << to_string(ex.label) << ',' << csv::quote(ex.text) << '\n';
}

NaiveBayesModel NaiveBayesModel::train(std::span<const LabeledText> examples, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("smoothing alpha must be positive");
  }
  std::array<std::size_t, 2> docs{0, 0};
  for (const auto& ex : examples) ++docs[static_cast<int>(ex.label)];
  if (docs[0] == 0 || docs[1] == 0) {
    throw std::invalid_argument("training data needs at least one spam and one ham example");
  }

  using Counts = std::map<std::string, std::array<std::uint64_t, 2>, std::less<>>;
  const std::size_t shards = std::max<std::size_t>(1, std::min(thread_cap(), examples.size()));
  std::vector<Counts> partial(shards);
  parallel_for(shards, [&](std::size_t s) {
    const std::size_t begin = examples.size() * s / shards;
    const std::size_t end = examples.size() * (s + 1) / shards;
    for (std::size_t i = begin; i < end; ++i) {
      const int c = static_cast<int>(examples[i].label);
      for (auto& tok : tokenize(examples[i].text)) ++partial[s][std::move(tok)][c];
    }
  });
  Counts counts = std::move(partial[0]);
  for (std::size_t s = 1; s < shards; ++s) {
    for (auto& [tok, n] : partial[s]) {
      auto& dst = counts[tok];
      dst[0] += n[0];
      dst[1] += n[1];
    }
  }

  NaiveBayesModel model;
  model.alpha_ = alpha;
  const double total_docs = static_cast<double>(docs[0] + docs[1]);
  for (int c = 0; c < 2; ++c) {
    model.log_prior_[c] = std::log(static_cast<double>(docs[c]) / total_docs);
  }
  std::array<double, 2> token_totals{0.0, 0.0};
  for (const auto& [tok, n] : counts) {
    model.vocabulary_.emplace(tok, static_cast<std::uint32_t>(model.tokens_.size()));
    model.tokens_.push_back(tok);
    token_totals[0] += static_cast<double>(n[0]);
    token_totals[1] += static_cast<double>(n[1]);
  }
  const double v = static_cast<double>(model.tokens_.size());
  for (int c = 0; c < 2; ++c) {
    const double denom = std::log(token_totals[c] + alpha * v);
    auto& ll = model.log_likelihood_[c];
    ll.reserve(model.tokens_.size());
    for (const auto& [tok, n] : counts) ll.push_back(std::log(static_cast<double>(n[c]) + alpha) - denom);
  }
  return model;
}

std::optional<double> NaiveBayesModel::log_likelihood(std::string_view token, Label label) const {
  const auto it = vocabulary_.find(std::string(token));
  if (it == vocabulary_.end()) return std::nullopt;
  return log_likelihood_[static_cast<int>(label)][it->second];
}

Classification NaiveBayesModel::classify(std::string_view text) const {
  double ham = log_prior_[0];
  double spam = log_prior_[1];
  for (const auto& tok : tokenize(text)) {
    const auto it = vocabulary_.find(tok);
    if (it == vocabulary_.end()) continue;
    ham += log_likelihood_[0][it->second];
    spam += log_likelihood_[1][it->second];
  }
  Classification out;
  // Logistic form of the two-class posterior; stable for large gaps.
  out.spam_posterior = 1.0 / (1.0 + std::exp(ham - spam));
  if (spam > ham) {
    out.label = Label::kSpam;
    out.posterior = out.spam_posterior;
  } else {
    out.label = Label::kHam;
    out.posterior = 1.0 - out.spam_posterior;
  }
  return out;
}

std::string NaiveBayesModel::to_json() const {
  nlohmann::ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = kModelVersion;
  doc["alpha"] = alpha_;
  doc["classes"] = {"ham", "spam"};
  doc["log_prior"] = {{"ham", log_prior_[0]}, {"spam", log_prior_[1]}};
  doc["vocabulary"] = tokens_;
  doc["log_likelihood"] = {{"ham", log_likelihood_[0]}, {"spam", log_likelihood_[1]}};
  return doc.dump(1);
}

NaiveBayesModel NaiveBayesModel::from_json(std::string_view json) {
  try {
    const auto doc = nlohmann::json::parse(json);
    if (doc.at("format").get<std::string>() != kFormat) {
      throw ModelFormatError("not a naive Bayes model document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelVersion) {
      throw ModelFormatError("unsupported model version " + std::to_string(version));
    }
    NaiveBayesModel model;
    model.alpha_ = doc.at("alpha").get<double>();
    model.log_prior_[0] = doc.at("log_prior").at("ham").get<double>();
    model.log_prior_[1] = doc.at("log_prior").at("spam").get<double>();
    model.tokens_ = doc.at("vocabulary").get<std::vector<std::string>>();
    model.log_likelihood_[0] = doc.at("log_likelihood").at("ham").get<std::vector<double>>();
    model.log_likelihood_[1] = doc.at("log_likelihood").at("spam").get<std::vector<double>>();
    if (!(model.alpha_ > 0.0) || model.log_likelihood_[0].size() != model.tokens_.size() ||
        model.log_likelihood_[1].size() != model.tokens_.size()) {
      throw ModelFormatError("inconsistent model dimensions");
    }
    for (std::uint32_t i = 0; i < model.tokens_.size(); ++i) {
      if (!model.vocabulary_.emplace(model.tokens_[i], i).second) {
        throw ModelFormatError("duplicate vocabulary token '" + model.tokens_[i] + "'");
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("malformed model document: ") + e.what());
  }
}

FilterResult filter_corpus(const Corpus& corpus, const NaiveBayesModel& model) {
  FilterResult result;
  result.applied = corpus.has_text();
  if (!result.applied) {
    result.corpus = corpus;
    return result;
  }
  const auto records = corpus.records();
  std::vector<std::uint8_t> spam(records.size(), 0);
  parallel_for(records.size(), [&](std::size_t i) {
    if (records[i].text) spam[i] = model.classify(*records[i].text).label == Label::kSpam;
  });
  std::vector<AnnotatedText> kept;
  kept.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (spam[i]) {
      ++result.removed_count;
    } else {
      kept.push_back(records[i]);
    }
  }
  result.corpus = Corpus(std::move(kept));
  return result;
}

}  // namespace entity_pulse
