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

// Multinomial Naive Bayes spam/ham classifier with additive smoothing.
//
// Tokenization: lowercase, split on anything that is not a letter or digit,
// drop single-character tokens, no stemming. Tokens never seen in training
// are ignored at classification time. Equal posteriors resolve to ham.

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entity_pulse/corpus.hpp"

namespace entity_pulse {

enum class Label : std::uint8_t { kHam = 0, kSpam = 1 };

std::string_view to_string(Label label);

std::vector<std::string> tokenize(std::string_view text);

struct LabeledText {
  std::string text;
  Label label = Label::kHam;
};

/// Reads `label,text` rows (labels `spam`/`ham`; a `label,text` header line
/// is skipped). Throws std::invalid_argument naming the row on bad input.
std::vector<LabeledText> read_labeled_csv(std::istream& in);

/// Writes the `label,text` header and one row per example.
void write_labeled_csv(std::ostream& out, std::span<const LabeledText> examples);

struct Classification {
  Label label = Label::kHam;
  double posterior = 0.5;       // of the winning label
  double spam_posterior = 0.5;  // P(spam | text); P(ham | text) = 1 - this
};

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NaiveBayesModel {
 public:
  /// Throws std::invalid_argument when alpha <= 0 or a class has no
  /// examples. Token counting runs in parallel shards.
  static NaiveBayesModel train(std::span<const LabeledText> examples, double alpha = 1.0);

  Classification classify(std::string_view text) const;

  double alpha() const { return alpha_; }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  double log_prior(Label label) const { return log_prior_[static_cast<int>(label)]; }
  /// Smoothed log P(token | label); empty for out-of-vocabulary tokens.
  std::optional<double> log_likelihood(std::string_view token, Label label) const;
  std::span<const double> log_likelihoods(Label label) const {
    return log_likelihood_[static_cast<int>(label)];
  }

  std::string to_json() const;
  /// Throws ModelFormatError on malformed documents or unknown versions.
  static NaiveBayesModel from_json(std::string_view json);

 private:
  double alpha_ = 1.0;
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<std::string> tokens_;  // index -> token, sorted
  double log_prior_[2] = {0.0, 0.0};
  std::vector<double> log_likelihood_[2];
};

struct FilterResult {
  Corpus corpus;
  std::size_t removed_count = 0;
  /// False when no record carries raw text; the corpus passes through.
  bool applied = false;
};

/// Drops records classified as spam. Records without raw text are kept.
FilterResult filter_corpus(const Corpus& corpus, const NaiveBayesModel& model);

}  // namespace entity_pulse
