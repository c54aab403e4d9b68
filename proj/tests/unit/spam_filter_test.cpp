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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "entity_pulse/synth.hpp"
#include "fixtures.hpp"

namespace entity_pulse {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, LowercasesAndSplitsOnNonAlnum) {
  EXPECT_EQ(tokenize("Buy CHEAP pills!!! now, at x.com"),
            (Tokens{"buy", "cheap", "pills", "now", "at", "com"}));
  EXPECT_EQ(tokenize(""), Tokens{});
  EXPECT_EQ(tokenize("a b c"), Tokens{});
  EXPECT_EQ(tokenize("R2D2 #tag @user"), (Tokens{"r2d2", "tag", "user"}));
}

TEST(Tokenize, Utf8Letters) {
  const auto t = tokenize("Grèce ΕΛΛΑΔΑ");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], "grèce");
}

std::vector<LabeledText> tiny() {
  return {{"buy pills", Label::kSpam}, {"hello friend", Label::kHam}};
}

TEST(NaiveBayes, HandComputedPosterior) {
  const auto model = NaiveBayesModel::train(tiny(), 1.0);
  EXPECT_EQ(model.vocabulary_size(), 4u);
  EXPECT_DOUBLE_EQ(std::exp(*model.log_likelihood("buy", Label::kSpam)), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(std::exp(*model.log_likelihood("hello", Label::kSpam)), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(std::exp(model.log_prior(Label::kSpam)), 0.5);
  const Classification c = model.classify("buy buy");
  EXPECT_EQ(c.label, Label::kSpam);
  EXPECT_NEAR(c.spam_posterior, 0.8, 1e-12);
  EXPECT_NEAR(c.posterior, 0.8, 1e-12);
}

TEST(NaiveBayes, UnknownTokensAndTies) {
  const auto model = NaiveBayesModel::train(tiny(), 1.0);
  EXPECT_FALSE(model.log_likelihood("zebra", Label::kHam));
  // Nothing known: equal priors tie, and ties go to ham.
  const Classification c = model.classify("zebra quagga");
  EXPECT_EQ(c.label, Label::kHam);
  EXPECT_DOUBLE_EQ(c.spam_posterior, 0.5);
}

TEST(NaiveBayes, LikelihoodsNormalise) {
  const auto docs = generate_labeled({3, 400, 0.3, 50, 0.2, 6, 14});
  const auto model = NaiveBayesModel::train(docs, 0.5);
  for (Label l : {Label::kHam, Label::kSpam}) {
    double sum = 0.0;
    for (double v : model.log_likelihoods(l)) sum += std::exp(v);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(NaiveBayes, TrainingNeedsBothClassesAndPositiveAlpha) {
  const std::vector<LabeledText> one{{"hello there", Label::kHam}};
  EXPECT_THROW(NaiveBayesModel::train(one), std::invalid_argument);
  EXPECT_THROW(NaiveBayesModel::train(tiny(), 0.0), std::invalid_argument);
}

TEST(NaiveBayes, JsonRoundTrip) {
  const auto docs = generate_labeled({9, 300, 0.5, 40, 0.2, 6, 14});
  const auto model = NaiveBayesModel::train(docs);
  const auto back = NaiveBayesModel::from_json(model.to_json());
  EXPECT_EQ(back.to_json(), model.to_json());
  for (const auto& d : docs) {
    EXPECT_EQ(back.classify(d.text).spam_posterior, model.classify(d.text).spam_posterior);
  }
}

TEST(NaiveBayes, MalformedModelsAreRejected) {
  EXPECT_THROW(NaiveBayesModel::from_json("not json"), ModelFormatError);
  EXPECT_THROW(NaiveBayesModel::from_json("{}"), ModelFormatError);
  EXPECT_THROW(NaiveBayesModel::from_json(R"({"format":"entity-pulse-nb","version":99})"),
               ModelFormatError);
}

TEST(NaiveBayes, SeparableCorpusAccuracy) {
  const auto train = generate_labeled({1, 1000, 0.5, 200, 0.2, 6, 14});
  const auto held_out = generate_labeled({2, 1000, 0.5, 200, 0.2, 6, 14});
  const auto model = NaiveBayesModel::train(train);
  std::size_t right = 0;
  for (const auto& d : held_out) {
    const auto c = model.classify(d.text);
    right += c.label == d.label;
    EXPECT_NEAR(c.spam_posterior + (1.0 - c.spam_posterior), 1.0, 1e-12);
    EXPECT_GE(c.posterior, 0.5);
  }
  EXPECT_GE(static_cast<double>(right) / held_out.size(), 0.95);
}

TEST(LabeledCsv, RoundTrip) {
  const std::vector<LabeledText> docs{{"plain words", Label::kHam},
                                      {"with, comma and \"quotes\"\nand newline", Label::kSpam}};
  std::ostringstream out;
  write_labeled_csv(out, docs);
  std::istringstream in(out.str());
  const auto back = read_labeled_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].text, docs[1].text);
  EXPECT_EQ(back[1].label, Label::kSpam);
  std::istringstream bad("maybe,text\n");
  EXPECT_THROW(read_labeled_csv(bad), std::invalid_argument);
}

TEST(FilterCorpus, RemovesSpamAndSkipsTextlessCorpora) {
  const auto model = NaiveBayesModel::train(tiny());
  auto a = testing::text("1", "u", "2015-07-01", {"dbp:A"});
  auto b = testing::text("2", "u", "2015-07-02", {"dbp:A"});
  auto c = testing::text("3", "u", "2015-07-03", {"dbp:A"});
  a.text = "buy pills now";
  b.text = "hello friend";
  const FilterResult r = filter_corpus(Corpus({a, b, c}), model);
  EXPECT_TRUE(r.applied);
  EXPECT_EQ(r.removed_count, 1u);
  EXPECT_EQ(r.corpus.size(), 2u);

  const FilterResult none = filter_corpus(Corpus({c}), model);
  EXPECT_FALSE(none.applied);
  EXPECT_EQ(none.corpus.size(), 1u);
}

}  // namespace
}  // namespace entity_pulse
