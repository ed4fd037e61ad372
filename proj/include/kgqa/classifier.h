// Copyright 2026 The kgqa Authors.
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

#ifndef KGQA_CLASSIFIER_H_
#define KGQA_CLASSIFIER_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgqa/sqp_catalog.h"

namespace kgqa {

// Delexicalized surface features of a question. Feature names never contain
// question words, only fixed category names and values.
using FeatureVector = std::map<std::string, int>;

// Syntactic tags of a question (e.g. "WP", "VBD", "NNP"), in token order.
using TagSequence = std::vector<std::string>;

// Features: wh-word class, length bucket, number of capitalized spans,
// keyword counts per category, and tag bigrams when tags are supplied.
FeatureVector Featurize(std::string_view question,
                        std::span<const std::string> tags = {});

struct ScoredLabel {
  int pattern_id = 0;
  double score = 0;
  bool operator==(const ScoredLabel &) const = default;
};

// The min(k, size) best labels by descending score. Ties go to the smaller
// pattern id.
std::vector<ScoredLabel> TopK(std::vector<ScoredLabel> scores, int k);

// Predicts a probability distribution over the catalog's patterns.
class PatternClassifier {
 public:
  virtual ~PatternClassifier() = default;

  virtual std::string name() const = 0;

  // One entry per catalog pattern in catalog order; scores sum to 1.
  virtual std::vector<ScoredLabel> PredictAll(
      std::string_view question,
      std::span<const std::string> tags = {}) const = 0;
};

std::vector<ScoredLabel> PredictTopK(const PatternClassifier &model,
                                     std::string_view question, int k,
                                     std::span<const std::string> tags = {});

struct TrainingExample {
  int pattern_id = 0;
  std::string question;
  TagSequence tags;
};

// Lines `pattern_id\tquestion`.
std::vector<TrainingExample> LoadTrainingFile(const std::string &path);

// Lines `question-index\ttoken/TAG token/TAG ...`; tokens are discarded.
// Keys are 0-based question indices.
std::unordered_map<int, TagSequence> LoadTagsFile(const std::string &path);

// Multinomial naive Bayes over feature counts with add-one smoothing.
// Catalog patterns absent from training share a residual mass equal to
// their add-one prior, 1 / (examples + catalog size) each.
class FeatureCountClassifier : public PatternClassifier {
 public:
  // Throws ContractViolation for an empty training set or unknown labels.
  static FeatureCountClassifier Train(std::span<const TrainingExample> examples,
                                      const PatternCatalog &catalog);

  static FeatureCountClassifier Load(const std::string &path);
  static FeatureCountClassifier FromJson(std::string_view json);
  void Save(const std::string &path) const;
  std::string ToJson() const;

  std::string name() const override { return "feature-count"; }
  std::vector<ScoredLabel> PredictAll(
      std::string_view question,
      std::span<const std::string> tags = {}) const override;

 private:
  std::vector<int> labels_;
  std::vector<int> doc_counts_;
  std::vector<std::map<std::string, int>> feature_counts_;
  std::vector<int> feature_totals_;
  std::map<std::string, int> vocabulary_;
  int num_examples_ = 0;
};

// Weighted average of member distributions. Members must share the same
// label set.
class EnsembleModel : public PatternClassifier {
 public:
  // Uniform weights.
  explicit EnsembleModel(
      std::vector<std::shared_ptr<const PatternClassifier>> members);
  // Weights must be non-negative and sum to 1.
  EnsembleModel(std::vector<std::shared_ptr<const PatternClassifier>> members,
                std::vector<double> weights);

  std::string name() const override { return "ensemble"; }
  std::vector<ScoredLabel> PredictAll(
      std::string_view question,
      std::span<const std::string> tags = {}) const override;

  const std::vector<double> &weights() const { return weights_; }

 private:
  std::vector<std::shared_ptr<const PatternClassifier>> members_;
  std::vector<double> weights_;
};

std::vector<ScoredLabel> EnsemblePredict(
    const EnsembleModel &ensemble, std::string_view question, int k,
    std::span<const std::string> tags = {});

}  // namespace kgqa

#endif  // KGQA_CLASSIFIER_H_
