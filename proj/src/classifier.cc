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

#include "kgqa/classifier.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kgqa/errors.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

using nlohmann::json;

const std::set<std::string_view> kComparatives = {
    "more",    "less",   "fewer",   "greater", "larger",
    "smaller", "bigger", "higher",  "lower",   "older",
    "younger", "longer", "shorter", "taller",  "than",
};
const std::set<std::string_view> kSuperlatives = {
    "most",     "least",   "highest", "lowest",   "largest",
    "smallest", "biggest", "longest", "shortest", "oldest",
    "youngest", "tallest", "first",   "last",     "latest",
    "earliest", "best",    "worst",   "greatest", "fewest",
};
const std::set<std::string_view> kConjunctions = {"and",  "or",  "both",
                                                  "also", "nor", "but"};
const std::set<std::string_view> kPrepositions = {
    "of", "in",   "on",    "at", "by",      "for",    "with",   "from",
    "to", "into", "about", "as", "through", "during", "within", "near",
};
const std::set<std::string_view> kRelatives = {"whose", "that", "which",
                                               "who",   "whom", "where"};
const std::set<std::string_view> kImperatives = {"give", "name", "list", "show",
                                                 "tell"};

std::string WhClass(const std::vector<std::string> &words) {
  for (size_t i = 0; i < words.size(); ++i) {
    const std::string &w = words[i];
    if (w == "who" || w == "whom" || w == "whose") return "who";
    if (w == "what" || w == "which" || w == "where" || w == "when") return w;
    if (w == "how") {
      if (i + 1 < words.size() &&
          (words[i + 1] == "many" || words[i + 1] == "much")) {
        return "how-many";
      }
      return "none";
    }
  }
  return "none";
}

std::string Bucket(int count) { return std::to_string(std::min(count, 3)); }

int CountIn(const std::vector<std::string> &words,
            const std::set<std::string_view> &lexicon, size_t from = 0) {
  int n = 0;
  for (size_t i = from; i < words.size(); ++i) {
    if (lexicon.count(words[i]) > 0) ++n;
  }
  return n;
}

}  // namespace

FeatureVector Featurize(std::string_view question,
                        std::span<const std::string> tags) {
  FeatureVector features;
  std::vector<Token> tokens = Tokenize(question);
  std::vector<std::string> words;
  for (const Token &t : tokens) words.push_back(ToLower(t.text));

  features["wh=" + WhClass(words)] = 1;
  int length = static_cast<int>(words.size());
  features[length <= 5 ? "len=<=5" : length <= 10 ? "len=6-10" : "len=>10"] = 1;
  features["entities=" +
           Bucket(static_cast<int>(CapitalizedRuns(tokens).size()))] = 1;
  features["comparative=" + Bucket(CountIn(words, kComparatives))] = 1;
  features["superlative=" + Bucket(CountIn(words, kSuperlatives))] = 1;
  features["conjunction=" + Bucket(CountIn(words, kConjunctions))] = 1;
  features["preposition=" + Bucket(CountIn(words, kPrepositions))] = 1;
  // Relative pronouns after the first word.
  features["relative=" + Bucket(CountIn(words, kRelatives, 1))] = 1;
  bool imperative = !words.empty() && kImperatives.count(words[0]) > 0;
  features[imperative ? "imperative=yes" : "imperative=no"] = 1;

  for (size_t i = 0; i + 1 < tags.size(); ++i) {
    ++features["tag=" + tags[i] + "_" + tags[i + 1]];
  }
  return features;
}

std::vector<ScoredLabel> TopK(std::vector<ScoredLabel> scores, int k) {
  if (k < 1) throw ContractViolation("k must be at least 1");
  std::sort(scores.begin(), scores.end(),
            [](const ScoredLabel &a, const ScoredLabel &b) {
              if (a.score != b.score) return a.score > b.score;
              return a.pattern_id < b.pattern_id;
            });
  if (scores.size() > static_cast<size_t>(k)) scores.resize(k);
  return scores;
}

std::vector<ScoredLabel> PredictTopK(const PatternClassifier &model,
                                     std::string_view question, int k,
                                     std::span<const std::string> tags) {
  return TopK(model.PredictAll(question, tags), k);
}

std::vector<TrainingExample> LoadTrainingFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::vector<TrainingExample> examples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    size_t tab = text.find('\t');
    if (tab == std::string_view::npos) {
      throw LoadError(path, line_no, "expected pattern_id\\tquestion");
    }
    std::string_view id = Trim(text.substr(0, tab));
    TrainingExample example;
    auto [end, ec] =
        std::from_chars(id.data(), id.data() + id.size(), example.pattern_id);
    if (ec != std::errc() || end != id.data() + id.size()) {
      throw LoadError(path, line_no, "bad pattern id");
    }
    example.question = std::string(Trim(text.substr(tab + 1)));
    if (example.question.empty()) {
      throw LoadError(path, line_no, "empty question");
    }
    examples.push_back(std::move(example));
  }
  return examples;
}

std::unordered_map<int, TagSequence> LoadTagsFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::unordered_map<int, TagSequence> tags;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    size_t tab = text.find('\t');
    if (tab == std::string_view::npos) {
      throw LoadError(path, line_no, "expected index\\ttoken/TAG ...");
    }
    std::string_view id = Trim(text.substr(0, tab));
    int index = 0;
    auto [end, ec] = std::from_chars(id.data(), id.data() + id.size(), index);
    if (ec != std::errc() || end != id.data() + id.size() || index < 0) {
      throw LoadError(path, line_no, "bad question index");
    }
    TagSequence sequence;
    std::istringstream items{std::string(text.substr(tab + 1))};
    std::string item;
    while (items >> item) {
      size_t slash = item.rfind('/');
      if (slash == std::string::npos || slash + 1 == item.size()) {
        throw LoadError(path, line_no,
                        "expected token/TAG, got '" + item + "'");
      }
      sequence.push_back(item.substr(slash + 1));
    }
    tags[index] = std::move(sequence);
  }
  return tags;
}

FeatureCountClassifier FeatureCountClassifier::Train(
    std::span<const TrainingExample> examples, const PatternCatalog &catalog) {
  if (examples.empty()) throw ContractViolation("empty training set");
  FeatureCountClassifier model;
  model.labels_ = catalog.ids();
  size_t n = model.labels_.size();
  model.doc_counts_.assign(n, 0);
  model.feature_counts_.assign(n, {});
  model.feature_totals_.assign(n, 0);
  for (const TrainingExample &example : examples) {
    auto it = std::find(model.labels_.begin(), model.labels_.end(),
                        example.pattern_id);
    if (it == model.labels_.end()) {
      throw ContractViolation("training label " +
                              std::to_string(example.pattern_id) +
                              " is not in the catalog");
    }
    size_t label = it - model.labels_.begin();
    ++model.doc_counts_[label];
    for (const auto &[feature, count] :
         Featurize(example.question, example.tags)) {
      model.feature_counts_[label][feature] += count;
      model.feature_totals_[label] += count;
      model.vocabulary_[feature] += count;
    }
  }
  model.num_examples_ = static_cast<int>(examples.size());
  return model;
}

std::vector<ScoredLabel> FeatureCountClassifier::PredictAll(
    std::string_view question, std::span<const std::string> tags) const {
  size_t n = labels_.size();
  double total = num_examples_ + static_cast<double>(n);
  double vocabulary = static_cast<double>(vocabulary_.size());
  FeatureVector features = Featurize(question, tags);

  std::vector<double> log_scores(n, 0.0);
  std::vector<size_t> seen;
  for (size_t label = 0; label < n; ++label) {
    if (doc_counts_[label] == 0) continue;
    seen.push_back(label);
    double score =
        std::log(static_cast<double>(doc_counts_[label]) / num_examples_);
    double denominator = feature_totals_[label] + vocabulary;
    for (const auto &[feature, count] : features) {
      if (vocabulary_.count(feature) == 0) continue;
      auto it = feature_counts_[label].find(feature);
      double c = it == feature_counts_[label].end() ? 0.0 : it->second;
      score += count * std::log((c + 1.0) / denominator);
    }
    log_scores[label] = score;
  }

  std::vector<ScoredLabel> result(n);
  for (size_t label = 0; label < n; ++label) {
    result[label] = {labels_[label], 1.0 / total};
  }
  double max_score = -INFINITY;
  for (size_t label : seen) max_score = std::max(max_score, log_scores[label]);
  double normalizer = 0;
  for (size_t label : seen)
    normalizer += std::exp(log_scores[label] - max_score);
  double seen_mass = (num_examples_ + static_cast<double>(seen.size())) / total;
  for (size_t label : seen) {
    result[label].score =
        seen_mass * std::exp(log_scores[label] - max_score) / normalizer;
  }
  return result;
}

std::string FeatureCountClassifier::ToJson() const {
  json model;
  model["kind"] = "feature-count";
  model["num_examples"] = num_examples_;
  model["labels"] = json::array();
  for (size_t i = 0; i < labels_.size(); ++i) {
    json label;
    label["pattern_id"] = labels_[i];
    label["documents"] = doc_counts_[i];
    label["feature_total"] = feature_totals_[i];
    label["features"] = feature_counts_[i];
    model["labels"].push_back(std::move(label));
  }
  model["vocabulary"] = vocabulary_;
  return model.dump(2);
}

FeatureCountClassifier FeatureCountClassifier::FromJson(std::string_view text) {
  FeatureCountClassifier model;
  try {
    json data = json::parse(text);
    if (data.at("kind") != "feature-count") {
      throw LoadError("not a feature-count model");
    }
    model.num_examples_ = data.at("num_examples").get<int>();
    for (const json &label : data.at("labels")) {
      model.labels_.push_back(label.at("pattern_id").get<int>());
      model.doc_counts_.push_back(label.at("documents").get<int>());
      model.feature_totals_.push_back(label.at("feature_total").get<int>());
      model.feature_counts_.push_back(
          label.at("features").get<std::map<std::string, int>>());
    }
    model.vocabulary_ = data.at("vocabulary").get<std::map<std::string, int>>();
  } catch (const json::exception &e) {
    throw LoadError(std::string("bad model file: ") + e.what());
  }
  if (model.num_examples_ <= 0 || model.labels_.empty()) {
    throw LoadError("model has no training data");
  }
  return model;
}

FeatureCountClassifier FeatureCountClassifier::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

void FeatureCountClassifier::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << ToJson() << "\n";
}

EnsembleModel::EnsembleModel(
    std::vector<std::shared_ptr<const PatternClassifier>> members)
    : EnsembleModel(
          members,
          std::vector<double>(members.size(),
                              members.empty() ? 0.0 : 1.0 / members.size())) {}

EnsembleModel::EnsembleModel(
    std::vector<std::shared_ptr<const PatternClassifier>> members,
    std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.empty()) throw ContractViolation("ensemble needs a member");
  if (weights_.size() != members_.size()) {
    throw ContractViolation("one weight per ensemble member expected");
  }
  double sum = 0;
  for (double w : weights_) {
    if (w < 0) throw ContractViolation("negative ensemble weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ContractViolation("ensemble weights must sum to 1");
  }
}

std::vector<ScoredLabel> EnsembleModel::PredictAll(
    std::string_view question, std::span<const std::string> tags) const {
  std::vector<ScoredLabel> combined;
  for (size_t m = 0; m < members_.size(); ++m) {
    std::vector<ScoredLabel> scores = members_[m]->PredictAll(question, tags);
    if (m == 0) {
      combined = scores;
      for (ScoredLabel &s : combined) s.score = 0;
    }
    if (scores.size() != combined.size()) {
      throw ContractViolation("ensemble members disagree on the label set");
    }
    for (const ScoredLabel &s : scores) {
      auto it = std::find_if(
          combined.begin(), combined.end(),
          [&](const ScoredLabel &c) { return c.pattern_id == s.pattern_id; });
      if (it == combined.end()) {
        throw ContractViolation("ensemble members disagree on the label set");
      }
      it->score += weights_[m] * s.score;
    }
  }
  return combined;
}

std::vector<ScoredLabel> EnsemblePredict(const EnsembleModel &ensemble,
                                         std::string_view question, int k,
                                         std::span<const std::string> tags) {
  return TopK(ensemble.PredictAll(question, tags), k);
}

}  // namespace kgqa
