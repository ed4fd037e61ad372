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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "kgqa/dataset.h"
#include "kgqa/errors.h"
#include "kgqa/sqp_catalog.h"
#include "test_util.h"

namespace kgqa {
namespace {

using testing::DataPath;

// Returns a fixed distribution regardless of the question.
class FixedClassifier : public PatternClassifier {
 public:
  explicit FixedClassifier(std::vector<ScoredLabel> scores)
      : scores_(std::move(scores)) {}
  std::string name() const override { return "fixed"; }
  std::vector<ScoredLabel> PredictAll(
      std::string_view, std::span<const std::string>) const override {
    return scores_;
  }

 private:
  std::vector<ScoredLabel> scores_;
};

std::shared_ptr<const PatternClassifier> Fixed(std::vector<double> scores) {
  std::vector<ScoredLabel> labels;
  for (size_t i = 0; i < scores.size(); ++i) {
    labels.push_back({static_cast<int>(i), scores[i]});
  }
  return std::make_shared<FixedClassifier>(std::move(labels));
}

// Naive Bayes posterior computed directly in probability space.
std::map<int, double> OraclePosterior(
    const std::vector<TrainingExample> &examples, const PatternCatalog &catalog,
    std::string_view question) {
  std::map<int, int> docs;
  std::map<int, std::map<std::string, int>> counts;
  std::map<int, int> totals;
  std::set<std::string> vocabulary;
  for (const TrainingExample &ex : examples) {
    ++docs[ex.pattern_id];
    for (const auto &[f, c] : Featurize(ex.question, ex.tags)) {
      counts[ex.pattern_id][f] += c;
      totals[ex.pattern_id] += c;
      vocabulary.insert(f);
    }
  }
  double n = static_cast<double>(examples.size());
  double labels = static_cast<double>(catalog.size());
  std::map<int, double> likelihood;
  double sum = 0;
  for (const auto &[label, d] : docs) {
    double p = d / n;
    for (const auto &[f, c] : Featurize(question)) {
      if (vocabulary.count(f) == 0) continue;
      double numerator = counts[label][f] + 1.0;
      double denominator =
          totals[label] + static_cast<double>(vocabulary.size());
      p *= std::pow(numerator / denominator, c);
    }
    likelihood[label] = p;
    sum += p;
  }
  std::map<int, double> posterior;
  double seen_mass = (n + static_cast<double>(docs.size())) / (n + labels);
  for (int id : catalog.ids()) {
    posterior[id] =
        docs.count(id) ? seen_mass * likelihood[id] / sum : 1.0 / (n + labels);
  }
  return posterior;
}

std::vector<TrainingExample> TrainingSet() {
  return LoadTrainingFile(DataPath("train.tsv"));
}

void ExpectWellFormed(const std::vector<ScoredLabel> &ranked, size_t k,
                      size_t catalog_size) {
  EXPECT_EQ(ranked.size(), std::min(k, catalog_size));
  std::set<int> ids;
  for (size_t i = 0; i < ranked.size(); ++i) {
    EXPECT_GE(ranked[i].score, 0.0);
    EXPECT_LE(ranked[i].score, 1.0);
    ids.insert(ranked[i].pattern_id);
    if (i > 0) {
      EXPECT_GE(ranked[i - 1].score, ranked[i].score);
      if (ranked[i - 1].score == ranked[i].score) {
        EXPECT_LT(ranked[i - 1].pattern_id, ranked[i].pattern_id);
      }
    }
  }
  EXPECT_EQ(ids.size(), ranked.size());
}

TEST(FeaturizeTest, ReadsTheSurfaceFeatures) {
  FeatureVector f = Featurize("Who is X?");
  EXPECT_EQ(f["wh=who"], 1);
  EXPECT_EQ(f["len=<=5"], 1);
  EXPECT_EQ(f["entities=1"], 1);
  FeatureVector g = Featurize(
      "Which films starring Tom Hanks were directed by Robert Zemeckis?");
  EXPECT_EQ(g["wh=which"], 1);
  EXPECT_EQ(g["len=6-10"], 1);
  EXPECT_EQ(g["entities=2"], 1);
  EXPECT_EQ(g["preposition=1"], 1);
  FeatureVector h = Featurize("How many films did Robert Zemeckis direct?");
  EXPECT_EQ(h["wh=how-many"], 1);
  FeatureVector s = Featurize("What is the highest mountain in Italy?");
  EXPECT_EQ(s["superlative=1"], 1);
  EXPECT_EQ(Featurize("Give me all mountains.")["imperative=yes"], 1);
}

TEST(FeaturizeTest, CountsTagBigrams) {
  std::vector<std::string> tags = {"WP", "VBD", "NNP", "VBD"};
  FeatureVector f = Featurize("Who directed Jaws directed", tags);
  EXPECT_EQ(f["tag=WP_VBD"], 1);
  EXPECT_EQ(f["tag=VBD_NNP"], 1);
  EXPECT_EQ(f["tag=NNP_VBD"], 1);
}

TEST(FeaturizeTest, IsDeterministic) {
  for (const TrainingExample &ex : TrainingSet()) {
    EXPECT_EQ(Featurize(ex.question), Featurize(ex.question));
  }
}

TEST(TopKTest, SortsTruncatesAndBreaksTiesBySmallerId) {
  std::vector<ScoredLabel> scores = {{3, 0.2}, {1, 0.4}, {2, 0.2}, {0, 0.2}};
  EXPECT_EQ(TopK(scores, 1), (std::vector<ScoredLabel>{{1, 0.4}}));
  EXPECT_EQ(TopK(scores, 3),
            (std::vector<ScoredLabel>{{1, 0.4}, {0, 0.2}, {2, 0.2}}));
  EXPECT_EQ(TopK(scores, 10).size(), 4u);
  EXPECT_THROW(TopK(scores, 0), ContractViolation);
}

TEST(FeatureCountClassifierTest, MatchesTheProbabilitySpaceOracle) {
  PatternCatalog catalog = PatternCatalog::Default();
  std::vector<TrainingExample> examples = TrainingSet();
  FeatureCountClassifier model =
      FeatureCountClassifier::Train(examples, catalog);
  const char *questions[] = {
      "Who directed Philadelphia?",
      "Give me all mountains.",
      "Which country contains both Monte Rosa and Gran Paradiso?",
      "In which country is the birthplace of the director of Philadelphia?",
      "zzz",
      "What is the highest mountain in Italy?"};
  for (const char *q : questions) {
    std::map<int, double> oracle = OraclePosterior(examples, catalog, q);
    std::vector<ScoredLabel> all = model.PredictAll(q);
    ASSERT_EQ(all.size(), catalog.size());
    double sum = 0;
    for (size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(all[i].pattern_id, catalog.patterns()[i].id);
      EXPECT_NEAR(all[i].score, oracle[all[i].pattern_id], 1e-9) << q;
      sum += all[i].score;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(FeatureCountClassifierTest, SeparableDataIsLearnedExactly) {
  PatternCatalog catalog = PatternCatalog::Default();
  std::vector<TrainingExample> examples = {
      {1, "Who wrote Hamlet?", {}},     {1, "Who founded Apple?", {}},
      {1, "Who painted Guernica?", {}}, {3, "Where is Berlin?", {}},
      {3, "Where is the Louvre?", {}},  {3, "Where was Kafka born?", {}}};
  FeatureCountClassifier model =
      FeatureCountClassifier::Train(examples, catalog);
  for (const TrainingExample &ex : examples) {
    EXPECT_EQ(PredictTopK(model, ex.question, 1)[0].pattern_id, ex.pattern_id);
  }
}

TEST(FeatureCountClassifierTest, SingleLabelIsAlwaysFirst) {
  PatternCatalog catalog = PatternCatalog::Default();
  std::vector<TrainingExample> examples = {{4, "Which country has both?", {}},
                                           {4, "Who?", {}}};
  FeatureCountClassifier model =
      FeatureCountClassifier::Train(examples, catalog);
  for (const TrainingExample &ex : TrainingSet()) {
    EXPECT_EQ(PredictTopK(model, ex.question, 1)[0].pattern_id, 4);
  }
}

TEST(FeatureCountClassifierTest, RejectsBadTrainingSets) {
  PatternCatalog catalog = PatternCatalog::Default();
  EXPECT_THROW(FeatureCountClassifier::Train({}, catalog), ContractViolation);
  std::vector<TrainingExample> unknown = {{42, "Who?", {}}};
  EXPECT_THROW(FeatureCountClassifier::Train(unknown, catalog),
               ContractViolation);
}

TEST(FeatureCountClassifierTest, TopKContractForEveryTrainingQuestion) {
  PatternCatalog catalog = PatternCatalog::Default();
  FeatureCountClassifier model =
      FeatureCountClassifier::Train(TrainingSet(), catalog);
  for (const TrainingExample &ex : TrainingSet()) {
    for (int k : {1, 2, 3, 13, 20}) {
      ExpectWellFormed(PredictTopK(model, ex.question, k), k, catalog.size());
    }
  }
}

TEST(FeatureCountClassifierTest, JsonRoundTripPreservesPredictions) {
  PatternCatalog catalog = PatternCatalog::Default();
  FeatureCountClassifier model =
      FeatureCountClassifier::Train(TrainingSet(), catalog);
  FeatureCountClassifier copy =
      FeatureCountClassifier::FromJson(model.ToJson());
  EXPECT_EQ(copy.ToJson(), model.ToJson());
  std::string path = ::testing::TempDir() + "/classifier_model.json";
  model.Save(path);
  FeatureCountClassifier loaded = FeatureCountClassifier::Load(path);
  for (const TrainingExample &ex : TrainingSet()) {
    EXPECT_EQ(loaded.PredictAll(ex.question), model.PredictAll(ex.question));
  }
  EXPECT_THROW(FeatureCountClassifier::FromJson("{\"kind\": 3}"), LoadError);
  EXPECT_THROW(FeatureCountClassifier::FromJson("not json"), LoadError);
  EXPECT_THROW(FeatureCountClassifier::Load("/nonexistent/model.json"),
               LoadError);
}

TEST(FeatureCountClassifierTest, HeldOutTopTwoAccuracyOnTheMiniDataset) {
  PatternCatalog catalog = PatternCatalog::Default();
  Dataset data = LoadDataset(DataPath("mini_dataset.json"), catalog);
  ASSERT_EQ(data.entries.size(), 60u);
  ASSERT_EQ(data.excluded, 0u);
  std::set<int> labels;
  std::vector<TrainingExample> train;
  std::vector<TrainingExample> held_out;
  for (size_t i = 0; i < data.entries.size(); ++i) {
    const DatasetEntry &e = data.entries[i];
    labels.insert(*e.gold_pattern);
    // Every fifth entry is held out: 12 questions, 3 per label.
    (i % 5 == 4 ? held_out : train)
        .push_back({*e.gold_pattern, e.question, {}});
  }
  EXPECT_EQ(labels.size(), 4u);
  FeatureCountClassifier model = FeatureCountClassifier::Train(train, catalog);
  int hits = 0;
  for (const TrainingExample &ex : held_out) {
    for (const ScoredLabel &s : PredictTopK(model, ex.question, 2)) {
      if (s.pattern_id == ex.pattern_id) ++hits;
    }
  }
  double accuracy = static_cast<double>(hits) / held_out.size();
  // Measured: 12 of 12.
  EXPECT_GE(accuracy, 0.9);
  RecordProperty("heldout_top2", std::to_string(accuracy));
}

TEST(EnsembleTest, AveragesMemberDistributions) {
  EnsembleModel ensemble({Fixed({0.6, 0.4}), Fixed({0.2, 0.8})});
  std::vector<ScoredLabel> all = ensemble.PredictAll("q");
  ASSERT_EQ(all.size(), 2u);
  EXPECT_NEAR(all[0].score, 0.4, 1e-12);
  EXPECT_NEAR(all[1].score, 0.6, 1e-12);
  EXPECT_EQ(EnsemblePredict(ensemble, "q", 1)[0].pattern_id, 1);
}

TEST(EnsembleTest, WeightOneOnTheFirstMemberFollowsIt) {
  EnsembleModel ensemble({Fixed({0.9, 0.1}), Fixed({0.1, 0.9})}, {1.0, 0.0});
  EXPECT_EQ(EnsemblePredict(ensemble, "q", 1)[0].pattern_id, 0);
}

TEST(EnsembleTest, SingleMemberIsTheIdentity) {
  PatternCatalog catalog = PatternCatalog::Default();
  auto model = std::make_shared<FeatureCountClassifier>(
      FeatureCountClassifier::Train(TrainingSet(), catalog));
  EnsembleModel ensemble({model});
  for (const TrainingExample &ex : TrainingSet()) {
    for (int k : {1, 2, 3}) {
      EXPECT_EQ(EnsemblePredict(ensemble, ex.question, k),
                PredictTopK(*model, ex.question, k));
    }
  }
}

TEST(EnsembleTest, RaisingALabelNeverLowersItsRank) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto rank_of = [](const std::vector<ScoredLabel> &ranked, int id) {
    for (size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].pattern_id == id) return static_cast<int>(i);
    }
    return -1;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> members(3, std::vector<double>(5));
    for (auto &m : members) {
      for (double &s : m) s = u(rng);
    }
    std::vector<double> w = {u(rng), u(rng), u(rng)};
    double total = w[0] + w[1] + w[2];
    for (double &x : w) x /= total;
    w[2] = 1.0 - w[0] - w[1];
    int target = static_cast<int>(rng() % 5);
    EnsembleModel before(
        {Fixed(members[0]), Fixed(members[1]), Fixed(members[2])}, w);
    for (auto &m : members) m[target] += 0.1 * u(rng);
    EnsembleModel after(
        {Fixed(members[0]), Fixed(members[1]), Fixed(members[2])}, w);
    EXPECT_LE(rank_of(EnsemblePredict(after, "q", 5), target),
              rank_of(EnsemblePredict(before, "q", 5), target));
  }
}

TEST(EnsembleTest, ValidatesMembersAndWeights) {
  EXPECT_THROW(EnsembleModel({}), ContractViolation);
  EXPECT_THROW(EnsembleModel({Fixed({1.0})}, {0.5}), ContractViolation);
  EXPECT_THROW(EnsembleModel({Fixed({1.0}), Fixed({1.0})}, {1.5, -0.5}),
               ContractViolation);
  EXPECT_THROW(EnsembleModel({Fixed({1.0})}, {1.0, 0.0}), ContractViolation);
  EnsembleModel mismatched({Fixed({0.5, 0.5}), Fixed({1.0})});
  EXPECT_THROW(mismatched.PredictAll("q"), ContractViolation);
}

TEST(EnsembleTest, PredictionsAreDeterministic) {
  PatternCatalog catalog = PatternCatalog::Default();
  auto a = std::make_shared<FeatureCountClassifier>(
      FeatureCountClassifier::Train(TrainingSet(), catalog));
  EnsembleModel ensemble({a, a});
  for (const TrainingExample &ex : TrainingSet()) {
    EXPECT_EQ(EnsemblePredict(ensemble, ex.question, 3),
              EnsemblePredict(ensemble, ex.question, 3));
  }
}

TEST(TrainingFileTest, ParsesAndRejects) {
  std::vector<TrainingExample> examples = TrainingSet();
  EXPECT_EQ(examples.size(), 84u);
  std::string path = ::testing::TempDir() + "/bad_train.tsv";
  {
    std::ofstream out(path);
    out << "x\tWho?\n";
  }
  EXPECT_THROW(LoadTrainingFile(path), LoadError);
  {
    std::ofstream out(path);
    out << "1 Who?\n";
  }
  EXPECT_THROW(LoadTrainingFile(path), LoadError);
  {
    std::ofstream out(path);
    out << "# comment\n0\tWho?\n1\tWho wrote it?\n";
  }
  EXPECT_EQ(LoadTrainingFile(path).size(), 2u);
}

TEST(TrainingFileTest, TagsFileParses) {
  std::string path = ::testing::TempDir() + "/tags.txt";
  {
    std::ofstream out(path);
    out << "0\tWho/WP directed/VBD Jaws/NNP\n";
  }
  std::unordered_map<int, TagSequence> tags = LoadTagsFile(path);
  EXPECT_EQ(tags.at(0), (TagSequence{"WP", "VBD", "NNP"}));
  {
    std::ofstream out(path);
    out << "0\tWho directed\n";
  }
  EXPECT_THROW(LoadTagsFile(path), LoadError);
}

}  // namespace
}  // namespace kgqa
