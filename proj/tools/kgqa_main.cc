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

// Command-line front end: load a graph, train a pattern model, answer
// questions and evaluate datasets.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgqa/classifier.h"
#include "kgqa/constraints.h"
#include "kgqa/dataset.h"
#include "kgqa/embeddings.h"
#include "kgqa/entity_linker.h"
#include "kgqa/errors.h"
#include "kgqa/evaluation.h"
#include "kgqa/kg_store.h"
#include "kgqa/pipeline.h"
#include "kgqa/sqp_catalog.h"

namespace {

using namespace kgqa;

struct Flags {
  std::string kg;
  std::string labels;
  std::string counts;
  std::string vectors;
  std::string evidence;
  std::string catalog;
  std::vector<std::string> models;
  std::string lexicon;
  std::string train;
  std::string tags;
  std::string out;
  int k = 2;
  int theta = 6;
  double lambda = 0.5;
  std::string alpha;
  std::string mode = "full";
  std::string semantics = "hom";
  unsigned seed = 1;
  double holdout = 0;
  std::string entity;
  int pattern = -1;
  bool verbose = false;
  std::string question;
  std::string dataset;
};

MatchWeights ParseAlpha(const std::string &text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(std::stod(item));
  if (values.size() != 3) {
    throw CLI::ValidationError("--alpha",
                               "expected three comma-separated weights");
  }
  return MatchWeights{values[0], values[1], values[2]}.Normalized();
}

PatternCatalog Catalog(const Flags &f) {
  return f.catalog.empty() ? PatternCatalog::Default()
                           : PatternCatalog::Load(f.catalog);
}

KnowledgeGraph Graph(const Flags &f) {
  if (f.kg.empty()) throw CLI::RequiredError("--kg");
  return KnowledgeGraph::LoadNTriples(f.kg, f.labels, f.counts);
}

std::shared_ptr<const PatternClassifier> Models(const Flags &f) {
  std::vector<std::shared_ptr<const PatternClassifier>> members;
  for (const std::string &path : f.models) {
    members.push_back(std::make_shared<FeatureCountClassifier>(
        FeatureCountClassifier::Load(path)));
  }
  if (members.empty()) return nullptr;
  if (members.size() == 1) return members.front();
  return std::make_shared<EnsembleModel>(std::move(members));
}

// Everything the answerer borrows, kept alive together.
struct Session {
  KnowledgeGraph graph;
  PatternCatalog catalog;
  WordVectorStore vectors;
  EvidenceStore evidence;
  std::unique_ptr<QuestionAnswerer> answerer;
  Mode mode = Mode::kFull;

  explicit Session(const Flags &f)
      : graph(Graph(f)),
        catalog(Catalog(f)),
        vectors(f.vectors.empty() ? WordVectorStore()
                                  : WordVectorStore::Load(f.vectors)),
        evidence(f.evidence.empty() ? EvidenceStore()
                                    : EvidenceStore::Load(f.evidence)) {
    std::optional<Mode> parsed = ParseMode(f.mode);
    if (!parsed) throw CLI::ValidationError("--mode", "unknown mode " + f.mode);
    mode = *parsed;
    PipelineOptions options;
    options.k = f.k;
    options.linker.theta = f.theta;
    if (!f.alpha.empty()) options.linker.weights = ParseAlpha(f.alpha);
    options.extension.lambda = f.lambda;
    if (f.semantics == "iso") {
      options.extension.semantics = MatchSemantics::kIsomorphism;
    } else if (f.semantics != "hom") {
      throw CLI::ValidationError("--semantics", "expected hom or iso");
    }
    ConstraintLexicon lexicon = ConstraintLexicon::Default();
    lexicon.AddClassLabels(graph);
    if (!f.lexicon.empty()) lexicon.Load(f.lexicon);
    std::shared_ptr<const PatternClassifier> model = Models(f);
    bool needs_model = mode == Mode::kFull || mode == Mode::kGoldEntity;
    if (needs_model && model == nullptr) {
      throw CLI::RequiredError("--model (needed for mode " + f.mode + ")");
    }
    answerer = std::make_unique<QuestionAnswerer>(
        graph, catalog, model, vectors, evidence, std::move(lexicon), options);
  }
};

int LoadKg(const Flags &f) {
  KnowledgeGraph graph = Graph(f);
  size_t classes = 0;
  for (NodeIndex n = 0; n < graph.num_nodes(); ++n) classes += graph.IsClass(n);
  std::cout << "nodes\t" << graph.num_nodes() << "\n"
            << "triples\t" << graph.num_triples() << "\n"
            << "predicates\t" << graph.num_predicates() << "\n"
            << "classes\t" << classes << "\n";
  if (f.verbose) std::cout << graph.DumpIndex();
  return 0;
}

int Train(const Flags &f) {
  if (f.train.empty()) throw CLI::RequiredError("--train");
  PatternCatalog catalog = Catalog(f);
  std::vector<TrainingExample> examples = LoadTrainingFile(f.train);
  if (!f.tags.empty()) {
    auto tags = LoadTagsFile(f.tags);
    for (size_t i = 0; i < examples.size(); ++i) {
      auto it = tags.find(static_cast<int>(i));
      if (it != tags.end()) examples[i].tags = it->second;
    }
  }
  std::vector<TrainingExample> held_out;
  if (f.holdout > 0) {
    std::mt19937 rng(f.seed);
    std::shuffle(examples.begin(), examples.end(), rng);
    size_t n = static_cast<size_t>(f.holdout * examples.size());
    held_out.assign(examples.end() - n, examples.end());
    examples.resize(examples.size() - n);
  }
  FeatureCountClassifier model =
      FeatureCountClassifier::Train(examples, catalog);
  auto accuracy = [&](const std::vector<TrainingExample> &set) {
    size_t hits = 0;
    for (const TrainingExample &e : set) {
      for (const ScoredLabel &l : PredictTopK(model, e.question, f.k, e.tags)) {
        if (l.pattern_id == e.pattern_id) ++hits;
      }
    }
    return set.empty() ? 0.0 : static_cast<double>(hits) / set.size();
  };
  std::cout << "train_examples\t" << examples.size() << "\n"
            << "train_top" << f.k << "\t" << accuracy(examples) << "\n";
  if (!held_out.empty()) {
    std::cout << "heldout_examples\t" << held_out.size() << "\n"
              << "heldout_top" << f.k << "\t" << accuracy(held_out) << "\n";
  }
  if (!f.out.empty()) model.Save(f.out);
  return 0;
}

int Ask(const Flags &f) {
  Session session(f);
  GoldHints hints;
  if (!f.entity.empty()) hints.entity = NormalizeAnswer(f.entity);
  if (f.pattern >= 0) hints.pattern = f.pattern;
  AnswerResult result =
      session.answerer->Answer(f.question, session.mode, hints);
  for (const std::string &answer : result.answers) std::cout << answer << "\n";
  if (f.verbose) {
    for (const ScoredLabel &l : result.patterns) {
      std::cerr << "pattern\t" << l.pattern_id << "\t" << l.score << "\n";
    }
    if (result.entity) {
      std::cerr << "entity\t" << *result.entity << "\t" << result.entity_phrase
                << "\n";
    }
    if (result.query) std::cerr << result.query->ToString();
  }
  for (const std::string &d : result.diagnostics) {
    std::cerr << "note: " << d << "\n";
  }
  return 0;
}

int Eval(const Flags &f) {
  Session session(f);
  Dataset dataset = LoadDataset(f.dataset, session.catalog,
                                session.graph.options().type_predicate);
  for (const std::string &w : dataset.warnings)
    std::cerr << "warning: " << w << "\n";
  EvalReport report =
      Evaluate(*session.answerer, dataset.entries, session.mode);
  std::cout << report.ToTsv();
  if (!f.out.empty()) {
    std::ofstream out(f.out);
    if (!out) throw Error("cannot write " + f.out);
    out << report.ToTsv();
  }
  return 0;
}

int DerivePatterns(const Flags &f) {
  PatternCatalog catalog = Catalog(f);
  Dataset dataset = LoadDataset(f.dataset, catalog);
  for (const std::string &w : dataset.warnings)
    std::cerr << "warning: " << w << "\n";
  for (const DatasetEntry &e : dataset.entries) {
    std::cout << e.id << "\t"
              << (e.gold_pattern ? std::to_string(*e.gold_pattern) : "-")
              << "\t" << e.gold_entity.value_or("-") << "\n";
  }
  std::cout << "excluded\t" << dataset.excluded << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Question answering over a knowledge graph"};
  app.set_config("--config", "", "Read `key = value` options from a file");
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;
  app.add_option("--kg", f.kg, "N-Triples file");
  app.add_option("--labels", f.labels, "Labels file: <iri>\\tlabel");
  app.add_option("--counts", f.counts, "Prominence counts: <iri>\\tcount");
  app.add_option("--vectors", f.vectors, "Word vectors in text format");
  app.add_option("--evidence", f.evidence, "Evidence text: <iri>\\ttext");
  app.add_option("--catalog", f.catalog, "Pattern catalog file");
  app.add_option("--model", f.models,
                 "Trained pattern model (repeat to ensemble)");
  app.add_option("--lexicon", f.lexicon, "Constraint lexicon file");
  app.add_option("--k", f.k, "Number of predicted patterns to try")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--theta", f.theta, "Longest extended phrase in words")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--lambda", f.lambda, "Cosine weight in relation relevance")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--alpha", f.alpha, "Matching weights a1,a2,a3");
  app.add_option("--mode", f.mode,
                 "full | gold-pattern | gold-entity | gold-both | no-sqp")
      ->capture_default_str();
  app.add_option("--semantics", f.semantics, "hom | iso")
      ->capture_default_str();
  app.add_option("--seed", f.seed, "Seed for sampled splits")
      ->capture_default_str();
  app.add_flag("-v,--verbose", f.verbose, "Print intermediate results");

  CLI::App *load =
      app.add_subcommand("load-kg", "Load a graph and print statistics");
  CLI::App *train =
      app.add_subcommand("train", "Train the feature-count pattern model");
  train->add_option("--train", f.train, "Training file: pattern_id\\tquestion")
      ->required();
  train->add_option("--tags", f.tags, "Optional token/TAG sidecar file");
  train->add_option("--out", f.out, "Where to write the model");
  train->add_option("--holdout", f.holdout, "Fraction held out for evaluation")
      ->check(CLI::Range(0.0, 0.9));
  CLI::App *ask = app.add_subcommand("ask", "Answer one question");
  ask->add_option("question", f.question, "Question text")->required();
  ask->add_option("--entity", f.entity, "Gold entity IRI for gold modes");
  ask->add_option("--pattern", f.pattern, "Gold pattern id for gold modes");
  CLI::App *eval = app.add_subcommand("eval", "Evaluate a dataset");
  eval->add_option("dataset", f.dataset, "Dataset JSON")->required();
  eval->add_option("--out", f.out, "Also write the report here");
  CLI::App *derive =
      app.add_subcommand("derive-patterns", "Print gold patterns of a dataset");
  derive->add_option("dataset", f.dataset, "Dataset JSON")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*load) return LoadKg(f);
    if (*train) return Train(f);
    if (*ask) return Ask(f);
    if (*eval) return Eval(f);
    if (*derive) return DerivePatterns(f);
  } catch (const CLI::Error &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
