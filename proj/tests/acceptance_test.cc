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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "kgqa/classifier.h"
#include "kgqa/dataset.h"
#include "kgqa/embeddings.h"
#include "kgqa/entity_linker.h"
#include "kgqa/errors.h"
#include "kgqa/evaluation.h"
#include "kgqa/executor.h"
#include "kgqa/kg_store.h"
#include "kgqa/levenshtein.h"
#include "kgqa/pipeline.h"
#include "kgqa/query_builder.h"
#include "kgqa/relation_relevance.h"
#include "kgqa/sqp_catalog.h"
#include "kgqa/text.h"
#include "test_util.h"

namespace kgqa {
namespace {

using testing::DataPath;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char *format, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

// Plain recursion over the last characters.
size_t OracleLevenshtein(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::string_view a1 = a.substr(0, a.size() - 1);
  std::string_view b1 = b.substr(0, b.size() - 1);
  size_t cost = a.back() == b.back() ? 0 : 1;
  return std::min({OracleLevenshtein(a1, b) + 1, OracleLevenshtein(a, b1) + 1,
                   OracleLevenshtein(a1, b1) + cost});
}

double OracleCosine(const std::vector<double> &a,
                    const std::vector<double> &b) {
  double dot = 0, aa = 0, bb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return aa == 0 || bb == 0 ? 0 : dot / std::sqrt(aa * bb);
}

std::vector<double> OracleSentence(const WordVectorStore &v,
                                   const std::vector<std::string> &words) {
  std::vector<double> sum(v.dim(), 0.0);
  int n = 0;
  for (const std::string &w : words) {
    if (const std::vector<double> *x = v.Find(w)) {
      for (int i = 0; i < v.dim(); ++i) sum[i] += (*x)[i];
      ++n;
    }
  }
  for (double &x : sum) x = n ? x / n : 0.0;
  return sum;
}

std::string RandomWord(std::mt19937 &rng, size_t max_len,
                       std::string_view alphabet = "abc") {
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (char &c : s) c = alphabet[pick(rng)];
  return s;
}

// Undirected degree of each pattern position.
std::vector<int> Degrees(const StructuralQueryPattern &p) {
  std::vector<int> degree(p.node_count, 0);
  for (const PatternEdge &e : p.edges) {
    ++degree[e.from];
    ++degree[e.to];
  }
  return degree;
}

Outcome ExecutorEquivalence() {
  auto start = std::chrono::steady_clock::now();
  PatternCatalog catalog = PatternCatalog::Default();
  std::mt19937 rng(1001);
  int instances = 0;
  int nonempty = 0;
  int mismatches = 0;
  size_t max_nodes = 0;
  for (int round = 0; round < 520; ++round) {
    testing::RandomGraphSpec spec;
    spec.num_nodes = 12 + round % 12;
    spec.num_triples = spec.num_nodes * 2;
    KnowledgeGraph g = testing::RandomGraph(rng, spec);
    max_nodes = std::max(max_nodes, g.num_nodes());
    const StructuralQueryPattern &p =
        catalog.patterns()[round % catalog.size()];
    QueryGraph q = testing::RandomQuery(rng, p, g, 0.25);
    for (MatchSemantics s :
         {MatchSemantics::kHomomorphism, MatchSemantics::kIsomorphism}) {
      AnswerSet fast = Execute(q, g, s);
      AnswerSet slow = BruteForceExecute(q, g, s);
      if (fast != slow) ++mismatches;
      if (!fast.nodes.empty()) ++nonempty;
    }
    ++instances;
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  bool pass = instances >= 500 && max_nodes <= 30 && mismatches == 0 &&
              seconds < 60 && nonempty > 0;
  return {pass, std::to_string(instances) + " instances x 2 semantics, " +
                    std::to_string(mismatches) + " mismatches, " +
                    std::to_string(nonempty) + " nonempty, max KG nodes " +
                    std::to_string(max_nodes) + Fmt(", %.2f s", seconds)};
}

Outcome LevenshteinOracle() {
  std::mt19937 rng(2002);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string_view alphabet = i % 2 == 0 ? "ab" : "abcdefgh";
    std::string a = RandomWord(rng, 8, alphabet);
    std::string b = RandomWord(rng, 8, alphabet);
    size_t want = OracleLevenshtein(a, b);
    if (Levenshtein(a, b) != want) ++mismatches;
    size_t bound = i % 5;
    size_t bounded = BoundedLevenshtein(a, b, bound);
    if (want <= bound ? bounded != want : bounded <= bound) ++mismatches;
  }
  return {mismatches == 0,
          "1000 pairs, " + std::to_string(mismatches) + " mismatches"};
}

// Counts directed trees on up to `max_nodes` nodes up to isomorphism by
// trying every edge set and every relabeling.
int OracleTreeCount(int max_nodes) {
  int total = 0;
  for (int n = 1; n <= max_nodes; ++n) {
    std::vector<std::pair<int, int>> arcs;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b) arcs.emplace_back(a, b);
      }
    }
    std::set<std::vector<std::pair<int, int>>> classes;
    int m = static_cast<int>(arcs.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
      if (__builtin_popcount(mask) != n - 1) continue;
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < m; ++i) {
        if (mask & (1 << i)) edges.push_back(arcs[i]);
      }
      // Connected when a union-find ends with one root.
      std::vector<int> parent(n);
      for (int i = 0; i < n; ++i) parent[i] = i;
      std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      for (auto [a, b] : edges) parent[find(a)] = find(b);
      int roots = 0;
      for (int i = 0; i < n; ++i) roots += find(i) == i ? 1 : 0;
      if (roots != 1) continue;
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::vector<std::pair<int, int>> best;
      do {
        std::vector<std::pair<int, int>> mapped;
        for (auto [a, b] : edges) mapped.emplace_back(perm[a], perm[b]);
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best) best = mapped;
      } while (std::next_permutation(perm.begin(), perm.end()));
      best.insert(best.begin(), {n, n});
      classes.insert(best);
    }
    total += static_cast<int>(classes.size());
  }
  return total;
}

Outcome CatalogProperties() {
  PatternCatalog catalog = PatternCatalog::Default();
  int oracle = OracleTreeCount(4);
  bool small = std::ranges::all_of(
      catalog.patterns(),
      [](const StructuralQueryPattern &p) { return p.node_count <= 4; });
  std::mt19937 rng(3003);
  int round_trips = 0;
  for (const StructuralQueryPattern &p : catalog.patterns()) {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      KnowledgeGraph g = testing::RandomGraph(rng);
      QueryGraph q = testing::RandomQuery(rng, p, g, 0.3);
      // Type edges are not part of the shape; keep plain relations only.
      for (QueryEdge &e : q.edges) {
        if (e.predicate == kRdfType) e.predicate = testing::PredicateIri(0);
      }
      ok = DerivePattern(catalog, q) == p.id;
    }
    round_trips += ok ? 1 : 0;
  }
  std::istringstream text(catalog.Serialize());
  bool reparsed = PatternCatalog::Parse(text, "serialized") == catalog;
  bool pass = catalog.size() == 13 && oracle == 13 && small &&
              round_trips == 13 && reparsed;
  return {pass, std::to_string(catalog.size()) + " patterns (oracle " +
                    std::to_string(oracle) +
                    "), all <= 4 nodes: " + (small ? "yes" : "no") +
                    ", round trips " + std::to_string(round_trips) +
                    "/13, serialize: " + (reparsed ? "ok" : "differs")};
}

Outcome NonIntermediatePlacement() {
  PatternCatalog catalog = PatternCatalog::Default();
  std::mt19937 rng(4004);
  int checked = 0;
  int violations = 0;
  for (int round = 0; round < 10; ++round) {
    KnowledgeGraph g = testing::RandomGraph(rng);
    for (const StructuralQueryPattern &p : catalog.patterns()) {
      std::vector<int> degree = Degrees(p);
      for (NodeIndex n = 0; n < g.num_nodes(); ++n) {
        if (!g.node(n).is_entity()) continue;
        std::vector<Placement> placements = PlacementCandidates(p, n, g);
        if (placements.empty()) ++violations;
        for (const Placement &pl : placements) {
          ++checked;
          if (p.node_count > 1 && degree[pl.position] >= 2) ++violations;
        }
      }
    }
  }
  return {violations == 0,
          std::to_string(checked) + " placements over 13 patterns, " +
              std::to_string(violations) + " intermediate positions"};
}

Outcome WitnessSoundness() {
  PatternCatalog catalog = PatternCatalog::Default();
  std::mt19937 rng(5005);
  int successes = 0;
  int attempts = 0;
  int unsound = 0;
  while (successes < 250 && attempts < 5000) {
    ++attempts;
    KnowledgeGraph g = testing::RandomGraph(rng);
    WordVectorStore vectors = testing::RandomVectors(rng);
    std::string question = testing::RandomQuestion(rng);
    const StructuralQueryPattern &p =
        catalog.patterns()[1 + rng() % (catalog.size() - 1)];
    NodeIndex entity = *g.FindEntity(testing::NodeIri(rng() % 20));
    QueryGraph q;
    try {
      q = Extend(entity, question, p, g, vectors);
    } catch (const ExtensionError &) {
      continue;
    }
    ++successes;
    AnswerSet answers = Execute(q, g);
    int ret = q.PositionOf(q.return_variable);
    bool ok = ret >= 0 && q.witness.count(ret) > 0 &&
              std::ranges::find(answers.nodes, q.witness.at(ret)) !=
                  answers.nodes.end();
    if (!ok) ++unsound;
  }
  return {successes >= 200 && unsound == 0,
          std::to_string(successes) + " extensions from " +
              std::to_string(attempts) + " attempts, " +
              std::to_string(unsound) + " without their witness answer"};
}

Outcome ScoringArithmetic() {
  std::mt19937 rng(6006);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  auto near = [&](double a, double b) {
    if (std::abs(a - b) > 1e-9) ++failures;
  };

  // Matching score.
  for (int i = 0; i < 100; ++i) {
    double a1 = unit(rng), a2 = unit(rng), a3 = unit(rng);
    double s = a1 + a2 + a3;
    MatchWeights w{a1 / s, a2 / s, a3 / s};
    double imp = unit(rng), sim = unit(rng), rel = unit(rng) * 2 - 1;
    near(ComputeMatchScore(imp, sim, rel, w).total,
         w.importance * imp + w.similarity * sim + w.relevance * rel);
  }

  // Importance: 1 / position in a shuffled candidate list.
  for (int i = 0; i < 100; ++i) {
    std::vector<NodeIndex> candidates(1 + rng() % 20);
    for (size_t j = 0; j < candidates.size(); ++j) candidates[j] = j * 7 + 3;
    std::shuffle(candidates.begin(), candidates.end(), rng);
    size_t pick = rng() % candidates.size();
    size_t rank = 0;
    while (candidates[rank] != candidates[pick]) ++rank;
    near(Importance(candidates[pick], candidates), 1.0 / (rank + 1.0));
  }

  // String similarity.
  for (int i = 0; i < 100; ++i) {
    std::string a = RandomWord(rng, 8, "abcde");
    std::string b = RandomWord(rng, 8, "abcde");
    near(StringSimilarity(a, b), 1.0 / (OracleLevenshtein(a, b) + 1.0));
  }

  // Evidence relevance: best cosine over sentences.
  static const std::vector<std::string> vocab = {
      "river", "city",  "film",  "song",    "theatre", "born",
      "music", "album", "mount", "country", "lake",    "star"};
  for (int i = 0; i < 100; ++i) {
    WordVectorStore vectors(6);
    std::normal_distribution<double> gauss(0, 1);
    for (size_t w = 0; w + 2 < vocab.size(); ++w) {
      std::vector<double> v(6);
      for (double &x : v) x = gauss(rng);
      vectors.Add(vocab[w], v);
    }
    auto sentence = [&]() {
      std::vector<std::string> words(1 + rng() % 5);
      for (std::string &w : words) w = vocab[rng() % vocab.size()];
      return words;
    };
    std::vector<std::string> question = sentence();
    EvidenceStore evidence;
    double want = -INFINITY;
    int sentences = 1 + static_cast<int>(rng() % 4);
    std::vector<double> qv = OracleSentence(vectors, question);
    for (int s = 0; s < sentences; ++s) {
      std::vector<std::string> words = sentence();
      std::string text;
      for (const std::string &w : words) text += w + " ";
      text.back() = '.';
      evidence.Add("http://a/e", text);
      want = std::max(want, OracleCosine(qv, OracleSentence(vectors, words)));
    }
    std::string qtext;
    for (const std::string &w : question) qtext += w + " ";
    near(EvidenceRelevance(qtext, "http://a/e", evidence, vectors), want);
    near(EvidenceRelevance(qtext, "http://a/none", evidence, vectors), 0);
  }

  // Relation relevance: sum over word pairs.
  for (int i = 0; i < 100; ++i) {
    WordVectorStore vectors = testing::RandomVectors(rng);
    double lambda = unit(rng);
    std::vector<std::string> q, r;
    for (size_t j = 0, n = 1 + rng() % 4; j < n; ++j) {
      q.push_back(j % 2 ? RandomWord(rng, 6, "abcdefg") : "author");
    }
    for (size_t j = 0, n = 1 + rng() % 3; j < n; ++j) {
      r.push_back(j % 2 ? "book" : RandomWord(rng, 6, "abcdefg"));
    }
    double want = 0;
    for (const std::string &qi : q) {
      for (const std::string &rj : r) {
        const std::vector<double> *a = vectors.Find(qi);
        const std::vector<double> *b = vectors.Find(rj);
        double cosine = a && b ? OracleCosine(*a, *b) : 0;
        want +=
            lambda * cosine + (1 - lambda) / (OracleLevenshtein(qi, rj) + 1.0);
      }
    }
    near(RelationRelevance(q, r, vectors, lambda), want);
  }

  // Boundary identities.
  WordVectorStore vectors = testing::RandomVectors(rng);
  bool boundaries = StringSimilarity("theatre", "theatre") == 1.0 &&
                    Importance(42, std::vector<NodeIndex>{42, 7}) == 1.0 &&
                    std::abs(vectors.Cosine("film", "film") - 1.0) < 1e-12;
  return {failures == 0 && boundaries,
          std::to_string(failures) +
              " oracle mismatches over 5 x 100 inputs, "
              "boundary identities " +
              (boundaries ? "hold" : "fail")};
}

struct Fixture {
  KnowledgeGraph graph = KnowledgeGraph::LoadNTriples(DataPath("mini_kg.nt"));
  WordVectorStore vectors = WordVectorStore::Load(DataPath("vectors.txt"));
  EvidenceStore evidence = EvidenceStore::Load(DataPath("mini_evidence.tsv"));
  PatternCatalog catalog = PatternCatalog::Default();
  Dataset dataset = LoadDataset(DataPath("e2e.json"), catalog);
  std::shared_ptr<const PatternClassifier> model =
      std::make_shared<FeatureCountClassifier>(FeatureCountClassifier::Train(
          LoadTrainingFile(DataPath("train.tsv")), catalog));

  QuestionAnswerer Answerer() const {
    ConstraintLexicon lexicon = ConstraintLexicon::Default();
    lexicon.AddClassLabels(graph);
    return QuestionAnswerer(graph, catalog, model, vectors, evidence, lexicon);
  }
  QuestionScore Run(Mode mode) const {
    return Evaluate(Answerer(), dataset.entries, mode).macro;
  }
};

const Fixture &SharedFixture() {
  static const Fixture *fixture = new Fixture();
  return *fixture;
}

Outcome EndToEnd() {
  const Fixture &f = SharedFixture();
  QuestionScore gold = f.Run(Mode::kGoldBoth);
  QuestionScore full = f.Run(Mode::kFull);
  bool pass = f.dataset.entries.size() == 12 && gold.precision == 1.0 &&
              gold.recall == 1.0 && gold.f1 == 1.0 && full.f1 >= 0.75;
  return {pass, Fmt("gold pattern and entity P/R/F1 %.4f/%.4f/%.4f",
                    gold.precision, gold.recall, gold.f1) +
                    Fmt(", full F1 %.4f on 12 questions", full.f1)};
}

Outcome AblationDirection() {
  const Fixture &f = SharedFixture();
  double full = f.Run(Mode::kFull).f1;
  double gold_entity = f.Run(Mode::kGoldEntity).f1;
  double gold_pattern = f.Run(Mode::kGoldPattern).f1;
  return {gold_entity >= full && gold_pattern >= full,
          Fmt("F1 full %.4f, gold entity %.4f, gold pattern %.4f", full,
              gold_entity, gold_pattern)};
}

// Reports a fixed, truncated phrase.
class FixedDetector : public MentionDetector {
 public:
  explicit FixedDetector(Phrase phrase) : phrase_(std::move(phrase)) {}
  std::vector<Phrase> Detect(std::string_view) const override {
    return {phrase_};
  }

 private:
  Phrase phrase_;
};

Outcome PhraseTruncation() {
  const std::string question =
      "Rashid Behbudov State Song Theatre and Baku Puppet Theatre can be "
      "found in which country?";
  KnowledgeGraph graph = KnowledgeGraph::LoadNTriples(DataPath("rashid_kg.nt"));
  EvidenceStore evidence = EvidenceStore::Load(DataPath("rashid_evidence.tsv"));
  WordVectorStore vectors = WordVectorStore::Load(DataPath("vectors.txt"));
  Phrase truncated = MakePhrase(question, 3, 5);
  LinkerOptions options;
  options.theta = 6;
  EntityLinker linker(graph, evidence, vectors, options,
                      std::make_shared<FixedDetector>(truncated));
  LinkResult r = linker.Link(question);
  const std::string want =
      "http://example.org/resource/Rashid_Behbudov_State_Song_Theatre";
  bool distractor =
      graph.FindEntity("http://example.org/resource/Song_Theatre").has_value();
  const std::string &got = graph.node(r.entity).text;
  return {truncated.text == "Song Theatre" && distractor && got == want,
          "phrase \"" + truncated.text + "\" linked to " +
              got.substr(got.find_last_of('/') + 1) +
              Fmt(" (score %.3f)", r.score.total)};
}

Outcome ClassifierContract() {
  const Fixture &f = SharedFixture();
  int violations = 0;
  std::vector<std::string> questions;
  for (const DatasetEntry &e : f.dataset.entries)
    questions.push_back(e.question);
  questions.push_back("");
  questions.push_back("Which river flows through the capital?");
  auto identity = std::make_shared<EnsembleModel>(
      std::vector<std::shared_ptr<const PatternClassifier>>{f.model});
  auto doubled = std::make_shared<EnsembleModel>(
      std::vector<std::shared_ptr<const PatternClassifier>>{f.model, f.model},
      std::vector<double>{0.25, 0.75});
  for (const std::string &q : questions) {
    std::vector<ScoredLabel> all = f.model->PredictAll(q);
    for (int k : {1, 2, 3}) {
      std::vector<ScoredLabel> top = PredictTopK(*f.model, q, k);
      std::set<int> ids;
      for (size_t i = 0; i < top.size(); ++i) {
        ids.insert(top[i].pattern_id);
        if (i > 0 && top[i - 1].score < top[i].score) ++violations;
      }
      if (top.size() != static_cast<size_t>(k) || ids.size() != top.size()) {
        ++violations;
      }
      // No label left out scores higher than the last one kept.
      for (const ScoredLabel &l : all) {
        if (!ids.contains(l.pattern_id) && l.score > top.back().score) {
          ++violations;
        }
      }
    }
    for (const auto &ensemble : {identity, doubled}) {
      std::vector<ScoredLabel> e = ensemble->PredictAll(q);
      if (e.size() != all.size()) ++violations;
      for (size_t i = 0; i < e.size() && i < all.size(); ++i) {
        if (e[i].pattern_id != all[i].pattern_id ||
            std::abs(e[i].score - all[i].score) > 1e-12) {
          ++violations;
        }
      }
    }
  }
  // Default k end to end.
  QuestionAnswerer answerer = f.Answerer();
  bool default_k = PipelineOptions{}.k == 2 && answerer.options().k == 2;
  for (const DatasetEntry &e : f.dataset.entries) {
    AnswerResult r = answerer.Answer(e.question);
    if (r.patterns.size() != 2) default_k = false;
  }
  return {
      violations == 0 && default_k,
      std::to_string(violations) + " top-k or ensemble violations over " +
          std::to_string(questions.size()) +
          " questions, default k = " + std::to_string(PipelineOptions{}.k) +
          (default_k ? " with 2 patterns tried per question" : " not honored")};
}

struct Criterion {
  const char *name;
  Outcome (*check)();
};

}  // namespace
}  // namespace kgqa

int main() {
  using kgqa::Criterion;
  const Criterion criteria[] = {
      {"executor matches brute force", kgqa::ExecutorEquivalence},
      {"edit distance matches recursive oracle", kgqa::LevenshteinOracle},
      {"pattern catalog properties", kgqa::CatalogProperties},
      {"entity placed on non-intermediate positions",
       kgqa::NonIntermediatePlacement},
      {"extension witnesses are sound", kgqa::WitnessSoundness},
      {"scoring arithmetic matches oracles", kgqa::ScoringArithmetic},
      {"end-to-end fixture scores", kgqa::EndToEnd},
      {"gold inputs do not lower F1", kgqa::AblationDirection},
      {"truncated phrase links to the full name", kgqa::PhraseTruncation},
      {"pattern classifier contract", kgqa::ClassifierContract},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion &c : criteria) {
    ++index;
    kgqa::Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", outcome.pass ? "PASS" : "FAIL", index, c.name,
                outcome.detail.c_str());
    if (!outcome.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
