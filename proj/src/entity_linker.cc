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

#include "kgqa/entity_linker.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "kgqa/errors.h"
#include "kgqa/levenshtein.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

// Overlap resolution: longer spans first, then earlier ones.
std::vector<Phrase> ResolveOverlaps(std::vector<Phrase> spans) {
  std::sort(spans.begin(), spans.end(), [](const Phrase &a, const Phrase &b) {
    if (a.word_count() != b.word_count())
      return a.word_count() > b.word_count();
    return a.start < b.start;
  });
  std::vector<Phrase> kept;
  for (Phrase &span : spans) {
    bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Phrase &k) {
      return span.start < k.end && k.start < span.end;
    });
    if (!overlaps) kept.push_back(std::move(span));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Phrase &a, const Phrase &b) { return a.start < b.start; });
  return kept;
}

}  // namespace

Phrase MakePhrase(std::string_view question, int start, int end) {
  std::vector<Token> tokens = Tokenize(question);
  if (start < 0 || end > static_cast<int>(tokens.size()) || start >= end) {
    throw ContractViolation("phrase span out of range");
  }
  size_t begin = tokens[start].begin;
  return {std::string(question.substr(begin, tokens[end - 1].end - begin)),
          start, end};
}

std::vector<Phrase> GazetteerMentionDetector::Detect(
    std::string_view question) const {
  std::vector<Token> tokens = Tokenize(question);
  int n = static_cast<int>(tokens.size());
  std::vector<Phrase> spans;
  for (auto [begin, end] : CapitalizedRuns(tokens)) {
    spans.push_back(MakePhrase(question, begin, end));
  }

  // Longest label match starting at each token.
  for (int start = 0; start < n; ++start) {
    std::string text;
    bool has_content = false;
    int best_end = -1;
    for (int end = start + 1; end <= n; ++end) {
      std::string word = ToLower(tokens[end - 1].text);
      if (!IsStopWord(word)) has_content = true;
      if (!text.empty()) text += ' ';
      text += word;
      if (!has_content) continue;
      for (NodeIndex entity : graph_.EntitiesWithLabel(text)) {
        if (!graph_.IsClass(entity)) {
          best_end = end;
          break;
        }
      }
    }
    if (best_end > 0) spans.push_back(MakePhrase(question, start, best_end));
  }
  return ResolveOverlaps(std::move(spans));
}

std::vector<Phrase> DetectMentions(std::string_view question,
                                   const KnowledgeGraph &graph) {
  return GazetteerMentionDetector(graph).Detect(question);
}

PhraseExtensionSet ExtendPhrase(const Phrase &phrase, std::string_view question,
                                int theta) {
  if (theta < phrase.word_count()) {
    throw ContractViolation("theta is shorter than the phrase");
  }
  int n = static_cast<int>(Tokenize(question).size());
  if (phrase.start < 0 || phrase.end > n || phrase.start >= phrase.end) {
    throw ContractViolation("phrase is not a span of the question");
  }
  PhraseExtensionSet px{phrase, {}};
  for (int start = std::max(0, phrase.end - theta); start <= phrase.start;
       ++start) {
    for (int end = phrase.end; end <= std::min(n, start + theta); ++end) {
      if (start == phrase.start && end == phrase.end) {
        px.members.push_back(phrase);
      } else {
        px.members.push_back(MakePhrase(question, start, end));
      }
    }
  }
  return px;
}

double Importance(NodeIndex entity, std::span<const NodeIndex> candidates) {
  auto it = std::find(candidates.begin(), candidates.end(), entity);
  if (it == candidates.end()) {
    throw ContractViolation("entity is not among the candidates");
  }
  return 1.0 / static_cast<double>(it - candidates.begin() + 1);
}

double StringSimilarity(std::string_view phrase, std::string_view label) {
  size_t distance = Levenshtein(NormalizeText(phrase), NormalizeText(label));
  return 1.0 / static_cast<double>(distance + 1);
}

double StringSimilarity(std::string_view phrase, const KnowledgeGraph &graph,
                        NodeIndex entity) {
  double best = 0;
  for (const std::string &label : graph.Labels(entity)) {
    best = std::max(best, StringSimilarity(phrase, label));
  }
  if (best == 0)
    best = StringSimilarity(phrase, LabelFromIri(graph.node(entity).text));
  return best;
}

EvidenceStore EvidenceStore::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return Parse(in, path);
}

EvidenceStore EvidenceStore::Parse(std::istream &in,
                                   const std::string &source) {
  EvidenceStore store;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    size_t tab = text.find('\t');
    if (tab == std::string_view::npos) {
      throw LoadError(source, line_no, "expected <iri>\\ttext");
    }
    std::string_view iri = Trim(text.substr(0, tab));
    if (iri.size() >= 2 && iri.front() == '<' && iri.back() == '>') {
      iri = iri.substr(1, iri.size() - 2);
    }
    if (iri.empty()) throw LoadError(source, line_no, "empty IRI");
    store.Add(iri, text.substr(tab + 1));
  }
  return store;
}

void EvidenceStore::Add(std::string_view iri, std::string_view text) {
  std::vector<std::string> &sentences = sentences_[std::string(iri)];
  for (std::string &sentence : SplitSentences(text)) {
    sentences.push_back(std::move(sentence));
  }
}

std::span<const std::string> EvidenceStore::Sentences(
    std::string_view iri) const {
  auto it = sentences_.find(std::string(iri));
  if (it == sentences_.end()) return {};
  return it->second;
}

double EvidenceRelevance(std::string_view question, std::string_view iri,
                         const EvidenceStore &evidence,
                         const WordVectorStore &vectors) {
  std::span<const std::string> sentences = evidence.Sentences(iri);
  if (sentences.empty()) return 0;
  std::vector<double> q = vectors.SentenceVector(question);
  double best = -INFINITY;
  for (const std::string &sentence : sentences) {
    best =
        std::max(best, CosineSimilarity(q, vectors.SentenceVector(sentence)));
  }
  return best;
}

void MatchWeights::Validate() const {
  if (importance < 0 || similarity < 0 || relevance < 0) {
    throw ContractViolation("matching weights must be non-negative");
  }
  if (std::abs(importance + similarity + relevance - 1.0) > 1e-9) {
    throw ContractViolation("matching weights must sum to 1");
  }
}

MatchWeights MatchWeights::Normalized() const {
  double sum = importance + similarity + relevance;
  if (!(sum > 0)) throw ContractViolation("matching weights sum to zero");
  return {importance / sum, similarity / sum, relevance / sum};
}

MatchScore ComputeMatchScore(double imp, double sim, double rel,
                             const MatchWeights &weights) {
  weights.Validate();
  MatchScore score{imp, sim, rel, 0, weights};
  score.total = weights.importance * imp + weights.similarity * sim +
                weights.relevance * rel;
  return score;
}

EntityLinker::EntityLinker(const KnowledgeGraph &graph,
                           const EvidenceStore &evidence,
                           const WordVectorStore &vectors,
                           LinkerOptions options,
                           std::shared_ptr<const MentionDetector> detector)
    : graph_(graph),
      evidence_(evidence),
      vectors_(vectors),
      options_(options),
      detector_(std::move(detector)) {
  options_.weights.Validate();
  if (options_.theta < 1) throw ContractViolation("theta must be positive");
  if (detector_ == nullptr) {
    detector_ = std::make_shared<GazetteerMentionDetector>(graph_);
  }
}

std::vector<PhraseExtensionSet> EntityLinker::Mentions(
    std::string_view question) const {
  std::vector<PhraseExtensionSet> mentions;
  for (const Phrase &phrase : detector_->Detect(question)) {
    int theta = std::max(options_.theta, phrase.word_count());
    mentions.push_back(ExtendPhrase(phrase, question, theta));
  }
  return mentions;
}

std::vector<ScoredCandidate> EntityLinker::ScoreCandidates(
    std::string_view question, const PhraseExtensionSet &px) const {
  std::vector<NodeIndex> pool;
  for (const Phrase &member : px.members) {
    for (NodeIndex e : graph_.LookupCandidates(member.text)) pool.push_back(e);
  }
  std::sort(pool.begin(), pool.end(),
            [&](NodeIndex a, NodeIndex b) { return graph_.RanksBefore(a, b); });
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<ScoredCandidate> scored;
  for (NodeIndex e : pool) {
    double imp = Importance(e, pool);
    double sim = StringSimilarity(px.base.text, graph_, e);
    if (options_.sim_uses_member) {
      for (const Phrase &member : px.members) {
        sim = std::max(sim, StringSimilarity(member.text, graph_, e));
      }
    }
    double rel =
        EvidenceRelevance(question, graph_.node(e).text, evidence_, vectors_);
    scored.push_back({e, ComputeMatchScore(imp, sim, rel, options_.weights)});
  }
  return scored;
}

bool EntityLinker::Better(const ScoredCandidate &a,
                          const ScoredCandidate &b) const {
  constexpr double kEpsilon = 1e-12;
  if (a.score.total > b.score.total + kEpsilon) return true;
  if (b.score.total > a.score.total + kEpsilon) return false;
  return graph_.RanksBefore(a.entity, b.entity);
}

LinkResult EntityLinker::Link(std::string_view question) const {
  LinkResult result;
  result.mentions = Mentions(question);
  if (result.mentions.empty()) {
    throw NoEntityError("no entity phrase detected");
  }
  bool found = false;
  ScoredCandidate best;
  for (const PhraseExtensionSet &px : result.mentions) {
    for (const ScoredCandidate &candidate : ScoreCandidates(question, px)) {
      if (!found || Better(candidate, best)) {
        best = candidate;
        result.phrase = px.base;
        found = true;
      }
    }
  }
  if (!found) throw NoEntityError("no candidate entity for any phrase");
  result.entity = best.entity;
  result.score = best.score;
  return result;
}

}  // namespace kgqa
