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

#ifndef KGQA_ENTITY_LINKER_H_
#define KGQA_ENTITY_LINKER_H_

#include <istream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgqa/embeddings.h"
#include "kgqa/kg_store.h"

namespace kgqa {

// A span of question tokens [start, end) that may name an entity. `text` is
// the exact question substring covered by the span.
struct Phrase {
  std::string text;
  int start = 0;
  int end = 0;

  int word_count() const { return end - start; }
  bool Contains(const Phrase &other) const {
    return start <= other.start && other.end <= end;
  }
  bool operator==(const Phrase &) const = default;
};

// Builds the phrase covering tokens [start, end) of `question`.
Phrase MakePhrase(std::string_view question, int start, int end);

// Finds entity phrases in a question.
class MentionDetector {
 public:
  virtual ~MentionDetector() = default;
  virtual std::vector<Phrase> Detect(std::string_view question) const = 0;
};

// Capitalized token runs plus the longest spans whose normalized text is the
// label of a non-class entity. Overlaps keep the longer span, then the
// earlier one. Results are in question order.
class GazetteerMentionDetector : public MentionDetector {
 public:
  explicit GazetteerMentionDetector(const KnowledgeGraph &graph)
      : graph_(graph) {}
  std::vector<Phrase> Detect(std::string_view question) const override;

 private:
  const KnowledgeGraph &graph_;
};

std::vector<Phrase> DetectMentions(std::string_view question,
                                   const KnowledgeGraph &graph);

// A detected phrase together with every contiguous span of the question that
// contains it and has at most theta words. The base phrase is a member.
struct PhraseExtensionSet {
  Phrase base;
  std::vector<Phrase> members;
};

// Members are ordered by start, then end. Throws ContractViolation when
// theta is smaller than the base phrase.
PhraseExtensionSet ExtendPhrase(const Phrase &phrase, std::string_view question,
                                int theta);

// 1 / rank of `entity` in `candidates` (ranks start at 1). Throws
// ContractViolation when the entity is absent.
double Importance(NodeIndex entity, std::span<const NodeIndex> candidates);

// 1 / (lev + 1) between the normalized phrase and the normalized label.
double StringSimilarity(std::string_view phrase, std::string_view label);

// Best StringSimilarity() over the labels of an entity.
double StringSimilarity(std::string_view phrase, const KnowledgeGraph &graph,
                        NodeIndex entity);

// Evidence sentences per entity IRI.
class EvidenceStore {
 public:
  // Lines `<iri>\ttext`. Repeated IRIs append sentences.
  static EvidenceStore Load(const std::string &path);
  static EvidenceStore Parse(std::istream &in, const std::string &source);

  // Splits `text` into sentences and appends them.
  void Add(std::string_view iri, std::string_view text);
  std::span<const std::string> Sentences(std::string_view iri) const;
  size_t size() const { return sentences_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> sentences_;
};

// Highest cosine between the question's sentence vector and the vector of
// one of the entity's evidence sentences; 0 without evidence.
double EvidenceRelevance(std::string_view question, std::string_view iri,
                         const EvidenceStore &evidence,
                         const WordVectorStore &vectors);

struct MatchWeights {
  double importance = 1.0 / 3;
  double similarity = 1.0 / 3;
  double relevance = 1.0 / 3;

  // Throws ContractViolation unless all weights are non-negative and sum to
  // 1 within 1e-9.
  void Validate() const;
  // Divides each weight by their sum.
  MatchWeights Normalized() const;
};

struct MatchScore {
  double imp = 0;
  double sim = 0;
  double rel = 0;
  double total = 0;
  MatchWeights weights;
};

MatchScore ComputeMatchScore(double imp, double sim, double rel,
                             const MatchWeights &weights);

struct LinkerOptions {
  // Longest extended phrase, in words.
  int theta = 6;
  MatchWeights weights;
  // Score string similarity against the best matching extended phrase
  // instead of the detected phrase.
  bool sim_uses_member = false;
};

struct ScoredCandidate {
  NodeIndex entity = 0;
  MatchScore score;
};

struct LinkResult {
  NodeIndex entity = 0;
  Phrase phrase;
  MatchScore score;
  // Every detected phrase with its extensions, in question order.
  std::vector<PhraseExtensionSet> mentions;
};

// Links the single best entity of a question.
class EntityLinker {
 public:
  // `detector` defaults to GazetteerMentionDetector. All referenced objects
  // must outlive the linker.
  EntityLinker(const KnowledgeGraph &graph, const EvidenceStore &evidence,
               const WordVectorStore &vectors, LinkerOptions options = {},
               std::shared_ptr<const MentionDetector> detector = nullptr);
  virtual ~EntityLinker() = default;

  // Detected phrases with their extension sets.
  std::vector<PhraseExtensionSet> Mentions(std::string_view question) const;

  // Pooled candidates of all members of `px`, ordered like
  // KnowledgeGraph::LookupCandidates(), each scored against the base phrase.
  std::vector<ScoredCandidate> ScoreCandidates(
      std::string_view question, const PhraseExtensionSet &px) const;

  // Throws NoEntityError when no phrase is detected or no phrase has a
  // candidate.
  virtual LinkResult Link(std::string_view question) const;

  const LinkerOptions &options() const { return options_; }
  const MentionDetector &detector() const { return *detector_; }

 private:
  // True when `a` beats `b`: higher total, then prominence, then IRI.
  bool Better(const ScoredCandidate &a, const ScoredCandidate &b) const;

  const KnowledgeGraph &graph_;
  const EvidenceStore &evidence_;
  const WordVectorStore &vectors_;
  LinkerOptions options_;
  std::shared_ptr<const MentionDetector> detector_;
};

}  // namespace kgqa

#endif  // KGQA_ENTITY_LINKER_H_
