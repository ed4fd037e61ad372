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

#ifndef KGQA_PIPELINE_H_
#define KGQA_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/classifier.h"
#include "kgqa/constraints.h"
#include "kgqa/embeddings.h"
#include "kgqa/entity_linker.h"
#include "kgqa/executor.h"
#include "kgqa/kg_store.h"
#include "kgqa/query_builder.h"
#include "kgqa/sqp_catalog.h"

namespace kgqa {

// kFull predicts patterns and links the entity. The gold modes take the
// pattern, the entity, or both from the dataset. kNoSqp grows the query
// without a pattern.
enum class Mode { kFull, kGoldPattern, kGoldEntity, kGoldBoth, kNoSqp };

std::optional<Mode> ParseMode(std::string_view name);
std::string ModeName(Mode mode);

struct PipelineOptions {
  // Number of predicted patterns to try.
  int k = 2;
  LinkerOptions linker;
  ExtensionOptions extension;
};

struct GoldHints {
  std::optional<int> pattern;
  std::optional<std::string> entity;
};

struct AnswerResult {
  std::vector<std::string> answers;
  AnswerSet raw;
  // The executed query graph, constraints included.
  std::optional<QueryGraph> query;
  // Patterns tried, in order, with their scores.
  std::vector<ScoredLabel> patterns;
  // Pattern of the executed query, or -1.
  int used_pattern = -1;
  std::optional<std::string> entity;
  std::string entity_phrase;
  bool linker_called = false;
  bool no_entity = false;
  bool extension_failed = false;
  std::vector<std::string> diagnostics;
};

// Question answering over one knowledge graph. All referenced objects must
// outlive the answerer.
class QuestionAnswerer {
 public:
  // `classifier` may be null when only gold-pattern modes are used.
  // `linker` defaults to an EntityLinker over the given stores.
  QuestionAnswerer(const KnowledgeGraph &graph, const PatternCatalog &catalog,
                   std::shared_ptr<const PatternClassifier> classifier,
                   const WordVectorStore &vectors,
                   const EvidenceStore &evidence, ConstraintLexicon lexicon,
                   PipelineOptions options = {},
                   std::shared_ptr<const EntityLinker> linker = nullptr);

  // Never throws for unanswerable questions; failures are reported in the
  // diagnostics of an empty result.
  AnswerResult Answer(std::string_view question, Mode mode = Mode::kFull,
                      const GoldHints &hints = {}) const;

  const PipelineOptions &options() const { return options_; }
  const ConstraintLexicon &lexicon() const { return lexicon_; }

 private:
  struct Anchor {
    NodeIndex entity;
    ExtensionOptions extension;
  };

  // Links (or looks up) the entity and prepares extension options that
  // list the remaining mentions. Returns nullopt on failure.
  std::optional<Anchor> FindAnchor(std::string_view question, bool gold,
                                   const GoldHints &hints,
                                   AnswerResult &result) const;

  void Run(const QueryGraph &query, AnswerResult &result) const;

  const KnowledgeGraph &graph_;
  const PatternCatalog &catalog_;
  std::shared_ptr<const PatternClassifier> classifier_;
  const WordVectorStore &vectors_;
  ConstraintLexicon lexicon_;
  PipelineOptions options_;
  std::shared_ptr<const EntityLinker> linker_;
};

}  // namespace kgqa

#endif  // KGQA_PIPELINE_H_
