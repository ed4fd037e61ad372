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

#include "kgqa/pipeline.h"

#include <algorithm>

#include "kgqa/errors.h"
#include "kgqa/levenshtein.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::kFull, "full"},
    {Mode::kGoldPattern, "gold-pattern"},
    {Mode::kGoldEntity, "gold-entity"},
    {Mode::kGoldBoth, "gold-both"},
    {Mode::kNoSqp, "no-sqp"},
};

std::vector<std::string> GroupTexts(const PhraseExtensionSet &px) {
  std::vector<std::string> texts;
  for (const Phrase &member : px.members) {
    texts.push_back(NormalizeText(member.text));
  }
  return texts;
}

bool NeedsTarget(const Constraint &c) {
  return std::holds_alternative<OrdinalConstraint>(c.spec) ||
         std::holds_alternative<ComparativeConstraint>(c.spec);
}

std::vector<Constraint> WithoutTargets(const std::vector<Constraint> &cs) {
  std::vector<Constraint> out;
  for (const Constraint &c : cs) {
    if (!NeedsTarget(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

std::optional<Mode> ParseMode(std::string_view name) {
  for (const auto &[mode, text] : kModeNames) {
    if (text == name) return mode;
  }
  return std::nullopt;
}

std::string ModeName(Mode mode) {
  for (const auto &[m, text] : kModeNames) {
    if (m == mode) return std::string(text);
  }
  return "unknown";
}

QuestionAnswerer::QuestionAnswerer(
    const KnowledgeGraph &graph, const PatternCatalog &catalog,
    std::shared_ptr<const PatternClassifier> classifier,
    const WordVectorStore &vectors, const EvidenceStore &evidence,
    ConstraintLexicon lexicon, PipelineOptions options,
    std::shared_ptr<const EntityLinker> linker)
    : graph_(graph),
      catalog_(catalog),
      classifier_(std::move(classifier)),
      vectors_(vectors),
      lexicon_(std::move(lexicon)),
      options_(std::move(options)),
      linker_(std::move(linker)) {
  if (options_.k < 1) throw ContractViolation("k must be at least 1");
  if (linker_ == nullptr) {
    linker_ = std::make_shared<EntityLinker>(graph_, evidence, vectors_,
                                             options_.linker);
  }
}

std::optional<QuestionAnswerer::Anchor> QuestionAnswerer::FindAnchor(
    std::string_view question, bool gold, const GoldHints &hints,
    AnswerResult &result) const {
  Anchor anchor{0, options_.extension};
  std::vector<PhraseExtensionSet> mentions;
  int skip = -1;
  if (gold) {
    std::optional<NodeIndex> entity;
    if (hints.entity) entity = graph_.FindEntity(*hints.entity);
    if (!entity) {
      result.no_entity = true;
      result.diagnostics.push_back(hints.entity ? "gold entity not in graph: " +
                                                      *hints.entity
                                                : "no gold entity given");
      return std::nullopt;
    }
    anchor.entity = *entity;
    result.entity = *hints.entity;
    mentions = linker_->Mentions(question);
    // The mention naming the gold entity is not available as a constant.
    size_t bound = static_cast<size_t>(options_.extension.max_label_distance);
    for (size_t g = 0; g < mentions.size() && skip < 0; ++g) {
      for (const std::string &text : GroupTexts(mentions[g])) {
        for (const std::string &label : graph_.Labels(*entity)) {
          if (BoundedLevenshtein(label, text, bound) <= bound) {
            skip = static_cast<int>(g);
          }
        }
      }
    }
  } else {
    result.linker_called = true;
    LinkResult link;
    try {
      link = linker_->Link(question);
    } catch (const NoEntityError &e) {
      result.no_entity = true;
      result.diagnostics.push_back(std::string("no entity: ") + e.what());
      return std::nullopt;
    }
    anchor.entity = link.entity;
    result.entity = graph_.node(link.entity).text;
    result.entity_phrase = link.phrase.text;
    mentions = std::move(link.mentions);
    for (size_t g = 0; g < mentions.size(); ++g) {
      if (mentions[g].base == link.phrase) skip = static_cast<int>(g);
    }
  }
  anchor.extension.mentions.clear();
  for (size_t g = 0; g < mentions.size(); ++g) {
    if (static_cast<int>(g) != skip) {
      anchor.extension.mentions.push_back(GroupTexts(mentions[g]));
    }
  }
  return anchor;
}

void QuestionAnswerer::Run(const QueryGraph &query,
                           AnswerResult &result) const {
  result.raw = Execute(query, graph_, options_.extension.semantics);
  result.answers = AnswerStrings(result.raw, graph_);
  result.used_pattern = query.pattern_id;
  result.query = query;
}

AnswerResult QuestionAnswerer::Answer(std::string_view question, Mode mode,
                                      const GoldHints &hints) const {
  AnswerResult result;
  std::vector<Constraint> constraints = DetectConstraints(question, lexicon_);
  bool gold_pattern = mode == Mode::kGoldPattern || mode == Mode::kGoldBoth;
  bool gold_entity = mode == Mode::kGoldEntity || mode == Mode::kGoldBoth;

  if (mode == Mode::kNoSqp) {
    std::optional<Anchor> anchor = FindAnchor(question, false, hints, result);
    if (!anchor) return result;
    QueryGraph q;
    try {
      q = GrowWithoutPattern(anchor->entity, question, graph_, vectors_,
                             catalog_.max_nodes(), anchor->extension);
    } catch (const ExtensionError &e) {
      result.extension_failed = true;
      result.diagnostics.push_back(e.what());
      return result;
    }
    try {
      Run(Augment(q, constraints, graph_), result);
    } catch (const ConstraintError &e) {
      result.diagnostics.push_back(std::string("constraints dropped: ") +
                                   e.what());
      Run(Augment(q, WithoutTargets(constraints), graph_), result);
    }
    return result;
  }

  if (gold_pattern) {
    if (!hints.pattern || catalog_.Find(*hints.pattern) == nullptr) {
      result.diagnostics.push_back("no usable gold pattern");
      return result;
    }
    result.patterns = {{*hints.pattern, 1.0}};
  } else {
    if (classifier_ == nullptr) {
      throw ContractViolation("pattern prediction needs a classifier");
    }
    result.patterns = PredictTopK(*classifier_, question, options_.k);
  }

  bool has_answer_type = std::any_of(
      constraints.begin(), constraints.end(), [](const Constraint &c) {
        return std::holds_alternative<AnswerTypeConstraint>(c.spec);
      });
  std::optional<Anchor> anchor;
  bool anchor_tried = false;
  bool extension_error = false;
  std::optional<QueryGraph> fallback;
  for (const ScoredLabel &label : result.patterns) {
    const StructuralQueryPattern &pattern = catalog_.Get(label.pattern_id);
    QueryGraph q;
    if (pattern.node_count == 1) {
      if (!has_answer_type) {
        result.diagnostics.push_back("pattern " + std::to_string(pattern.id) +
                                     ": single node needs an answer type");
        continue;
      }
      q.pattern_id = pattern.id;
      q.nodes = {QueryNode::Variable("x")};
      q.return_variable = "x";
    } else {
      if (!anchor_tried) {
        anchor = FindAnchor(question, gold_entity, hints, result);
        anchor_tried = true;
      }
      if (!anchor) continue;
      try {
        q = Extend(anchor->entity, question, pattern, graph_, vectors_,
                   anchor->extension);
      } catch (const ExtensionError &e) {
        extension_error = true;
        result.diagnostics.push_back(e.what());
        continue;
      }
    }
    try {
      Run(Augment(q, constraints, graph_), result);
      return result;
    } catch (const ConstraintError &e) {
      result.diagnostics.push_back("pattern " + std::to_string(pattern.id) +
                                   ": " + e.what());
      if (!fallback) fallback = Augment(q, WithoutTargets(constraints), graph_);
    }
  }
  if (fallback) {
    result.diagnostics.push_back("constraints dropped");
    Run(*fallback, result);
    return result;
  }
  result.extension_failed = extension_error;
  return result;
}

}  // namespace kgqa
