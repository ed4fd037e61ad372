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

#ifndef KGQA_QUERY_BUILDER_H_
#define KGQA_QUERY_BUILDER_H_

#include <string>
#include <string_view>
#include <vector>

#include "kgqa/embeddings.h"
#include "kgqa/executor.h"
#include "kgqa/kg_store.h"
#include "kgqa/query_graph.h"
#include "kgqa/sqp_catalog.h"

namespace kgqa {

// A leaf of the pattern where the linked entity may sit. The placement is
// compatible when the entity has outgoing (incoming) KG edges wherever the
// position has outgoing (incoming) pattern edges.
struct Placement {
  int position = 0;
  bool compatible = false;
  bool operator==(const Placement &) const = default;
};

// Non-intermediate positions of `pattern` in ascending order.
std::vector<Placement> PlacementCandidates(
    const StructuralQueryPattern &pattern, NodeIndex entity,
    const KnowledgeGraph &graph);

struct ExtensionOptions {
  // Weight of the embedding cosine in relation relevance.
  double lambda = 0.5;
  MatchSemantics semantics = MatchSemantics::kHomomorphism;
  // Other entity mentions of the question, one group per detected phrase
  // holding the normalized phrase and its extensions. A KG node reached
  // during extension becomes a constant when one of its labels is within
  // `max_label_distance` edits of an unused group's text.
  std::vector<std::vector<std::string>> mentions;
  int max_label_distance = 2;
  // Unguided growth keeps adding edges while the best relevance is at least
  // this fraction of the previous edge's relevance.
  double search_continue_ratio = 1.0;
};

// Grows a query graph of shape `pattern` around `entity` placed at
// `position`. Each step labels the most relevant relation available at the
// frontier. Throws ExtensionError when no relation fits.
QueryGraph ExtendAt(NodeIndex entity, int position, std::string_view question,
                    const StructuralQueryPattern &pattern,
                    const KnowledgeGraph &graph, const WordVectorStore &vectors,
                    const ExtensionOptions &options = {});

// Tries the compatible placements, best first-step relevance first, and
// returns the first successful extension. Throws ExtensionError when all
// placements fail.
QueryGraph Extend(NodeIndex entity, std::string_view question,
                  const StructuralQueryPattern &pattern,
                  const KnowledgeGraph &graph, const WordVectorStore &vectors,
                  const ExtensionOptions &options = {});

// Pattern-free growth from `entity` in any direction, at most `max_nodes`
// positions. Throws ExtensionError when the entity has no usable relation.
QueryGraph GrowWithoutPattern(NodeIndex entity, std::string_view question,
                              const KnowledgeGraph &graph,
                              const WordVectorStore &vectors, int max_nodes,
                              const ExtensionOptions &options = {});

}  // namespace kgqa

#endif  // KGQA_QUERY_BUILDER_H_
