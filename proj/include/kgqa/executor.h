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

#ifndef KGQA_EXECUTOR_H_
#define KGQA_EXECUTOR_H_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kgqa/kg_store.h"
#include "kgqa/query_graph.h"

namespace kgqa {

// Homomorphism lets two positions bind the same node; isomorphism requires
// an injective binding of all positions.
enum class MatchSemantics { kHomomorphism, kIsomorphism };

// Marks positions left out of a binding.
inline constexpr NodeIndex kUnbound = std::numeric_limits<NodeIndex>::max();

// One node per query position; unlabeled positions hold kUnbound.
using Binding = std::vector<NodeIndex>;

struct AnswerSet {
  // Distinct answers, ascending by node index unless an ordinal constraint
  // imposed its own order.
  std::vector<NodeIndex> nodes;
  // Set when an aggregation constraint applies.
  std::optional<size_t> count;

  bool is_count() const { return count.has_value(); }
  bool operator==(const AnswerSet &) const = default;
};

// Numeric value of a literal: plain or typed numbers, and dates
// (YYYY[-MM[-DD]]) as fractional years. Entities have none.
std::optional<double> NumericValue(const NodeId &node);

// All bindings of the labeled positions that satisfy every labeled edge,
// sorted. Unlabeled positions and edges are ignored, so partially labeled
// graphs are accepted. A position without edges ranges over all nodes.
std::vector<Binding> Solutions(
    const QueryGraph &query, const KnowledgeGraph &graph,
    MatchSemantics semantics = MatchSemantics::kHomomorphism);

// Same contract, by enumerating every assignment of every labeled position.
std::vector<Binding> BruteForceSolutions(
    const QueryGraph &query, const KnowledgeGraph &graph,
    MatchSemantics semantics = MatchSemantics::kHomomorphism);

// Projects sorted solutions on the return variable and applies the
// constraints: comparatives, answer type, ordinals, then aggregation.
AnswerSet ApplyConstraints(const QueryGraph &query, const KnowledgeGraph &graph,
                           const std::vector<Binding> &solutions);

// Evaluates a fully labeled query graph. Throws ContractViolation for
// unlabeled parts or a missing return variable.
AnswerSet Execute(const QueryGraph &query, const KnowledgeGraph &graph,
                  MatchSemantics semantics = MatchSemantics::kHomomorphism);

// Exhaustive twin of Execute() for testing.
AnswerSet BruteForceExecute(
    const QueryGraph &query, const KnowledgeGraph &graph,
    MatchSemantics semantics = MatchSemantics::kHomomorphism);

// Entity IRIs and literal lexical forms in answer order, or the count.
std::vector<std::string> AnswerStrings(const AnswerSet &answers,
                                       const KnowledgeGraph &graph);

}  // namespace kgqa

#endif  // KGQA_EXECUTOR_H_
