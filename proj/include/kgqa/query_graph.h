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

#ifndef KGQA_QUERY_GRAPH_H_
#define KGQA_QUERY_GRAPH_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kgqa/kg_store.h"

namespace kgqa {

enum class TermKind { kUnlabeled, kVariable, kEntity, kLiteral };

// One position of a query graph.
struct QueryNode {
  TermKind kind = TermKind::kUnlabeled;
  // Variable name without '?', entity IRI, or literal lexical form.
  std::string value;
  std::string datatype;

  static QueryNode Variable(std::string name) {
    return {TermKind::kVariable, std::move(name), {}};
  }
  static QueryNode Entity(std::string iri) {
    return {TermKind::kEntity, std::move(iri), {}};
  }
  static QueryNode Literal(std::string lexical, std::string datatype = {}) {
    return {TermKind::kLiteral, std::move(lexical), std::move(datatype)};
  }

  bool is_variable() const { return kind == TermKind::kVariable; }
  bool is_constant() const {
    return kind == TermKind::kEntity || kind == TermKind::kLiteral;
  }
  bool is_labeled() const { return kind != TermKind::kUnlabeled; }

  // The knowledge-graph node a constant stands for.
  NodeId ToNodeId() const;

  std::string ToString() const;

  bool operator==(const QueryNode &) const = default;
};

struct QueryEdge {
  int from = 0;
  int to = 0;
  // Predicate IRI; empty while unlabeled.
  std::string predicate;

  bool is_labeled() const { return !predicate.empty(); }
  bool operator==(const QueryEdge &) const = default;
};

enum class SortOrder { kAscending, kDescending };
enum class CompareOp { kLess, kGreater, kLessEqual, kGreaterEqual };

struct AnswerTypeConstraint {
  std::string type_iri;
  bool operator==(const AnswerTypeConstraint &) const = default;
};

// Orders answers by the value bound at `target` and keeps the first `limit`.
struct OrdinalConstraint {
  SortOrder order = SortOrder::kDescending;
  int limit = 1;
  // Variable carrying the numeric or date value; set by Augment().
  std::string target;
  bool operator==(const OrdinalConstraint &) const = default;
};

struct AggregationConstraint {
  bool operator==(const AggregationConstraint &) const = default;
};

// Keeps answers whose value at `target` satisfies `op value`.
struct ComparativeConstraint {
  CompareOp op = CompareOp::kGreater;
  double value = 0;
  std::string target;
  bool operator==(const ComparativeConstraint &) const = default;
};

struct Constraint {
  std::variant<AnswerTypeConstraint, OrdinalConstraint, AggregationConstraint,
               ComparativeConstraint>
      spec;
  // Token offsets [begin, end) of the trigger words in the question.
  std::pair<int, int> source_span{0, 0};

  std::string ToString() const;
  bool operator==(const Constraint &) const = default;
};

// A labeled instance of a structural query pattern. Positions are indexed
// like the pattern's nodes; edges keep the pattern's directions.
struct QueryGraph {
  std::vector<QueryNode> nodes;
  std::vector<QueryEdge> edges;
  std::string return_variable;
  std::vector<Constraint> constraints;
  // Concrete embedding found while the graph was built: position -> node.
  std::map<int, NodeIndex> witness;
  // Pattern the graph instantiates, or -1.
  int pattern_id = -1;

  bool IsFullyLabeled() const;

  // Position of the variable `name`, or -1.
  int PositionOf(std::string_view variable) const;

  // Edge list, one `S|P|O` line per edge; isolated positions are listed
  // on their own.
  std::string ToString() const;
};

// Parses the edge-list form `S|P|O`. Terms starting with '?' are variables.
// Quoted terms ("lexical" or "lexical"^^<type>) are literals. Anything else
// is an IRI (angle brackets optional). Nodes with equal terms share a
// position. The return variable is `?x` when present, otherwise the first
// variable. Throws LoadError on malformed edges.
QueryGraph ParseEdgeList(const std::vector<std::string> &edges);

}  // namespace kgqa

#endif  // KGQA_QUERY_GRAPH_H_
