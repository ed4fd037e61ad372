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

#ifndef KGQA_KG_STORE_H_
#define KGQA_KG_STORE_H_

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgqa {

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

enum class NodeKind : uint8_t { kEntity, kLiteral };

// A node of the knowledge graph: an entity IRI or a (possibly typed) literal.
struct NodeId {
  NodeKind kind = NodeKind::kEntity;
  std::string text;
  std::string datatype;

  static NodeId Entity(std::string iri) {
    return {NodeKind::kEntity, std::move(iri), {}};
  }
  static NodeId Literal(std::string lexical, std::string datatype = {}) {
    return {NodeKind::kLiteral, std::move(lexical), std::move(datatype)};
  }

  bool is_entity() const { return kind == NodeKind::kEntity; }
  bool is_literal() const { return kind == NodeKind::kLiteral; }

  // N-Triples style rendering: <iri> or "lexical"^^<datatype>.
  std::string ToString() const;

  auto operator<=>(const NodeId &) const = default;
};

using NodeIndex = uint32_t;
using PredicateIndex = uint32_t;

// One adjacency entry: the predicate and the node at the other end.
struct Edge {
  PredicateIndex predicate;
  NodeIndex node;

  auto operator<=>(const Edge &) const = default;
};

struct Triple {
  NodeIndex subject;
  PredicateIndex predicate;
  NodeIndex object;

  auto operator<=>(const Triple &) const = default;
};

struct KgOptions {
  // Predicate whose objects are classes. Type triples stay in the graph and
  // additionally populate the type index.
  std::string type_predicate{kRdfType};

  // Candidate lookup accepts labels within this edit distance of the phrase.
  int max_label_distance = 2;
};

class KnowledgeGraphBuilder;

// Immutable triple store with forward and reverse adjacency, a label index
// and per-entity prominence. Safe for concurrent reads.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Reads the N-Triples subset `<s> <p> <o> .` / `<s> <p> "lit"(^^<dt>)? .`.
  // Optional labels file: `<iri>\tlabel`. Optional counts file:
  // `<iri>\tcount`. Throws LoadError on malformed lines.
  static KnowledgeGraph LoadNTriples(const std::string &path,
                                     const std::string &labels_path = {},
                                     const std::string &counts_path = {},
                                     const KgOptions &options = {});

  size_t num_nodes() const { return nodes_.size(); }
  size_t num_triples() const { return triples_.size(); }
  size_t num_predicates() const { return predicates_.size(); }

  const NodeId &node(NodeIndex n) const { return nodes_[n]; }
  const std::string &predicate(PredicateIndex p) const {
    return predicates_[p];
  }
  std::span<const Triple> triples() const { return triples_; }

  std::optional<NodeIndex> Find(const NodeId &node) const;
  std::optional<NodeIndex> FindEntity(std::string_view iri) const;
  std::optional<PredicateIndex> FindPredicate(std::string_view iri) const;

  // Sorted (predicate, object) pairs of triples with subject `n`.
  std::span<const Edge> Outgoing(NodeIndex n) const { return out_[n]; }
  // Sorted (predicate, subject) pairs of triples with object `n`.
  std::span<const Edge> Incoming(NodeIndex n) const { return in_[n]; }

  // Same as above for arbitrary nodes; unknown nodes have no edges.
  std::span<const Edge> Outgoing(const NodeId &n) const;
  std::span<const Edge> Incoming(const NodeId &n) const;

  bool HasTriple(NodeIndex s, PredicateIndex p, NodeIndex o) const;

  // Normalized labels of an entity; the first one is the primary label.
  // Literals have no labels.
  std::span<const std::string> Labels(NodeIndex n) const { return labels_[n]; }
  std::string_view PrimaryLabel(NodeIndex n) const;

  double Prominence(NodeIndex n) const { return prominence_[n]; }

  // Classes attached to `n` through the type predicate.
  std::span<const std::string> Types(NodeIndex n) const { return types_[n]; }
  bool HasType(NodeIndex n, std::string_view type_iri) const;

  // True for nodes that occur as the object of a type triple.
  bool IsClass(NodeIndex n) const { return is_class_[n]; }

  std::optional<PredicateIndex> type_predicate() const {
    return type_predicate_;
  }
  const KgOptions &options() const { return options_; }

  // Entities whose normalized label contains every token of the normalized
  // phrase, or lies within max_label_distance edits of it. Ordered by
  // descending prominence, then by IRI.
  std::vector<NodeIndex> LookupCandidates(std::string_view phrase) const;

  // Entities having exactly this normalized label.
  std::span<const NodeIndex> EntitiesWithLabel(std::string_view label) const;

  // Candidate order used throughout: higher prominence first, then IRI.
  bool RanksBefore(NodeIndex a, NodeIndex b) const;

  // Deterministic text dump of every index, for comparing loads.
  std::string DumpIndex() const;

 private:
  friend class KnowledgeGraphBuilder;

  KgOptions options_;
  std::vector<NodeId> nodes_;
  std::unordered_map<std::string, NodeIndex> node_lookup_;
  std::vector<std::string> predicates_;
  std::unordered_map<std::string, PredicateIndex> predicate_lookup_;
  std::vector<Triple> triples_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
  std::vector<std::vector<std::string>> labels_;
  std::unordered_map<std::string, std::vector<NodeIndex>> label_index_;
  std::unordered_map<std::string, std::vector<NodeIndex>> token_index_;
  std::vector<double> prominence_;
  std::vector<std::vector<std::string>> types_;
  std::vector<bool> is_class_;
  std::optional<PredicateIndex> type_predicate_;
};

// Collects triples, labels and counts, then freezes them into a graph.
class KnowledgeGraphBuilder {
 public:
  explicit KnowledgeGraphBuilder(KgOptions options = {});

  // Subjects must be entities. Duplicate triples are ignored.
  void Add(const NodeId &subject, std::string_view predicate,
           const NodeId &object);

  // Parses N-Triples lines from `in`; `source` names the input in errors.
  void AddNTriples(std::istream &in, const std::string &source);

  // Replaces the default IRI-derived label. Repeated calls for the same IRI
  // add aliases after the first label.
  void AddLabel(std::string_view iri, std::string_view label);
  void AddLabels(std::istream &in, const std::string &source);

  // External prominence counts. Once any count is given, entities without
  // one get prominence 0 instead of their degree.
  void SetCount(std::string_view iri, double count);
  void AddCounts(std::istream &in, const std::string &source);

  KnowledgeGraph Build() &&;

 private:
  NodeIndex Intern(const NodeId &node);

  KnowledgeGraph graph_;
  std::unordered_map<std::string, std::vector<std::string>> custom_labels_;
  std::unordered_map<std::string, double> counts_;
  bool has_counts_ = false;
};

}  // namespace kgqa

#endif  // KGQA_KG_STORE_H_
