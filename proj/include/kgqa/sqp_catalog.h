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

#ifndef KGQA_SQP_CATALOG_H_
#define KGQA_SQP_CATALOG_H_

#include <compare>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/query_graph.h"

namespace kgqa {

struct PatternEdge {
  int from = 0;
  int to = 0;
  auto operator<=>(const PatternEdge &) const = default;
};

// Unlabeled directed tree: the sketch of a query graph.
struct StructuralQueryPattern {
  int id = 0;
  int node_count = 1;
  std::vector<PatternEdge> edges;

  // Number of edges touching `node`, ignoring direction.
  int Degree(int node) const;
  bool HasOutgoing(int node) const;
  bool HasIncoming(int node) const;

  bool operator==(const StructuralQueryPattern &) const = default;
};

// Throws ValidationError unless the pattern is a directed tree (connected,
// node_count - 1 edges, no self loops) with at most `max_nodes` nodes.
void ValidatePattern(const StructuralQueryPattern &p, int max_nodes);

// Lexicographically smallest sorted edge list over all node relabelings.
// Two patterns are isomorphic iff their canonical edges and node counts
// agree.
std::vector<PatternEdge> CanonicalEdges(int node_count,
                                        const std::vector<PatternEdge> &edges);

// Directed isomorphism; edge directions are preserved.
bool IsIsomorphic(const StructuralQueryPattern &p,
                  const StructuralQueryPattern &q);

// Positions the linked entity may occupy: the single node of a one-node
// pattern, otherwise the tree leaves.
std::vector<int> NonIntermediatePositions(const StructuralQueryPattern &p);

class PatternCatalog {
 public:
  static constexpr int kDefaultMaxNodes = 4;

  // Validates every pattern and rejects isomorphic duplicates or duplicate
  // ids. A single-node pattern, if any, must come first.
  explicit PatternCatalog(std::vector<StructuralQueryPattern> patterns,
                          int max_nodes = kDefaultMaxNodes);

  // Every directed tree with 1..max_nodes nodes up to isomorphism, ordered
  // by node count and then by canonical edge list. Ids follow that order.
  static PatternCatalog Default(int max_nodes = kDefaultMaxNodes);

  // Lines `id node_count from->to,from->to,...`. Non-numeric ids are
  // replaced by the line's ordinal position.
  static PatternCatalog Load(const std::string &path,
                             int max_nodes = kDefaultMaxNodes);
  static PatternCatalog Parse(std::istream &in, const std::string &source,
                              int max_nodes = kDefaultMaxNodes);

  // Inverse of Parse().
  std::string Serialize() const;

  size_t size() const { return patterns_.size(); }
  int max_nodes() const { return max_nodes_; }
  const std::vector<StructuralQueryPattern> &patterns() const {
    return patterns_;
  }
  std::vector<int> ids() const;

  // Throws std::out_of_range for unknown ids.
  const StructuralQueryPattern &Get(int id) const;
  const StructuralQueryPattern *Find(int id) const;

  // Id of the catalog pattern isomorphic to the given structure.
  std::optional<int> Match(int node_count,
                           const std::vector<PatternEdge> &edges) const;

  bool operator==(const PatternCatalog &other) const {
    return patterns_ == other.patterns_;
  }

 private:
  int max_nodes_;
  std::vector<StructuralQueryPattern> patterns_;
  std::vector<std::vector<PatternEdge>> canonical_;
};

// Pattern id of a query graph: drops edges labeled with `type_predicate`,
// keeps the largest remaining component that holds a variable (preferring
// the one with the return variable), strips labels and matches the
// structure against the catalog. Throws NoPatternError when nothing
// matches.
int DerivePattern(const PatternCatalog &catalog, const QueryGraph &g,
                  std::string_view type_predicate = kRdfType);

// The component DerivePattern() keeps, as positions of `g` in ascending
// order, together with the edges among them.
struct PatternSkeleton {
  std::vector<int> positions;
  std::vector<int> edges;
};
PatternSkeleton StripTypeEdges(const QueryGraph &g,
                               std::string_view type_predicate);

}  // namespace kgqa

#endif  // KGQA_SQP_CATALOG_H_
