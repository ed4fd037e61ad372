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

#include "kgqa/query_builder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "kgqa/errors.h"
#include "kgqa/levenshtein.h"
#include "kgqa/relation_relevance.h"

namespace kgqa {
namespace {

// One way to label a new edge: a predicate leaving (or entering) a labeled
// position `u` towards the unlabeled position `v`.
struct Candidate {
  double relevance = 0;
  std::string predicate;
  int edge = -1;
  int u = 0;
  int v = 0;
  bool outgoing = true;
  std::optional<NodeIndex> constant;
  int group = -1;
  // Repeats a predicate and direction already used at `u`.
  bool repeat = false;
};

bool Preferred(const Candidate &a, const Candidate &b) {
  if (a.relevance != b.relevance) return a.relevance > b.relevance;
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  if (a.edge != b.edge) return a.edge < b.edge;
  return a.u < b.u;
}

class Grower {
 public:
  Grower(NodeIndex entity, std::string_view question,
         const KnowledgeGraph &graph, const WordVectorStore &vectors,
         const ExtensionOptions &options)
      : entity_(entity),
        graph_(graph),
        vectors_(vectors),
        options_(options),
        question_words_(QuestionWords(question)),
        used_groups_(options.mentions.size(), false) {
    if (!graph.node(entity).is_entity()) {
      throw ContractViolation("the linked node must be an entity");
    }
    constants_.insert(entity);
  }

  // Starts from a pattern skeleton with the entity at `position`.
  void StartPattern(const StructuralQueryPattern &pattern, int position) {
    query_.pattern_id = pattern.id;
    query_.nodes.assign(pattern.node_count, QueryNode{});
    for (const PatternEdge &e : pattern.edges) {
      query_.edges.push_back({e.from, e.to, {}});
    }
    query_.nodes[position] = QueryNode::Entity(graph_.node(entity_).text);
    order_ = {position};
  }

  void StartFree() {
    query_.nodes = {QueryNode::Entity(graph_.node(entity_).text)};
    order_ = {0};
  }

  size_t labeled() const { return order_.size(); }

  // Candidates for the unlabeled pattern edges touching the labeled part.
  std::vector<Candidate> PatternCandidates() {
    std::vector<std::vector<NodeIndex>> domains = Domains();
    std::vector<Candidate> out;
    for (int i = 0; i < static_cast<int>(query_.edges.size()); ++i) {
      const QueryEdge &edge = query_.edges[i];
      if (edge.is_labeled()) continue;
      bool from_labeled = query_.nodes[edge.from].is_labeled();
      bool to_labeled = query_.nodes[edge.to].is_labeled();
      if (from_labeled == to_labeled) continue;
      int u = from_labeled ? edge.from : edge.to;
      int v = from_labeled ? edge.to : edge.from;
      AddCandidates(domains[u], i, u, v, from_labeled, &out);
    }
    // The pattern demands an edge here; a repeated predicate is only used
    // when nothing else fits.
    if (std::ranges::any_of(out,
                            [](const Candidate &c) { return !c.repeat; })) {
      std::erase_if(out, [](const Candidate &c) { return c.repeat; });
    }
    return out;
  }

  // Candidates for a new edge in either direction at any labeled position.
  std::vector<Candidate> FreeCandidates() {
    std::vector<std::vector<NodeIndex>> domains = Domains();
    std::vector<Candidate> out;
    int v = static_cast<int>(query_.nodes.size());
    for (int u : order_) {
      AddCandidates(domains[u], -1, u, v, true, &out);
      AddCandidates(domains[u], -1, u, v, false, &out);
    }
    std::erase_if(out, [](const Candidate &c) { return c.repeat; });
    return out;
  }

  void Apply(const Candidate &c) {
    if (c.edge < 0) {
      query_.nodes.emplace_back();
      query_.edges.push_back(
          {c.outgoing ? c.u : c.v, c.outgoing ? c.v : c.u, c.predicate});
    } else {
      query_.edges[c.edge].predicate = c.predicate;
    }
    if (c.constant) {
      query_.nodes[c.v] = QueryNode::Entity(graph_.node(*c.constant).text);
      constants_.insert(*c.constant);
      used_groups_[c.group] = true;
    } else {
      query_.nodes[c.v] = QueryNode::Variable("v" + std::to_string(c.v));
    }
    order_.push_back(c.v);
  }

  // Picks the witness, the return variable and final variable names.
  QueryGraph Finish() {
    std::vector<Binding> solutions =
        Solutions(query_, graph_, options_.semantics);
    if (solutions.empty()) {
      throw ExtensionError("extended query graph has no match");
    }
    // Most prominent binding, compared position by position in labeling
    // order.
    const Binding *best = &solutions.front();
    for (const Binding &b : solutions) {
      for (int p : order_) {
        if (b[p] == (*best)[p]) continue;
        if (graph_.RanksBefore(b[p], (*best)[p])) best = &b;
        break;
      }
    }
    query_.witness.clear();
    for (int p : order_) query_.witness[p] = (*best)[p];

    // Return the variable farthest from the entity; ties go to the one
    // labeled first.
    std::vector<int> dist = Distances(order_.front());
    int ret = -1;
    for (int p : order_) {
      if (!query_.nodes[p].is_variable()) continue;
      if (ret < 0 || dist[p] > dist[ret]) ret = p;
    }
    if (ret < 0) {
      throw ExtensionError("extended query graph has no variable");
    }
    static constexpr const char *kNames[] = {"y", "z", "w", "u", "t", "s"};
    size_t next = 0;
    for (int p : order_) {
      if (!query_.nodes[p].is_variable()) continue;
      query_.nodes[p].value =
          p == ret ? "x"
                   : (next < std::size(kNames) ? kNames[next++]
                                               : "v" + std::to_string(p));
    }
    query_.return_variable = "x";
    return query_;
  }

  // Best relevance over the entity's relations in one direction.
  double BestRelevance(bool outgoing) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Edge &e :
         outgoing ? graph_.Outgoing(entity_) : graph_.Incoming(entity_)) {
      if (IsTypePredicate(e.predicate)) continue;
      best = std::max(best, Relevance(e.predicate));
    }
    return best;
  }

 private:
  bool IsTypePredicate(PredicateIndex p) const {
    return graph_.type_predicate() && *graph_.type_predicate() == p;
  }

  double Relevance(PredicateIndex p) {
    auto it = relevance_.find(p);
    if (it != relevance_.end()) return it->second;
    double r =
        RelationRelevance(question_words_, RelationWords(graph_.predicate(p)),
                          vectors_, options_.lambda);
    relevance_.emplace(p, r);
    return r;
  }

  // Values each labeled position takes over all matches of the labeled
  // part.
  std::vector<std::vector<NodeIndex>> Domains() const {
    std::vector<Binding> solutions =
        Solutions(query_, graph_, options_.semantics);
    if (solutions.empty()) {
      throw ExtensionError("partial query graph has no match");
    }
    std::vector<std::vector<NodeIndex>> domains(query_.nodes.size() + 1);
    for (int p : order_) {
      for (const Binding &b : solutions) domains[p].push_back(b[p]);
      std::sort(domains[p].begin(), domains[p].end());
      domains[p].erase(std::unique(domains[p].begin(), domains[p].end()),
                       domains[p].end());
    }
    return domains;
  }

  // True when `u` already has a labeled edge with this predicate and
  // direction.
  bool Repeats(int u, const std::string &predicate, bool outgoing) const {
    for (const QueryEdge &e : query_.edges) {
      if (e.predicate != predicate) continue;
      if (outgoing ? e.from == u : e.to == u) return true;
    }
    return false;
  }

  // The reached node that best matches an unused mention.
  std::optional<std::pair<NodeIndex, int>> ResolveConstant(
      const std::set<NodeIndex> &reached) const {
    std::optional<std::pair<NodeIndex, int>> best;
    size_t best_distance = 0;
    size_t bound =
        static_cast<size_t>(std::max(0, options_.max_label_distance));
    for (NodeIndex n : reached) {
      if (!graph_.node(n).is_entity() || constants_.count(n) > 0) continue;
      for (size_t g = 0; g < options_.mentions.size(); ++g) {
        if (used_groups_[g]) continue;
        for (const std::string &text : options_.mentions[g]) {
          for (const std::string &label : graph_.Labels(n)) {
            size_t d = BoundedLevenshtein(label, text, bound);
            if (d > bound) continue;
            if (!best || d < best_distance ||
                (d == best_distance && graph_.RanksBefore(n, best->first))) {
              best = {n, static_cast<int>(g)};
              best_distance = d;
            }
          }
        }
      }
    }
    return best;
  }

  void AddCandidates(const std::vector<NodeIndex> &domain, int edge, int u,
                     int v, bool outgoing, std::vector<Candidate> *out) {
    std::map<PredicateIndex, std::set<NodeIndex>> reached;
    for (NodeIndex n : domain) {
      for (const Edge &e : outgoing ? graph_.Outgoing(n) : graph_.Incoming(n)) {
        if (IsTypePredicate(e.predicate)) continue;
        reached[e.predicate].insert(e.node);
      }
    }
    for (const auto &[p, nodes] : reached) {
      Candidate c;
      c.predicate = graph_.predicate(p);
      c.edge = edge;
      c.u = u;
      c.v = v;
      c.outgoing = outgoing;
      if (auto constant = ResolveConstant(nodes)) {
        c.constant = constant->first;
        c.group = constant->second;
      }
      c.repeat = !c.constant && Repeats(u, c.predicate, outgoing);
      c.relevance = Relevance(p);
      out->push_back(std::move(c));
    }
  }

  std::vector<int> Distances(int source) const {
    std::vector<int> dist(query_.nodes.size(), -1);
    std::vector<int> queue{source};
    dist[source] = 0;
    for (size_t i = 0; i < queue.size(); ++i) {
      for (const QueryEdge &e : query_.edges) {
        int next = -1;
        if (e.from == queue[i]) next = e.to;
        if (e.to == queue[i]) next = e.from;
        if (next >= 0 && dist[next] < 0) {
          dist[next] = dist[queue[i]] + 1;
          queue.push_back(next);
        }
      }
    }
    return dist;
  }

  NodeIndex entity_;
  const KnowledgeGraph &graph_;
  const WordVectorStore &vectors_;
  const ExtensionOptions &options_;
  std::vector<std::string> question_words_;
  std::vector<bool> used_groups_;
  std::set<NodeIndex> constants_;
  std::map<PredicateIndex, double> relevance_;
  QueryGraph query_;
  std::vector<int> order_;
};

Candidate Best(const std::vector<Candidate> &candidates) {
  return *std::min_element(candidates.begin(), candidates.end(), Preferred);
}

}  // namespace

std::vector<Placement> PlacementCandidates(
    const StructuralQueryPattern &pattern, NodeIndex entity,
    const KnowledgeGraph &graph) {
  std::vector<Placement> out;
  bool has_out = !graph.Outgoing(entity).empty();
  bool has_in = !graph.Incoming(entity).empty();
  for (int position : NonIntermediatePositions(pattern)) {
    bool compatible = (!pattern.HasOutgoing(position) || has_out) &&
                      (!pattern.HasIncoming(position) || has_in);
    out.push_back({position, compatible});
  }
  return out;
}

QueryGraph ExtendAt(NodeIndex entity, int position, std::string_view question,
                    const StructuralQueryPattern &pattern,
                    const KnowledgeGraph &graph, const WordVectorStore &vectors,
                    const ExtensionOptions &options) {
  if (position < 0 || position >= pattern.node_count) {
    throw ContractViolation("placement outside the pattern");
  }
  if (pattern.node_count == 1) {
    QueryGraph q;
    q.pattern_id = pattern.id;
    q.nodes = {QueryNode::Variable("x")};
    q.return_variable = "x";
    q.witness[0] = entity;
    return q;
  }
  Grower grower(entity, question, graph, vectors, options);
  grower.StartPattern(pattern, position);
  while (grower.labeled() < static_cast<size_t>(pattern.node_count)) {
    std::vector<Candidate> candidates = grower.PatternCandidates();
    if (candidates.empty()) {
      throw ExtensionError("no candidate relation at the frontier");
    }
    grower.Apply(Best(candidates));
  }
  return grower.Finish();
}

QueryGraph Extend(NodeIndex entity, std::string_view question,
                  const StructuralQueryPattern &pattern,
                  const KnowledgeGraph &graph, const WordVectorStore &vectors,
                  const ExtensionOptions &options) {
  Grower probe(entity, question, graph, vectors, options);
  double best_out = probe.BestRelevance(true);
  double best_in = probe.BestRelevance(false);

  std::vector<std::pair<double, int>> order;
  for (const Placement &p : PlacementCandidates(pattern, entity, graph)) {
    if (!p.compatible) continue;
    double score = std::numeric_limits<double>::infinity();
    if (pattern.HasOutgoing(p.position)) score = std::min(score, best_out);
    if (pattern.HasIncoming(p.position)) score = std::min(score, best_in);
    order.emplace_back(score, p.position);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto &a, const auto &b) {
                     if (a.first != b.first) return a.first > b.first;
                     return a.second < b.second;
                   });
  std::string last_error = "no compatible placement";
  for (const auto &[score, position] : order) {
    try {
      return ExtendAt(entity, position, question, pattern, graph, vectors,
                      options);
    } catch (const ExtensionError &e) {
      last_error = e.what();
    }
  }
  throw ExtensionError("pattern " + std::to_string(pattern.id) + ": " +
                       last_error);
}

QueryGraph GrowWithoutPattern(NodeIndex entity, std::string_view question,
                              const KnowledgeGraph &graph,
                              const WordVectorStore &vectors, int max_nodes,
                              const ExtensionOptions &options) {
  if (max_nodes < 2) throw ContractViolation("max_nodes must be at least 2");
  Grower grower(entity, question, graph, vectors, options);
  grower.StartFree();
  double last = std::numeric_limits<double>::infinity();
  while (grower.labeled() < static_cast<size_t>(max_nodes)) {
    std::vector<Candidate> candidates = grower.FreeCandidates();
    if (candidates.empty()) break;
    Candidate best = Best(candidates);
    if (grower.labeled() > 1 &&
        best.relevance < options.search_continue_ratio * last) {
      break;
    }
    last = best.relevance;
    grower.Apply(best);
  }
  if (grower.labeled() < 2) {
    throw ExtensionError("entity has no usable relation");
  }
  return grower.Finish();
}

}  // namespace kgqa
