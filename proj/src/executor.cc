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

#include "kgqa/executor.h"

#include <algorithm>
#include <charconv>
#include <map>

#include "kgqa/errors.h"

namespace kgqa {
namespace {

struct ResolvedEdge {
  int from;
  int to;
  PredicateIndex predicate;
};

// The labeled part of a query graph resolved against the KG.
struct Plan {
  std::vector<int> positions;
  std::vector<ResolvedEdge> edges;
  // Node of each constant position, or kUnbound for variables.
  std::vector<NodeIndex> constants;
  // False when a constant or predicate does not occur in the graph.
  bool satisfiable = true;
};

Plan MakePlan(const QueryGraph &query, const KnowledgeGraph &graph) {
  Plan plan;
  int n = static_cast<int>(query.nodes.size());
  plan.constants.assign(n, kUnbound);
  for (int i = 0; i < n; ++i) {
    const QueryNode &node = query.nodes[i];
    if (!node.is_labeled()) continue;
    plan.positions.push_back(i);
    if (node.is_constant()) {
      std::optional<NodeIndex> found = graph.Find(node.ToNodeId());
      if (!found) {
        plan.satisfiable = false;
      } else {
        plan.constants[i] = *found;
      }
    }
  }
  for (const QueryEdge &edge : query.edges) {
    if (!edge.is_labeled()) continue;
    if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n) {
      throw ContractViolation("query edge endpoint out of range");
    }
    if (!query.nodes[edge.from].is_labeled() ||
        !query.nodes[edge.to].is_labeled()) {
      continue;
    }
    std::optional<PredicateIndex> p = graph.FindPredicate(edge.predicate);
    if (!p) {
      plan.satisfiable = false;
      continue;
    }
    plan.edges.push_back({edge.from, edge.to, *p});
  }
  return plan;
}

// Checks every edge between bound positions and injectivity if requested.
bool Consistent(const Plan &plan, const KnowledgeGraph &graph,
                const Binding &binding, int position,
                MatchSemantics semantics) {
  NodeIndex value = binding[position];
  if (plan.constants[position] != kUnbound &&
      plan.constants[position] != value) {
    return false;
  }
  if (semantics == MatchSemantics::kIsomorphism) {
    for (int other : plan.positions) {
      if (other != position && binding[other] == value) return false;
    }
  }
  for (const ResolvedEdge &edge : plan.edges) {
    if (edge.from != position && edge.to != position) continue;
    NodeIndex s = binding[edge.from];
    NodeIndex o = binding[edge.to];
    if (s == kUnbound || o == kUnbound) continue;
    if (!graph.HasTriple(s, edge.predicate, o)) return false;
  }
  return true;
}

std::vector<NodeIndex> NeighborsVia(std::span<const Edge> edges,
                                    PredicateIndex predicate) {
  auto range = std::equal_range(
      edges.begin(), edges.end(), Edge{predicate, 0},
      [](const Edge &a, const Edge &b) { return a.predicate < b.predicate; });
  std::vector<NodeIndex> nodes;
  for (auto it = range.first; it != range.second; ++it) {
    nodes.push_back(it->node);
  }
  return nodes;
}

// Candidate values of `position` given the bound positions, before the
// consistency check. `all` is set when the position is unconstrained.
std::vector<NodeIndex> Candidates(const Plan &plan, const KnowledgeGraph &graph,
                                  const Binding &binding, int position,
                                  bool *all) {
  *all = false;
  if (plan.constants[position] != kUnbound) return {plan.constants[position]};
  std::optional<std::vector<NodeIndex>> best;
  for (const ResolvedEdge &edge : plan.edges) {
    std::vector<NodeIndex> nodes;
    if (edge.from == position && edge.to != position &&
        binding[edge.to] != kUnbound) {
      nodes = NeighborsVia(graph.Incoming(binding[edge.to]), edge.predicate);
    } else if (edge.to == position && edge.from != position &&
               binding[edge.from] != kUnbound) {
      nodes = NeighborsVia(graph.Outgoing(binding[edge.from]), edge.predicate);
    } else {
      continue;
    }
    if (!best || nodes.size() < best->size()) best = std::move(nodes);
  }
  if (best) return *best;
  *all = true;
  return {};
}

void Search(const Plan &plan, const KnowledgeGraph &graph,
            MatchSemantics semantics, Binding &binding, size_t bound,
            std::vector<Binding> &out) {
  if (bound == plan.positions.size()) {
    out.push_back(binding);
    return;
  }
  // Most constrained unbound position first.
  int chosen = -1;
  size_t chosen_size = 0;
  bool chosen_all = false;
  std::vector<NodeIndex> chosen_candidates;
  for (int position : plan.positions) {
    if (binding[position] != kUnbound) continue;
    bool all = false;
    std::vector<NodeIndex> candidates =
        Candidates(plan, graph, binding, position, &all);
    size_t size = all ? graph.num_nodes() : candidates.size();
    if (chosen < 0 || size < chosen_size) {
      chosen = position;
      chosen_size = size;
      chosen_all = all;
      chosen_candidates = std::move(candidates);
    }
  }
  auto attempt = [&](NodeIndex value) {
    binding[chosen] = value;
    if (Consistent(plan, graph, binding, chosen, semantics)) {
      Search(plan, graph, semantics, binding, bound + 1, out);
    }
    binding[chosen] = kUnbound;
  };
  if (chosen_all) {
    for (NodeIndex n = 0; n < graph.num_nodes(); ++n) attempt(n);
  } else {
    std::sort(chosen_candidates.begin(), chosen_candidates.end());
    chosen_candidates.erase(
        std::unique(chosen_candidates.begin(), chosen_candidates.end()),
        chosen_candidates.end());
    for (NodeIndex n : chosen_candidates) attempt(n);
  }
}

bool Compare(double value, CompareOp op, double threshold) {
  switch (op) {
    case CompareOp::kLess:
      return value < threshold;
    case CompareOp::kGreater:
      return value > threshold;
    case CompareOp::kLessEqual:
      return value <= threshold;
    case CompareOp::kGreaterEqual:
      return value >= threshold;
  }
  return false;
}

int TargetPosition(const QueryGraph &query, const std::string &target,
                   int return_position) {
  if (target.empty()) return return_position;
  int position = query.PositionOf(target);
  if (position < 0) {
    throw ContractViolation("constraint target ?" + target + " not in query");
  }
  return position;
}

bool ParseInt(std::string_view text, int *value) {
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && end == text.data() + text.size();
}

std::optional<double> DateValue(std::string_view text) {
  bool negative = !text.empty() && text.front() == '-';
  if (negative) text.remove_prefix(1);
  size_t t = text.find('T');
  if (t != std::string_view::npos) text = text.substr(0, t);
  if (text.size() < 7 || text[4] != '-') return std::nullopt;
  int year = 0, month = 0, day = 1;
  if (!ParseInt(text.substr(0, 4), &year)) return std::nullopt;
  std::string_view rest = text.substr(5);
  if (rest.size() == 2) {
    if (!ParseInt(rest, &month)) return std::nullopt;
  } else if (rest.size() == 5 && rest[2] == '-') {
    if (!ParseInt(rest.substr(0, 2), &month) ||
        !ParseInt(rest.substr(3, 2), &day)) {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  double value = year + (month - 1) / 12.0 + (day - 1) / 372.0;
  return negative ? -value : value;
}

}  // namespace

std::optional<double> NumericValue(const NodeId &node) {
  if (!node.is_literal()) return std::nullopt;
  std::string_view text = node.text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (std::optional<double> date = DateValue(text)) return date;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0;
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::vector<Binding> Solutions(const QueryGraph &query,
                               const KnowledgeGraph &graph,
                               MatchSemantics semantics) {
  Plan plan = MakePlan(query, graph);
  if (!plan.satisfiable) return {};
  Binding binding(query.nodes.size(), kUnbound);
  std::vector<Binding> out;
  Search(plan, graph, semantics, binding, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Binding> BruteForceSolutions(const QueryGraph &query,
                                         const KnowledgeGraph &graph,
                                         MatchSemantics semantics) {
  Plan plan = MakePlan(query, graph);
  if (!plan.satisfiable) return {};
  std::vector<Binding> out;
  Binding binding(query.nodes.size(), kUnbound);
  size_t k = plan.positions.size();
  if (k == 0) return {binding};
  size_t n = graph.num_nodes();
  if (n == 0) return {};
  // Odometer over all assignments of all labeled positions.
  std::vector<size_t> digits(k, 0);
  while (true) {
    for (size_t i = 0; i < k; ++i) {
      binding[plan.positions[i]] = static_cast<NodeIndex>(digits[i]);
    }
    bool ok = true;
    for (int position : plan.positions) {
      if (plan.constants[position] != kUnbound &&
          plan.constants[position] != binding[position]) {
        ok = false;
        break;
      }
    }
    for (size_t i = 0; ok && i < k; ++i) {
      for (size_t j = i + 1; j < k; ++j) {
        if (semantics == MatchSemantics::kIsomorphism &&
            binding[plan.positions[i]] == binding[plan.positions[j]]) {
          ok = false;
          break;
        }
      }
    }
    for (const ResolvedEdge &edge : plan.edges) {
      if (!ok) break;
      ok =
          graph.HasTriple(binding[edge.from], edge.predicate, binding[edge.to]);
    }
    if (ok) out.push_back(binding);
    size_t i = 0;
    while (i < k && ++digits[i] == n) digits[i++] = 0;
    if (i == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

AnswerSet ApplyConstraints(const QueryGraph &query, const KnowledgeGraph &graph,
                           const std::vector<Binding> &solutions) {
  int ret = query.PositionOf(query.return_variable);
  if (ret < 0) throw ContractViolation("query has no return variable");

  std::vector<const Binding *> kept;
  for (const Binding &b : solutions) kept.push_back(&b);
  for (const Constraint &c : query.constraints) {
    const auto *cmp = std::get_if<ComparativeConstraint>(&c.spec);
    if (cmp == nullptr) continue;
    int target = TargetPosition(query, cmp->target, ret);
    std::erase_if(kept, [&](const Binding *b) {
      std::optional<double> v = NumericValue(graph.node((*b)[target]));
      return !v || !Compare(*v, cmp->op, cmp->value);
    });
  }

  std::map<NodeIndex, std::vector<const Binding *>> grouped;
  for (const Binding *b : kept) grouped[(*b)[ret]].push_back(b);

  for (const Constraint &c : query.constraints) {
    const auto *type = std::get_if<AnswerTypeConstraint>(&c.spec);
    if (type == nullptr) continue;
    std::erase_if(grouped, [&](const auto &entry) {
      return !graph.HasType(entry.first, type->type_iri);
    });
  }

  AnswerSet answers;
  for (const auto &entry : grouped) answers.nodes.push_back(entry.first);

  for (const Constraint &c : query.constraints) {
    const auto *ord = std::get_if<OrdinalConstraint>(&c.spec);
    if (ord == nullptr) continue;
    int target = TargetPosition(query, ord->target, ret);
    bool descending = ord->order == SortOrder::kDescending;
    std::vector<std::pair<double, NodeIndex>> keyed;
    for (NodeIndex answer : answers.nodes) {
      std::optional<double> key;
      for (const Binding *b : grouped[answer]) {
        std::optional<double> v = NumericValue(graph.node((*b)[target]));
        if (!v) continue;
        if (!key || (descending ? *v > *key : *v < *key)) key = v;
      }
      if (key) keyed.emplace_back(*key, answer);
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto &a, const auto &b) {
      if (a.first != b.first) {
        return descending ? a.first > b.first : a.first < b.first;
      }
      return a.second < b.second;
    });
    if (ord->limit >= 0 && keyed.size() > static_cast<size_t>(ord->limit)) {
      keyed.resize(ord->limit);
    }
    answers.nodes.clear();
    for (const auto &[key, answer] : keyed) answers.nodes.push_back(answer);
  }

  for (const Constraint &c : query.constraints) {
    if (std::holds_alternative<AggregationConstraint>(c.spec)) {
      answers.count = answers.nodes.size();
    }
  }
  return answers;
}

AnswerSet Execute(const QueryGraph &query, const KnowledgeGraph &graph,
                  MatchSemantics semantics) {
  if (!query.IsFullyLabeled()) {
    throw ContractViolation("query graph is not fully labeled");
  }
  return ApplyConstraints(query, graph, Solutions(query, graph, semantics));
}

AnswerSet BruteForceExecute(const QueryGraph &query,
                            const KnowledgeGraph &graph,
                            MatchSemantics semantics) {
  if (!query.IsFullyLabeled()) {
    throw ContractViolation("query graph is not fully labeled");
  }
  return ApplyConstraints(query, graph,
                          BruteForceSolutions(query, graph, semantics));
}

std::vector<std::string> AnswerStrings(const AnswerSet &answers,
                                       const KnowledgeGraph &graph) {
  if (answers.count) return {std::to_string(*answers.count)};
  std::vector<std::string> out;
  for (NodeIndex n : answers.nodes) out.push_back(graph.node(n).text);
  return out;
}

}  // namespace kgqa
