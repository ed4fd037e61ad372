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

#include "kgqa/query_graph.h"

#include <sstream>

#include "kgqa/errors.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

std::string_view OpName(CompareOp op) {
  switch (op) {
    case CompareOp::kLess:
      return "<";
    case CompareOp::kGreater:
      return ">";
    case CompareOp::kLessEqual:
      return "<=";
    case CompareOp::kGreaterEqual:
      return ">=";
  }
  return "?";
}

QueryNode ParseTerm(std::string_view term, const std::string &edge) {
  term = Trim(term);
  if (term.empty()) throw LoadError("empty term in edge '" + edge + "'");
  if (term.front() == '?') {
    if (term.size() == 1) throw LoadError("unnamed variable in '" + edge + "'");
    return QueryNode::Variable(std::string(term.substr(1)));
  }
  if (term.front() == '"') {
    size_t close = term.find('"', 1);
    if (close == std::string_view::npos) {
      throw LoadError("unterminated literal in '" + edge + "'");
    }
    std::string lexical(term.substr(1, close - 1));
    std::string_view rest = term.substr(close + 1);
    std::string datatype;
    if (!rest.empty()) {
      if (rest.substr(0, 2) != "^^") {
        throw LoadError("unexpected text after literal in '" + edge + "'");
      }
      rest.remove_prefix(2);
      if (rest.size() >= 2 && rest.front() == '<' && rest.back() == '>') {
        rest = rest.substr(1, rest.size() - 2);
      }
      datatype = std::string(rest);
    }
    return QueryNode::Literal(std::move(lexical), std::move(datatype));
  }
  if (term.size() >= 2 && term.front() == '<' && term.back() == '>') {
    term = term.substr(1, term.size() - 2);
  }
  return QueryNode::Entity(std::string(term));
}

}  // namespace

NodeId QueryNode::ToNodeId() const {
  if (kind == TermKind::kLiteral) return NodeId::Literal(value, datatype);
  return NodeId::Entity(value);
}

std::string QueryNode::ToString() const {
  switch (kind) {
    case TermKind::kUnlabeled:
      return "_";
    case TermKind::kVariable:
      return "?" + value;
    case TermKind::kEntity:
      return value;
    case TermKind::kLiteral: {
      std::string out = "\"" + value + "\"";
      if (!datatype.empty()) out += "^^<" + datatype + ">";
      return out;
    }
  }
  return {};
}

std::string Constraint::ToString() const {
  std::ostringstream out;
  if (const auto *c = std::get_if<AnswerTypeConstraint>(&spec)) {
    out << "answer-type(" << c->type_iri << ")";
  } else if (const auto *c = std::get_if<OrdinalConstraint>(&spec)) {
    out << "ordinal(" << (c->order == SortOrder::kDescending ? "desc" : "asc")
        << "," << c->limit;
    if (!c->target.empty()) out << ",?" << c->target;
    out << ")";
  } else if (std::holds_alternative<AggregationConstraint>(spec)) {
    out << "aggregation(count)";
  } else if (const auto *c = std::get_if<ComparativeConstraint>(&spec)) {
    out << "comparative(" << OpName(c->op) << "," << c->value;
    if (!c->target.empty()) out << ",?" << c->target;
    out << ")";
  }
  return out.str();
}

bool QueryGraph::IsFullyLabeled() const {
  for (const QueryNode &n : nodes) {
    if (!n.is_labeled()) return false;
  }
  for (const QueryEdge &e : edges) {
    if (!e.is_labeled()) return false;
  }
  return true;
}

int QueryGraph::PositionOf(std::string_view variable) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_variable() && nodes[i].value == variable) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::string QueryGraph::ToString() const {
  std::ostringstream out;
  std::vector<bool> touched(nodes.size(), false);
  for (const QueryEdge &e : edges) {
    out << nodes[e.from].ToString() << "|"
        << (e.is_labeled() ? e.predicate : "_") << "|" << nodes[e.to].ToString()
        << "\n";
    touched[e.from] = touched[e.to] = true;
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!touched[i]) out << nodes[i].ToString() << "\n";
  }
  return out.str();
}

QueryGraph ParseEdgeList(const std::vector<std::string> &edges) {
  QueryGraph q;
  auto position = [&q](const QueryNode &node) {
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      if (q.nodes[i] == node) return static_cast<int>(i);
    }
    q.nodes.push_back(node);
    return static_cast<int>(q.nodes.size() - 1);
  };
  for (const std::string &edge : edges) {
    std::string_view line = Trim(edge);
    if (line.empty()) continue;
    size_t first = line.find('|');
    size_t last = line.rfind('|');
    if (first == std::string_view::npos || first == last) {
      // A lone term, e.g. a single variable.
      if (first != std::string_view::npos) {
        throw LoadError("expected S|P|O, got '" + edge + "'");
      }
      position(ParseTerm(line, edge));
      continue;
    }
    QueryNode subject = ParseTerm(line.substr(0, first), edge);
    std::string_view predicate = Trim(line.substr(first + 1, last - first - 1));
    if (predicate.size() >= 2 && predicate.front() == '<' &&
        predicate.back() == '>') {
      predicate = predicate.substr(1, predicate.size() - 2);
    }
    if (predicate.empty()) throw LoadError("empty predicate in '" + edge + "'");
    if (subject.kind == TermKind::kLiteral) {
      throw LoadError("literal subject in '" + edge + "'");
    }
    QueryNode object = ParseTerm(line.substr(last + 1), edge);
    int from = position(subject);
    int to = position(object);
    q.edges.push_back({from, to, std::string(predicate)});
  }
  if (q.PositionOf("x") >= 0) {
    q.return_variable = "x";
  } else {
    for (const QueryNode &n : q.nodes) {
      if (n.is_variable()) {
        q.return_variable = n.value;
        break;
      }
    }
  }
  return q;
}

}  // namespace kgqa
