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

#include "kgqa/constraints.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>

#include "kgqa/errors.h"
#include "kgqa/executor.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

using Kind = ConstraintLexicon::Kind;
using Entry = ConstraintLexicon::Entry;

constexpr size_t kMaxKeywordWords = 3;

Entry Ordinal(SortOrder order) {
  Entry e;
  e.kind = Kind::kOrdinal;
  e.order = order;
  return e;
}

Entry Comparative(CompareOp op) {
  Entry e;
  e.kind = Kind::kComparative;
  e.op = op;
  return e;
}

Entry Aggregation() {
  Entry e;
  e.kind = Kind::kAggregation;
  return e;
}

// A number right after byte offset `from`, allowing thousands separators.
std::optional<double> NumberAfter(std::string_view text, size_t from) {
  size_t i = from;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  std::string digits;
  if (i < text.size() && (text[i] == '-' || text[i] == '+'))
    digits += text[i++];
  bool any = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      any = true;
    } else if (c == ',' && any && i + 1 < text.size() && text[i + 1] >= '0' &&
               text[i + 1] <= '9') {
      continue;
    } else if (c == '.' && any && i + 1 < text.size() && text[i + 1] >= '0' &&
               text[i + 1] <= '9') {
      digits += c;
    } else {
      break;
    }
  }
  if (!any) return std::nullopt;
  if (digits.front() == '+') digits.erase(0, 1);
  double value = 0;
  auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || end != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return value;
}

SortOrder ParseOrder(std::string_view text, const std::string &source,
                     int line) {
  if (text == "asc") return SortOrder::kAscending;
  if (text == "desc") return SortOrder::kDescending;
  throw LoadError(source, line, "ordinal order must be asc or desc");
}

CompareOp ParseOp(std::string_view text, const std::string &source, int line) {
  if (text == "<") return CompareOp::kLess;
  if (text == ">") return CompareOp::kGreater;
  if (text == "<=") return CompareOp::kLessEqual;
  if (text == ">=") return CompareOp::kGreaterEqual;
  throw LoadError(source, line, "comparative operator must be < > <= or >=");
}

// Positions adjacent to `position` through any edge.
std::vector<int> Neighbors(const QueryGraph &q, int position) {
  std::vector<int> out;
  for (const QueryEdge &e : q.edges) {
    if (e.from == position && e.to != position) out.push_back(e.to);
    if (e.to == position && e.from != position) out.push_back(e.from);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Undirected hop counts from `source`.
std::vector<int> Distances(const QueryGraph &q, int source) {
  std::vector<int> dist(q.nodes.size(), -1);
  std::vector<int> queue{source};
  dist[source] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int next : Neighbors(q, queue[i])) {
      if (dist[next] < 0) {
        dist[next] = dist[queue[i]] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

}  // namespace

ConstraintLexicon ConstraintLexicon::Default() {
  ConstraintLexicon lexicon;
  for (const char *word :
       {"highest", "largest", "biggest", "tallest", "longest", "most",
        "greatest", "deepest", "heaviest", "latest", "last", "youngest",
        "newest", "widest", "maximum"}) {
    lexicon.Add(word, Ordinal(SortOrder::kDescending));
  }
  for (const char *word :
       {"lowest", "smallest", "shortest", "least", "fewest", "earliest",
        "first", "oldest", "minimum", "narrowest", "lightest"}) {
    lexicon.Add(word, Ordinal(SortOrder::kAscending));
  }
  for (const char *phrase :
       {"more than", "greater than", "larger than", "higher than",
        "bigger than", "taller than", "longer than", "over"}) {
    lexicon.Add(phrase, Comparative(CompareOp::kGreater));
  }
  for (const char *phrase : {"less than", "fewer than", "smaller than",
                             "lower than", "shorter than", "under", "below"}) {
    lexicon.Add(phrase, Comparative(CompareOp::kLess));
  }
  lexicon.Add("at least", Comparative(CompareOp::kGreaterEqual));
  lexicon.Add("at most", Comparative(CompareOp::kLessEqual));
  lexicon.Add("how many", Aggregation());
  lexicon.Add("number of", Aggregation());
  return lexicon;
}

void ConstraintLexicon::AddClassLabels(const KnowledgeGraph &graph) {
  for (NodeIndex n = 0; n < graph.num_nodes(); ++n) {
    if (!graph.IsClass(n)) continue;
    for (const std::string &label : graph.Labels(n)) {
      nouns_.emplace(label, graph.node(n).text);
    }
  }
}

void ConstraintLexicon::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  Parse(in, path);
}

void ConstraintLexicon::Parse(std::istream &in, const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    std::vector<std::string> fields;
    size_t begin = 0;
    while (true) {
      size_t tab = line.find('\t', begin);
      fields.emplace_back(Trim(std::string_view(line).substr(
          begin, tab == std::string::npos ? std::string::npos : tab - begin)));
      if (tab == std::string::npos) break;
      begin = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) {
      throw LoadError(source, line_no, "expected keyword\\tkind\\tparams");
    }
    const std::string &kind = fields[1];
    std::string params = fields.size() == 3 ? fields[2] : "";
    if (kind == "answer-type") {
      if (params.empty()) throw LoadError(source, line_no, "missing class IRI");
      if (params.front() == '<' && params.back() == '>') {
        params = params.substr(1, params.size() - 2);
      }
      nouns_[NormalizeText(fields[0])] = params;
    } else if (kind == "ordinal") {
      Entry e = Ordinal(SortOrder::kDescending);
      size_t comma = params.find(',');
      e.order = ParseOrder(Trim(params.substr(0, comma)), source, line_no);
      if (comma != std::string::npos) {
        std::string_view limit =
            Trim(std::string_view(params).substr(comma + 1));
        auto [end, ec] =
            std::from_chars(limit.data(), limit.data() + limit.size(), e.limit);
        if (ec != std::errc() || end != limit.data() + limit.size() ||
            e.limit < 1) {
          throw LoadError(source, line_no, "bad ordinal limit");
        }
      }
      Add(fields[0], e);
    } else if (kind == "aggregation") {
      Add(fields[0], Aggregation());
    } else if (kind == "comparative") {
      Add(fields[0], Comparative(ParseOp(params, source, line_no)));
    } else {
      throw LoadError(source, line_no,
                      "unknown constraint kind '" + kind + "'");
    }
  }
}

void ConstraintLexicon::Add(std::string_view keyword, Entry entry) {
  std::string key = NormalizeText(keyword);
  if (key.empty()) throw ContractViolation("empty constraint keyword");
  if (entry.kind == Kind::kAnswerType) {
    nouns_[key] = entry.type_iri;
    return;
  }
  keywords_[key] = entry;
}

std::string ConstraintLexicon::ClassOf(std::string_view noun) const {
  std::string word = NormalizeText(noun);
  std::vector<std::string> forms{word};
  if (word.ends_with("ies"))
    forms.push_back(word.substr(0, word.size() - 3) + "y");
  if (word.ends_with("es")) forms.push_back(word.substr(0, word.size() - 2));
  if (word.ends_with("s")) forms.push_back(word.substr(0, word.size() - 1));
  for (const std::string &form : forms) {
    auto it = nouns_.find(form);
    if (it != nouns_.end()) return it->second;
  }
  return {};
}

std::vector<Constraint> DetectConstraints(std::string_view question,
                                          const ConstraintLexicon &lexicon) {
  std::vector<Token> tokens = Tokenize(question);
  std::vector<std::string> words;
  for (const Token &t : tokens) words.push_back(ToLower(t.text));
  size_t n = words.size();

  std::vector<Constraint> out;
  bool has_aggregation = false;
  for (size_t i = 0; i < n;) {
    size_t matched = 0;
    const Entry *entry = nullptr;
    for (size_t len = std::min(kMaxKeywordWords, n - i); len >= 1; --len) {
      std::string key = words[i];
      for (size_t j = i + 1; j < i + len; ++j) key += " " + words[j];
      auto it = lexicon.keywords().find(key);
      if (it != lexicon.keywords().end()) {
        matched = len;
        entry = &it->second;
        break;
      }
    }
    if (entry == nullptr) {
      ++i;
      continue;
    }
    std::pair<int, int> span{static_cast<int>(i),
                             static_cast<int>(i + matched)};
    switch (entry->kind) {
      case Kind::kOrdinal:
        out.push_back(
            {OrdinalConstraint{entry->order, entry->limit, {}}, span});
        break;
      case Kind::kAggregation:
        if (!has_aggregation) out.push_back({AggregationConstraint{}, span});
        has_aggregation = true;
        break;
      case Kind::kComparative:
        if (std::optional<double> value =
                NumberAfter(question, tokens[i + matched - 1].end)) {
          out.push_back({ComparativeConstraint{entry->op, *value, {}}, span});
        }
        break;
      case Kind::kAnswerType:
        break;
    }
    i += matched;
  }

  // Answer type from the noun after a trigger.
  auto noun_at = [&](size_t i) -> std::optional<Constraint> {
    for (size_t len = std::min<size_t>(2, n > i ? n - i : 0); len >= 1; --len) {
      std::string noun = words[i];
      if (len == 2) noun += " " + words[i + 1];
      std::string type = lexicon.ClassOf(noun);
      if (!type.empty()) {
        return Constraint{AnswerTypeConstraint{type},
                          {static_cast<int>(i), static_cast<int>(i + len)}};
      }
    }
    return std::nullopt;
  };
  auto skip = [&](size_t i, std::initializer_list<const char *> optional) {
    for (const char *word : optional) {
      if (i < n && words[i] == word) ++i;
    }
    return i;
  };
  for (size_t i = 0; i < n; ++i) {
    std::optional<size_t> noun;
    if (words[i] == "which" || words[i] == "what") {
      noun = i + 1;
    } else if (words[i] == "how" && i + 1 < n && words[i + 1] == "many") {
      noun = i + 2;
    } else if ((words[i] == "give" || words[i] == "show") && i + 1 < n &&
               words[i + 1] == "me") {
      noun = skip(i + 2, {"all", "the"});
    } else if (words[i] == "list") {
      noun = skip(i + 1, {"all", "the"});
    }
    if (!noun || *noun >= n) continue;
    if (std::optional<Constraint> c = noun_at(*noun)) {
      out.push_back(*c);
      break;
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Constraint &a, const Constraint &b) {
                     return a.source_span.first < b.source_span.first;
                   });
  return out;
}

QueryGraph Augment(const QueryGraph &query,
                   const std::vector<Constraint> &constraints,
                   const KnowledgeGraph &graph) {
  if (!query.IsFullyLabeled()) {
    throw ContractViolation("augment needs a fully labeled query graph");
  }
  QueryGraph out = query;
  bool needs_target = std::any_of(
      constraints.begin(), constraints.end(), [](const Constraint &c) {
        return std::holds_alternative<OrdinalConstraint>(c.spec) ||
               std::holds_alternative<ComparativeConstraint>(c.spec);
      });
  std::string target;
  if (needs_target) {
    int ret = out.PositionOf(out.return_variable);
    if (ret < 0) throw ContractViolation("query has no return variable");

    std::optional<std::vector<Binding>> solutions;
    auto numeric = [&](int position) {
      auto it = out.witness.find(position);
      if (it != out.witness.end()) {
        return NumericValue(graph.node(it->second)).has_value();
      }
      if (!solutions) solutions = Solutions(out, graph);
      return std::any_of(
          solutions->begin(), solutions->end(), [&](const Binding &b) {
            return NumericValue(graph.node(b[position])).has_value();
          });
    };

    if (numeric(ret)) {
      target = out.return_variable;
      for (int next : Neighbors(out, ret)) {
        if (out.nodes[next].is_variable()) {
          out.return_variable = out.nodes[next].value;
          break;
        }
      }
    } else {
      std::vector<int> dist = Distances(out, ret);
      int best = -1;
      for (int p = 0; p < static_cast<int>(out.nodes.size()); ++p) {
        if (p == ret || !out.nodes[p].is_variable() || dist[p] < 0) continue;
        if (!numeric(p)) continue;
        if (best < 0 || dist[p] < dist[best]) best = p;
      }
      if (best < 0) {
        throw ConstraintError(
            "no numeric or date value for an ordinal or "
            "comparative constraint");
      }
      target = out.nodes[best].value;
    }
  }
  for (Constraint c : constraints) {
    if (auto *ord = std::get_if<OrdinalConstraint>(&c.spec))
      ord->target = target;
    if (auto *cmp = std::get_if<ComparativeConstraint>(&c.spec)) {
      cmp->target = target;
    }
    out.constraints.push_back(std::move(c));
  }
  return out;
}

}  // namespace kgqa
