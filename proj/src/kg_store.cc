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

#include "kgqa/kg_store.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kgqa/errors.h"
#include "kgqa/levenshtein.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

std::string NodeKey(const NodeId &node) {
  if (node.is_entity()) return "<" + node.text;
  return "\"" + node.text + "\"^^" + node.datatype;
}

// Cursor over one N-Triples line.
class LineParser {
 public:
  LineParser(std::string_view line, const std::string &source, int line_no)
      : line_(line), source_(source), line_no_(line_no) {}

  NodeId ParseTerm(bool allow_literal) {
    SkipSpace();
    if (pos_ >= line_.size()) Fail("unexpected end of line");
    char c = line_[pos_];
    if (c == '<') return NodeId::Entity(ParseIri());
    if (c == '"') {
      if (!allow_literal) Fail("literal not allowed in this position");
      std::string lexical = ParseQuoted();
      std::string datatype;
      if (line_.substr(pos_, 2) == "^^") {
        pos_ += 2;
        if (pos_ >= line_.size() || line_[pos_] != '<') {
          Fail("expected datatype IRI after ^^");
        }
        datatype = ParseIri();
      } else if (pos_ < line_.size() && line_[pos_] == '@') {
        Fail("language tags are not supported");
      }
      return NodeId::Literal(std::move(lexical), std::move(datatype));
    }
    if (c == '_') Fail("blank nodes are not supported");
    Fail("expected '<' or '\"'");
  }

  std::string ParseIri() {
    size_t close = line_.find('>', pos_);
    if (close == std::string_view::npos) Fail("unterminated IRI");
    std::string iri(line_.substr(pos_ + 1, close - pos_ - 1));
    if (iri.empty()) Fail("empty IRI");
    pos_ = close + 1;
    return iri;
  }

  void ExpectEnd() {
    SkipSpace();
    if (pos_ >= line_.size() || line_[pos_] != '.') Fail("expected '.'");
    ++pos_;
    SkipSpace();
    if (pos_ < line_.size() && line_[pos_] != '#') {
      Fail("trailing characters after '.'");
    }
  }

  [[noreturn]] void Fail(const std::string &what) const {
    throw LoadError(source_, line_no_, what);
  }

 private:
  void SkipSpace() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) {
      ++pos_;
    }
  }

  std::string ParseQuoted() {
    std::string out;
    for (++pos_; pos_ < line_.size(); ++pos_) {
      char c = line_[pos_];
      if (c == '"') {
        ++pos_;
        return out;
      }
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (++pos_ >= line_.size()) break;
      switch (line_[pos_]) {
        case 'n':
          out.push_back('\n');
          break;
        case 't':
          out.push_back('\t');
          break;
        case 'r':
          out.push_back('\r');
          break;
        case '"':
          out.push_back('"');
          break;
        case '\\':
          out.push_back('\\');
          break;
        default:
          Fail("unsupported escape sequence");
      }
    }
    Fail("unterminated literal");
  }

  std::string_view line_;
  const std::string &source_;
  int line_no_;
  size_t pos_ = 0;
};

// Splits `<iri>\tvalue` lines of the labels and counts files.
std::pair<std::string, std::string> SplitKeyedLine(std::string_view line,
                                                   const std::string &source,
                                                   int line_no) {
  size_t tab = line.find('\t');
  if (tab == std::string_view::npos) {
    throw LoadError(source, line_no, "expected <iri>\\tvalue");
  }
  std::string_view iri = Trim(line.substr(0, tab));
  if (iri.size() >= 2 && iri.front() == '<' && iri.back() == '>') {
    iri = iri.substr(1, iri.size() - 2);
  }
  if (iri.empty()) throw LoadError(source, line_no, "empty IRI");
  return {std::string(iri), std::string(Trim(line.substr(tab + 1)))};
}

std::ifstream OpenOrThrow(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return in;
}

bool SkippableLine(std::string_view line) {
  line = Trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

std::string NodeId::ToString() const {
  if (is_entity()) return "<" + text + ">";
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  if (!datatype.empty()) out += "^^<" + datatype + ">";
  return out;
}

KnowledgeGraph KnowledgeGraph::LoadNTriples(const std::string &path,
                                            const std::string &labels_path,
                                            const std::string &counts_path,
                                            const KgOptions &options) {
  KnowledgeGraphBuilder builder(options);
  {
    std::ifstream in = OpenOrThrow(path);
    builder.AddNTriples(in, path);
  }
  if (!labels_path.empty()) {
    std::ifstream in = OpenOrThrow(labels_path);
    builder.AddLabels(in, labels_path);
  }
  if (!counts_path.empty()) {
    std::ifstream in = OpenOrThrow(counts_path);
    builder.AddCounts(in, counts_path);
  }
  return std::move(builder).Build();
}

std::optional<NodeIndex> KnowledgeGraph::Find(const NodeId &node) const {
  auto it = node_lookup_.find(NodeKey(node));
  if (it == node_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeIndex> KnowledgeGraph::FindEntity(
    std::string_view iri) const {
  return Find(NodeId::Entity(std::string(iri)));
}

std::optional<PredicateIndex> KnowledgeGraph::FindPredicate(
    std::string_view iri) const {
  auto it = predicate_lookup_.find(std::string(iri));
  if (it == predicate_lookup_.end()) return std::nullopt;
  return it->second;
}

std::span<const Edge> KnowledgeGraph::Outgoing(const NodeId &n) const {
  std::optional<NodeIndex> index = Find(n);
  if (!index) return {};
  return out_[*index];
}

std::span<const Edge> KnowledgeGraph::Incoming(const NodeId &n) const {
  std::optional<NodeIndex> index = Find(n);
  if (!index) return {};
  return in_[*index];
}

bool KnowledgeGraph::HasTriple(NodeIndex s, PredicateIndex p,
                               NodeIndex o) const {
  const std::vector<Edge> &edges = out_[s];
  return std::binary_search(edges.begin(), edges.end(), Edge{p, o});
}

std::string_view KnowledgeGraph::PrimaryLabel(NodeIndex n) const {
  if (labels_[n].empty()) return {};
  return labels_[n].front();
}

bool KnowledgeGraph::HasType(NodeIndex n, std::string_view type_iri) const {
  const std::vector<std::string> &types = types_[n];
  return std::binary_search(types.begin(), types.end(), type_iri);
}

bool KnowledgeGraph::RanksBefore(NodeIndex a, NodeIndex b) const {
  if (prominence_[a] != prominence_[b]) return prominence_[a] > prominence_[b];
  return nodes_[a].text < nodes_[b].text;
}

std::vector<NodeIndex> KnowledgeGraph::LookupCandidates(
    std::string_view phrase) const {
  std::string normalized = NormalizeText(phrase);
  if (normalized.empty()) return {};

  std::vector<NodeIndex> result;

  // Token containment: intersect the posting lists of all phrase tokens.
  std::vector<std::string> tokens = Words(normalized);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  std::vector<NodeIndex> contained;
  bool first = true;
  for (const std::string &token : tokens) {
    auto it = token_index_.find(token);
    if (it == token_index_.end()) {
      contained.clear();
      break;
    }
    if (first) {
      contained = it->second;
      first = false;
      continue;
    }
    std::vector<NodeIndex> merged;
    std::set_intersection(contained.begin(), contained.end(),
                          it->second.begin(), it->second.end(),
                          std::back_inserter(merged));
    contained = std::move(merged);
  }
  result = std::move(contained);

  // Near misses in spelling.
  size_t bound = static_cast<size_t>(std::max(0, options_.max_label_distance));
  for (const auto &[label, entities] : label_index_) {
    if (BoundedLevenshtein(label, normalized, bound) <= bound) {
      result.insert(result.end(), entities.begin(), entities.end());
    }
  }

  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  std::sort(result.begin(), result.end(),
            [this](NodeIndex a, NodeIndex b) { return RanksBefore(a, b); });
  return result;
}

std::span<const NodeIndex> KnowledgeGraph::EntitiesWithLabel(
    std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return {};
  return it->second;
}

std::string KnowledgeGraph::DumpIndex() const {
  std::ostringstream out;
  out << "nodes " << nodes_.size() << " triples " << triples_.size() << "\n";
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    out << nodes_[n].ToString() << " prominence=" << prominence_[n];
    for (const std::string &label : labels_[n]) out << " label=" << label;
    for (const std::string &type : types_[n]) out << " type=" << type;
    out << "\n";
    for (const Edge &e : out_[n]) {
      out << "  out " << predicates_[e.predicate] << " "
          << nodes_[e.node].ToString() << "\n";
    }
    for (const Edge &e : in_[n]) {
      out << "  in " << predicates_[e.predicate] << " "
          << nodes_[e.node].ToString() << "\n";
    }
  }
  std::vector<std::string> labels;
  for (const auto &[label, entities] : label_index_) {
    std::ostringstream line;
    line << "label " << label << " ->";
    for (NodeIndex e : entities) line << " " << nodes_[e].text;
    labels.push_back(line.str());
  }
  std::sort(labels.begin(), labels.end());
  for (const std::string &line : labels) out << line << "\n";
  return out.str();
}

KnowledgeGraphBuilder::KnowledgeGraphBuilder(KgOptions options) {
  graph_.options_ = std::move(options);
}

NodeIndex KnowledgeGraphBuilder::Intern(const NodeId &node) {
  auto [it, inserted] = graph_.node_lookup_.try_emplace(
      NodeKey(node), static_cast<NodeIndex>(graph_.nodes_.size()));
  if (inserted) graph_.nodes_.push_back(node);
  return it->second;
}

void KnowledgeGraphBuilder::Add(const NodeId &subject,
                                std::string_view predicate,
                                const NodeId &object) {
  if (!subject.is_entity()) {
    throw ContractViolation("literal nodes cannot be triple subjects");
  }
  if (subject.text.empty() || predicate.empty() ||
      (object.is_entity() && object.text.empty())) {
    throw ContractViolation("empty IRI in triple");
  }
  NodeIndex s = Intern(subject);
  NodeIndex o = Intern(object);
  auto [it, inserted] = graph_.predicate_lookup_.try_emplace(
      std::string(predicate),
      static_cast<PredicateIndex>(graph_.predicates_.size()));
  if (inserted) graph_.predicates_.emplace_back(predicate);
  graph_.triples_.push_back({s, it->second, o});
}

void KnowledgeGraphBuilder::AddNTriples(std::istream &in,
                                        const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (SkippableLine(line)) continue;
    LineParser parser(line, source, line_no);
    NodeId subject = parser.ParseTerm(/*allow_literal=*/false);
    NodeId predicate = parser.ParseTerm(/*allow_literal=*/false);
    NodeId object = parser.ParseTerm(/*allow_literal=*/true);
    parser.ExpectEnd();
    Add(subject, predicate.text, object);
  }
}

void KnowledgeGraphBuilder::AddLabel(std::string_view iri,
                                     std::string_view label) {
  std::string normalized = NormalizeText(label);
  if (normalized.empty()) return;
  std::vector<std::string> &labels = custom_labels_[std::string(iri)];
  if (std::find(labels.begin(), labels.end(), normalized) == labels.end()) {
    labels.push_back(std::move(normalized));
  }
}

void KnowledgeGraphBuilder::AddLabels(std::istream &in,
                                      const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (SkippableLine(line)) continue;
    auto [iri, label] = SplitKeyedLine(line, source, line_no);
    if (label.empty()) throw LoadError(source, line_no, "empty label");
    AddLabel(iri, label);
  }
}

void KnowledgeGraphBuilder::SetCount(std::string_view iri, double count) {
  if (count < 0) throw ContractViolation("negative prominence count");
  counts_[std::string(iri)] = count;
  has_counts_ = true;
}

void KnowledgeGraphBuilder::AddCounts(std::istream &in,
                                      const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (SkippableLine(line)) continue;
    auto [iri, value] = SplitKeyedLine(line, source, line_no);
    uint64_t count = 0;
    auto [end, ec] =
        std::from_chars(value.data(), value.data() + value.size(), count);
    if (ec != std::errc() || end != value.data() + value.size()) {
      throw LoadError(source, line_no, "expected a non-negative integer");
    }
    SetCount(iri, static_cast<double>(count));
  }
  has_counts_ = true;
}

KnowledgeGraph KnowledgeGraphBuilder::Build() && {
  KnowledgeGraph &g = graph_;
  std::sort(g.triples_.begin(), g.triples_.end());
  g.triples_.erase(std::unique(g.triples_.begin(), g.triples_.end()),
                   g.triples_.end());

  size_t n = g.nodes_.size();
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  g.labels_.assign(n, {});
  g.types_.assign(n, {});
  g.is_class_.assign(n, false);
  g.prominence_.assign(n, 0.0);
  g.type_predicate_ = g.FindPredicate(g.options_.type_predicate);

  for (const Triple &t : g.triples_) {
    g.out_[t.subject].push_back({t.predicate, t.object});
    g.in_[t.object].push_back({t.predicate, t.subject});
    if (g.type_predicate_ && t.predicate == *g.type_predicate_ &&
        g.nodes_[t.object].is_entity()) {
      g.types_[t.subject].push_back(g.nodes_[t.object].text);
      g.is_class_[t.object] = true;
    }
  }
  for (NodeIndex i = 0; i < n; ++i) {
    std::sort(g.out_[i].begin(), g.out_[i].end());
    std::sort(g.in_[i].begin(), g.in_[i].end());
    std::sort(g.types_[i].begin(), g.types_[i].end());
    g.types_[i].erase(std::unique(g.types_[i].begin(), g.types_[i].end()),
                      g.types_[i].end());
  }

  for (NodeIndex i = 0; i < n; ++i) {
    const NodeId &node = g.nodes_[i];
    if (!node.is_entity()) {
      g.prominence_[i] =
          static_cast<double>(g.out_[i].size() + g.in_[i].size());
      continue;
    }
    if (has_counts_) {
      auto it = counts_.find(node.text);
      g.prominence_[i] = it == counts_.end() ? 0.0 : it->second;
    } else {
      g.prominence_[i] =
          static_cast<double>(g.out_[i].size() + g.in_[i].size());
    }

    auto custom = custom_labels_.find(node.text);
    if (custom != custom_labels_.end()) {
      g.labels_[i] = custom->second;
    } else {
      std::string label = NormalizeText(LabelFromIri(node.text));
      if (!label.empty()) g.labels_[i].push_back(std::move(label));
    }
    for (const std::string &label : g.labels_[i]) {
      g.label_index_[label].push_back(i);
      for (const std::string &token : Words(label)) {
        std::vector<NodeIndex> &posting = g.token_index_[token];
        if (posting.empty() || posting.back() != i) posting.push_back(i);
      }
    }
  }
  // Postings are appended in node order, so they are already sorted.
  for (auto &[label, entities] : g.label_index_) {
    std::sort(entities.begin(), entities.end(),
              [&g](NodeIndex a, NodeIndex b) { return g.RanksBefore(a, b); });
  }
  return std::move(graph_);
}

}  // namespace kgqa
