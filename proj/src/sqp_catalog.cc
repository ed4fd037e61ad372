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

#include "kgqa/sqp_catalog.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kgqa/errors.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Empty string when the edges form a directed tree on node_count nodes.
std::string TreeDefect(int node_count, const std::vector<PatternEdge> &edges) {
  if (node_count < 1) return "node count must be positive";
  if (static_cast<int>(edges.size()) != node_count - 1) {
    return "a tree on " + std::to_string(node_count) + " nodes needs " +
           std::to_string(node_count - 1) + " edges";
  }
  DisjointSets sets(node_count);
  for (const PatternEdge &e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= node_count || e.to >= node_count) {
      return "edge endpoint out of range";
    }
    if (e.from == e.to) return "self loop";
    if (!sets.Union(e.from, e.to)) return "cycle";
  }
  return {};
}

void EnumerateEdgeSets(const std::vector<PatternEdge> &pairs, size_t start,
                       int remaining, std::vector<PatternEdge> &chosen,
                       int node_count,
                       std::set<std::vector<PatternEdge>> &shapes) {
  if (remaining == 0) {
    if (TreeDefect(node_count, chosen).empty()) {
      shapes.insert(CanonicalEdges(node_count, chosen));
    }
    return;
  }
  for (size_t i = start; i < pairs.size(); ++i) {
    chosen.push_back(pairs[i]);
    EnumerateEdgeSets(pairs, i + 1, remaining - 1, chosen, node_count, shapes);
    chosen.pop_back();
  }
}

std::vector<PatternEdge> ParseEdgeSpec(std::string_view spec,
                                       const std::string &source, int line_no) {
  std::vector<PatternEdge> edges;
  while (!spec.empty()) {
    size_t comma = spec.find(',');
    std::string_view item = Trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view()
                                           : spec.substr(comma + 1);
    size_t arrow = item.find("->");
    if (arrow == std::string_view::npos) {
      throw LoadError(source, line_no, "expected from->to edge");
    }
    PatternEdge edge;
    std::string_view from = Trim(item.substr(0, arrow));
    std::string_view to = Trim(item.substr(arrow + 2));
    auto r1 =
        std::from_chars(from.data(), from.data() + from.size(), edge.from);
    auto r2 = std::from_chars(to.data(), to.data() + to.size(), edge.to);
    if (r1.ec != std::errc() || r1.ptr != from.data() + from.size() ||
        r2.ec != std::errc() || r2.ptr != to.data() + to.size()) {
      throw LoadError(source, line_no, "bad edge endpoint");
    }
    edges.push_back(edge);
  }
  return edges;
}

}  // namespace

int StructuralQueryPattern::Degree(int node) const {
  int degree = 0;
  for (const PatternEdge &e : edges) {
    if (e.from == node) ++degree;
    if (e.to == node) ++degree;
  }
  return degree;
}

bool StructuralQueryPattern::HasOutgoing(int node) const {
  return std::any_of(edges.begin(), edges.end(),
                     [node](const PatternEdge &e) { return e.from == node; });
}

bool StructuralQueryPattern::HasIncoming(int node) const {
  return std::any_of(edges.begin(), edges.end(),
                     [node](const PatternEdge &e) { return e.to == node; });
}

void ValidatePattern(const StructuralQueryPattern &p, int max_nodes) {
  if (p.node_count > max_nodes) {
    throw ValidationError("pattern " + std::to_string(p.id) + " has " +
                          std::to_string(p.node_count) + " nodes, more than " +
                          std::to_string(max_nodes));
  }
  std::string defect = TreeDefect(p.node_count, p.edges);
  if (!defect.empty()) {
    throw ValidationError("pattern " + std::to_string(p.id) +
                          " is not a directed tree: " + defect);
  }
}

std::vector<PatternEdge> CanonicalEdges(int node_count,
                                        const std::vector<PatternEdge> &edges) {
  std::vector<int> perm(std::max(node_count, 0));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PatternEdge> best;
  bool have_best = false;
  std::vector<PatternEdge> relabeled(edges.size());
  do {
    for (size_t i = 0; i < edges.size(); ++i) {
      relabeled[i] = {perm[edges[i].from], perm[edges[i].to]};
    }
    std::sort(relabeled.begin(), relabeled.end());
    if (!have_best || relabeled < best) {
      best = relabeled;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool IsIsomorphic(const StructuralQueryPattern &p,
                  const StructuralQueryPattern &q) {
  if (p.node_count != q.node_count || p.edges.size() != q.edges.size()) {
    return false;
  }
  return CanonicalEdges(p.node_count, p.edges) ==
         CanonicalEdges(q.node_count, q.edges);
}

std::vector<int> NonIntermediatePositions(const StructuralQueryPattern &p) {
  if (p.node_count == 1) return {0};
  std::vector<int> leaves;
  for (int i = 0; i < p.node_count; ++i) {
    if (p.Degree(i) == 1) leaves.push_back(i);
  }
  return leaves;
}

PatternCatalog::PatternCatalog(std::vector<StructuralQueryPattern> patterns,
                               int max_nodes)
    : max_nodes_(max_nodes), patterns_(std::move(patterns)) {
  std::set<int> ids;
  for (size_t i = 0; i < patterns_.size(); ++i) {
    const StructuralQueryPattern &p = patterns_[i];
    ValidatePattern(p, max_nodes_);
    if (!ids.insert(p.id).second) {
      throw ValidationError("duplicate pattern id " + std::to_string(p.id));
    }
    if (p.node_count == 1 && i != 0) {
      throw ValidationError("the single-node pattern must come first");
    }
    std::vector<PatternEdge> canonical = CanonicalEdges(p.node_count, p.edges);
    for (size_t j = 0; j < i; ++j) {
      if (patterns_[j].node_count == p.node_count &&
          canonical_[j] == canonical) {
        throw ValidationError("patterns " + std::to_string(patterns_[j].id) +
                              " and " + std::to_string(p.id) +
                              " are isomorphic");
      }
    }
    canonical_.push_back(std::move(canonical));
  }
}

PatternCatalog PatternCatalog::Default(int max_nodes) {
  std::vector<StructuralQueryPattern> patterns;
  for (int n = 1; n <= max_nodes; ++n) {
    std::vector<PatternEdge> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) pairs.push_back({i, j});
      }
    }
    std::set<std::vector<PatternEdge>> shapes;
    std::vector<PatternEdge> chosen;
    EnumerateEdgeSets(pairs, 0, n - 1, chosen, n, shapes);
    for (const std::vector<PatternEdge> &edges : shapes) {
      patterns.push_back({static_cast<int>(patterns.size()), n, edges});
    }
  }
  return PatternCatalog(std::move(patterns), max_nodes);
}

PatternCatalog PatternCatalog::Load(const std::string &path, int max_nodes) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return Parse(in, path, max_nodes);
}

PatternCatalog PatternCatalog::Parse(std::istream &in,
                                     const std::string &source, int max_nodes) {
  std::vector<StructuralQueryPattern> patterns;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream fields{std::string(text)};
    std::string id_text, count_text, edge_text;
    fields >> id_text >> count_text >> edge_text;
    std::string extra;
    if (fields >> extra) throw LoadError(source, line_no, "too many fields");

    StructuralQueryPattern p;
    auto id_result =
        std::from_chars(id_text.data(), id_text.data() + id_text.size(), p.id);
    if (id_result.ec != std::errc() ||
        id_result.ptr != id_text.data() + id_text.size()) {
      p.id = static_cast<int>(patterns.size());
    }
    auto count_result = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), p.node_count);
    if (count_text.empty() || count_result.ec != std::errc() ||
        count_result.ptr != count_text.data() + count_text.size()) {
      throw LoadError(source, line_no, "expected a node count");
    }
    p.edges = ParseEdgeSpec(edge_text, source, line_no);
    patterns.push_back(std::move(p));
  }
  return PatternCatalog(std::move(patterns), max_nodes);
}

std::string PatternCatalog::Serialize() const {
  std::ostringstream out;
  for (const StructuralQueryPattern &p : patterns_) {
    out << p.id << " " << p.node_count;
    for (size_t i = 0; i < p.edges.size(); ++i) {
      out << (i == 0 ? " " : ",") << p.edges[i].from << "->" << p.edges[i].to;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<int> PatternCatalog::ids() const {
  std::vector<int> ids;
  for (const StructuralQueryPattern &p : patterns_) ids.push_back(p.id);
  return ids;
}

const StructuralQueryPattern &PatternCatalog::Get(int id) const {
  const StructuralQueryPattern *p = Find(id);
  if (p == nullptr) {
    throw std::out_of_range("unknown pattern id " + std::to_string(id));
  }
  return *p;
}

const StructuralQueryPattern *PatternCatalog::Find(int id) const {
  for (const StructuralQueryPattern &p : patterns_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::optional<int> PatternCatalog::Match(
    int node_count, const std::vector<PatternEdge> &edges) const {
  std::vector<PatternEdge> canonical = CanonicalEdges(node_count, edges);
  for (size_t i = 0; i < patterns_.size(); ++i) {
    if (patterns_[i].node_count == node_count && canonical_[i] == canonical) {
      return patterns_[i].id;
    }
  }
  return std::nullopt;
}

PatternSkeleton StripTypeEdges(const QueryGraph &g,
                               std::string_view type_predicate) {
  int n = static_cast<int>(g.nodes.size());
  DisjointSets sets(n);
  std::vector<int> kept;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const QueryEdge &e = g.edges[i];
    if (e.predicate == type_predicate) continue;
    kept.push_back(static_cast<int>(i));
    sets.Union(e.from, e.to);
  }

  std::map<int, std::vector<int>> components;
  for (int i = 0; i < n; ++i) components[sets.Find(i)].push_back(i);

  int return_position = g.PositionOf(g.return_variable);
  const std::vector<int> *best = nullptr;
  auto rank = [&](const std::vector<int> &c) {
    bool has_variable = std::any_of(
        c.begin(), c.end(), [&](int i) { return g.nodes[i].is_variable(); });
    bool has_return = std::find(c.begin(), c.end(), return_position) != c.end();
    return std::make_tuple(has_variable, c.size(), has_return);
  };
  // Components are visited by smallest member, so the first maximum wins.
  for (const auto &[root, members] : components) {
    if (best == nullptr || rank(members) > rank(*best)) best = &members;
  }

  PatternSkeleton skeleton;
  if (best == nullptr) return skeleton;
  skeleton.positions = *best;
  for (int i : kept) {
    if (sets.Find(g.edges[i].from) == sets.Find(skeleton.positions.front())) {
      skeleton.edges.push_back(i);
    }
  }
  return skeleton;
}

int DerivePattern(const PatternCatalog &catalog, const QueryGraph &g,
                  std::string_view type_predicate) {
  if (g.nodes.empty()) throw NoPatternError("empty query graph");
  PatternSkeleton skeleton = StripTypeEdges(g, type_predicate);
  std::map<int, int> remap;
  for (int position : skeleton.positions) {
    remap.emplace(position, static_cast<int>(remap.size()));
  }
  std::vector<PatternEdge> edges;
  for (int i : skeleton.edges) {
    edges.push_back({remap[g.edges[i].from], remap[g.edges[i].to]});
  }
  int node_count = static_cast<int>(skeleton.positions.size());
  if (node_count > catalog.max_nodes()) {
    throw NoPatternError("query graph has " + std::to_string(node_count) +
                         " nodes, more than " +
                         std::to_string(catalog.max_nodes()));
  }
  std::string defect = TreeDefect(node_count, edges);
  if (!defect.empty()) {
    throw NoPatternError("query graph is not a tree: " + defect);
  }
  std::optional<int> id = catalog.Match(node_count, edges);
  if (!id) throw NoPatternError("no catalog pattern matches the query graph");
  return *id;
}

}  // namespace kgqa
