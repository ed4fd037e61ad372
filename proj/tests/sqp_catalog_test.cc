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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "kgqa/errors.h"
#include "kgqa/query_graph.h"

namespace kgqa {
namespace {

using Edges = std::vector<PatternEdge>;

// Smallest sorted edge list over all node relabelings.
Edges OracleCanonical(int n, const Edges &edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Edges best;
  bool first = true;
  do {
    Edges mapped;
    for (const PatternEdge &e : edges)
      mapped.push_back({perm[e.from], perm[e.to]});
    std::sort(mapped.begin(), mapped.end());
    if (first || mapped < best) best = mapped;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool WeaklyConnected(int n, const Edges &edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (const PatternEdge &e : edges) parent[find(e.from)] = find(e.to);
  for (int i = 1; i < n; ++i) {
    if (find(i) != find(0)) return false;
  }
  return true;
}

// All directed trees on n nodes up to isomorphism, by exhaustive search over
// edge subsets.
std::set<Edges> OracleTrees(int n) {
  Edges pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) pairs.push_back({a, b});
    }
  }
  std::set<Edges> trees;
  int m = static_cast<int>(pairs.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != n - 1) continue;
    Edges edges;
    for (int i = 0; i < m; ++i) {
      if (mask & (1 << i)) edges.push_back(pairs[i]);
    }
    if (WeaklyConnected(n, edges)) trees.insert(OracleCanonical(n, edges));
  }
  return trees;
}

QueryGraph Label(const StructuralQueryPattern &p) {
  QueryGraph q;
  for (int i = 0; i < p.node_count; ++i) {
    q.nodes.push_back(QueryNode::Variable("v" + std::to_string(i)));
  }
  for (const PatternEdge &e : p.edges) {
    q.edges.push_back({e.from, e.to, "http://a/p" + std::to_string(e.from)});
  }
  q.return_variable = "v0";
  return q;
}

TEST(SqpCatalogTest, DefaultHasThirteenPatternsOfAtMostFourNodes) {
  PatternCatalog catalog = PatternCatalog::Default();
  ASSERT_EQ(catalog.size(), 13u);
  for (const StructuralQueryPattern &p : catalog.patterns()) {
    EXPECT_LE(p.node_count, 4);
    EXPECT_EQ(static_cast<int>(p.edges.size()), p.node_count - 1);
    EXPECT_TRUE(WeaklyConnected(p.node_count, p.edges));
  }
  EXPECT_EQ(catalog.patterns().front().node_count, 1);
}

TEST(SqpCatalogTest, DefaultEqualsExhaustiveEnumeration) {
  std::set<std::pair<int, Edges>> expected;
  for (int n = 1; n <= 4; ++n) {
    for (const Edges &t : OracleTrees(n)) expected.insert({n, t});
  }
  EXPECT_EQ(expected.size(), 13u);
  std::set<std::pair<int, Edges>> actual;
  PatternCatalog catalog = PatternCatalog::Default();
  for (const StructuralQueryPattern &p : catalog.patterns()) {
    actual.insert({p.node_count, OracleCanonical(p.node_count, p.edges)});
  }
  EXPECT_EQ(actual, expected);
}

TEST(SqpCatalogTest, SmallerBoundsGiveTheKnownCounts) {
  EXPECT_EQ(PatternCatalog::Default(1).size(), 1u);
  EXPECT_EQ(PatternCatalog::Default(2).size(), 2u);
  EXPECT_EQ(PatternCatalog::Default(3).size(), 5u);
}

TEST(SqpCatalogTest, IdsFollowCatalogOrder) {
  PatternCatalog catalog = PatternCatalog::Default();
  std::vector<int> expected(13);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(catalog.ids(), expected);
  // Spot-check the shapes the pipeline relies on.
  EXPECT_EQ(catalog.Get(1).edges, (Edges{{0, 1}}));
  EXPECT_EQ(catalog.Get(3).edges, (Edges{{0, 1}, {1, 2}}));
  EXPECT_EQ(catalog.Get(9).edges, (Edges{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_THROW(catalog.Get(13), std::out_of_range);
  EXPECT_EQ(catalog.Find(-1), nullptr);
}

TEST(SqpCatalogTest, LabelingThenDerivingIsTheIdentity) {
  PatternCatalog catalog = PatternCatalog::Default();
  for (const StructuralQueryPattern &p : catalog.patterns()) {
    EXPECT_EQ(DerivePattern(catalog, Label(p)), p.id);
  }
}

TEST(SqpCatalogTest, DerivationIgnoresPositionOrderAndTypeEdges) {
  PatternCatalog catalog = PatternCatalog::Default();
  std::mt19937 rng(5);
  for (const StructuralQueryPattern &p : catalog.patterns()) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> perm(p.node_count);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      StructuralQueryPattern shuffled = p;
      for (PatternEdge &e : shuffled.edges) e = {perm[e.from], perm[e.to]};
      std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
      QueryGraph q = Label(shuffled);
      // Type edges hang extra class nodes off the skeleton.
      int cls = static_cast<int>(q.nodes.size());
      q.nodes.push_back(QueryNode::Entity("http://a/Class"));
      q.edges.push_back({0, cls, std::string(kRdfType)});
      EXPECT_EQ(DerivePattern(catalog, q), p.id);
    }
  }
}

TEST(SqpCatalogTest, DerivationRejectsNonTreesAndOversizedGraphs) {
  PatternCatalog catalog = PatternCatalog::Default();
  QueryGraph chain = ParseEdgeList({"?a|<http://p>|?b", "?b|<http://p>|?c",
                                    "?c|<http://p>|?d", "?d|<http://p>|?x"});
  EXPECT_THROW(DerivePattern(catalog, chain), NoPatternError);
  QueryGraph cycle = ParseEdgeList({"?x|<http://p>|?y", "?y|<http://p>|?x"});
  EXPECT_THROW(DerivePattern(catalog, cycle), NoPatternError);
  EXPECT_THROW(DerivePattern(catalog, QueryGraph{}), NoPatternError);
}

TEST(SqpCatalogTest, IsomorphismAgreesWithTheOracle) {
  std::mt19937 rng(9);
  PatternCatalog catalog = PatternCatalog::Default();
  const auto &patterns = catalog.patterns();
  for (const StructuralQueryPattern &a : patterns) {
    for (const StructuralQueryPattern &b : patterns) {
      bool oracle = a.node_count == b.node_count &&
                    OracleCanonical(a.node_count, a.edges) ==
                        OracleCanonical(b.node_count, b.edges);
      EXPECT_EQ(IsIsomorphic(a, b), oracle);
      EXPECT_EQ(oracle, a.id == b.id);
    }
  }
}

TEST(SqpCatalogTest, NonIntermediatePositionsAreTheLeaves) {
  PatternCatalog catalog = PatternCatalog::Default();
  for (const StructuralQueryPattern &p : catalog.patterns()) {
    std::vector<int> expected;
    for (int i = 0; i < p.node_count; ++i) {
      int degree = 0;
      for (const PatternEdge &e : p.edges)
        degree += (e.from == i) + (e.to == i);
      if (degree <= 1) expected.push_back(i);
    }
    EXPECT_EQ(NonIntermediatePositions(p), expected) << "pattern " << p.id;
  }
}

TEST(SqpCatalogTest, SerializeParseRoundTrip) {
  PatternCatalog catalog = PatternCatalog::Default();
  std::istringstream in(catalog.Serialize());
  EXPECT_EQ(PatternCatalog::Parse(in, "round-trip"), catalog);
}

TEST(SqpCatalogTest, ParseAcceptsCommentsAndNamedIds) {
  std::istringstream in(
      "# single node first\n"
      "p0 1\n"
      "\n"
      "chain 3 0->1,1->2\n");
  PatternCatalog catalog = PatternCatalog::Parse(in, "inline");
  ASSERT_EQ(catalog.size(), 2u);
  EXPECT_EQ(catalog.ids(), (std::vector<int>{0, 1}));
}

TEST(SqpCatalogTest, RejectsInvalidCatalogs) {
  auto parse = [](const std::string &text) {
    std::istringstream in(text);
    return PatternCatalog::Parse(in, "inline");
  };
  // Isomorphic duplicates.
  EXPECT_THROW(parse("1 2 0->1\n2 2 1->0\n"), ValidationError);
  // Duplicate ids.
  EXPECT_THROW(parse("1 2 0->1\n1 3 0->1,1->2\n"), ValidationError);
  // Single-node pattern not first.
  EXPECT_THROW(parse("1 2 0->1\n0 1\n"), ValidationError);
  // Not a tree.
  EXPECT_THROW(parse("1 3 0->1\n"), ValidationError);
  EXPECT_THROW(parse("1 3 0->1,1->0\n"), ValidationError);
  // Too many nodes for the bound.
  EXPECT_THROW(parse("1 5 0->1,1->2,2->3,3->4\n"), ValidationError);
  // Syntax.
  EXPECT_THROW(parse("1 x 0->1\n"), LoadError);
  EXPECT_THROW(parse("1 2 0-1\n"), LoadError);
  EXPECT_THROW(parse("1 2 0->1 extra\n"), LoadError);
  EXPECT_THROW(PatternCatalog::Load("/nonexistent/catalog"), LoadError);
}

TEST(SqpCatalogTest, DegreeHelpers) {
  PatternCatalog catalog = PatternCatalog::Default();
  const StructuralQueryPattern &star = catalog.Get(7);
  EXPECT_EQ(star.Degree(0), 3);
  EXPECT_TRUE(star.HasOutgoing(0));
  EXPECT_TRUE(star.HasIncoming(0));
  EXPECT_FALSE(star.HasIncoming(3));
}

}  // namespace
}  // namespace kgqa
