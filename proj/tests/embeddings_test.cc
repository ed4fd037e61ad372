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

#include "kgqa/embeddings.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "kgqa/errors.h"
#include "test_util.h"

namespace kgqa {
namespace {

// Cosine in long double, written out independently.
double OracleCosine(const std::vector<double> &a,
                    const std::vector<double> &b) {
  long double dot = 0, aa = 0, bb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    aa += static_cast<long double>(a[i]) * a[i];
    bb += static_cast<long double>(b[i]) * b[i];
  }
  if (aa == 0 || bb == 0) return 0;
  return static_cast<double>(dot / std::sqrt(aa * bb));
}

WordVectorStore ParseText(const std::string &text) {
  std::istringstream in(text);
  return WordVectorStore::Parse(in, "inline");
}

TEST(EmbeddingsTest, CosineMatchesTheOracle) {
  std::mt19937 rng(21);
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    size_t dim = 1 + rng() % 12;
    std::vector<double> a(dim), b(dim);
    for (double &x : a) x = gauss(rng);
    for (double &x : b) x = gauss(rng);
    EXPECT_NEAR(CosineSimilarity(a, b), OracleCosine(a, b), 1e-9);
    EXPECT_NEAR(CosineSimilarity(a, a), 1.0, 1e-12);
    EXPECT_NEAR(CosineSimilarity(a, b), CosineSimilarity(b, a), 1e-15);
  }
}

TEST(EmbeddingsTest, CosineBoundaryCases) {
  std::vector<double> zero = {0, 0};
  std::vector<double> x = {1, 0};
  std::vector<double> y = {0, 2};
  std::vector<double> minus_x = {-3, 0};
  EXPECT_EQ(CosineSimilarity(zero, x), 0.0);
  EXPECT_EQ(CosineSimilarity(x, y), 0.0);
  EXPECT_DOUBLE_EQ(CosineSimilarity(x, minus_x), -1.0);
  std::vector<double> longer = {1, 0, 0};
  EXPECT_THROW(CosineSimilarity(x, longer), ContractViolation);
}

TEST(EmbeddingsTest, ParsesTextVectors) {
  WordVectorStore store = ParseText("film 1 0 0\nDirect 0 1 0\n\nfilm 9 9 9\n");
  EXPECT_EQ(store.dim(), 3);
  EXPECT_EQ(store.size(), 2u);
  // Duplicates keep the first vector; lookup ignores case.
  EXPECT_EQ(*store.Find("FILM"), (std::vector<double>{1, 0, 0}));
  EXPECT_NE(store.Find("direct"), nullptr);
  EXPECT_EQ(store.Find("missing"), nullptr);
  EXPECT_DOUBLE_EQ(store.Cosine("film", "film"), 1.0);
  EXPECT_EQ(store.Cosine("film", "direct"), 0.0);
  EXPECT_EQ(store.Cosine("film", "missing"), 0.0);
}

TEST(EmbeddingsTest, RejectsMalformedFiles) {
  EXPECT_THROW(ParseText("a 1 2\nb 1\n"), LoadError);
  EXPECT_THROW(ParseText("a 1 x\n"), LoadError);
  EXPECT_THROW(ParseText("a\n"), LoadError);
  EXPECT_THROW(ParseText(""), LoadError);
  EXPECT_THROW(WordVectorStore::Load("/nonexistent/vectors.txt"), LoadError);
  EXPECT_THROW(WordVectorStore(0), ContractViolation);
}

TEST(EmbeddingsTest, AddChecksTheDimension) {
  WordVectorStore store(2);
  EXPECT_TRUE(store.Add("a", {1, 2}));
  EXPECT_FALSE(store.Add("A", {3, 4}));
  EXPECT_THROW(store.Add("b", {1}), ContractViolation);
}

TEST(EmbeddingsTest, SentenceVectorIsTheMeanOfKnownWords) {
  WordVectorStore store = ParseText("film 2 0\nstar 0 4\n");
  EXPECT_EQ(store.SentenceVector("Film, star and unknown!"),
            (std::vector<double>{1, 2}));
  EXPECT_EQ(store.SentenceVector("star film"),
            store.SentenceVector("film star"));
  EXPECT_EQ(store.SentenceVector("nothing known"), (std::vector<double>{0, 0}));
}

TEST(EmbeddingsTest, LoadsTheFixtureVectors) {
  WordVectorStore store =
      WordVectorStore::Load(testing::DataPath("vectors.txt"));
  EXPECT_EQ(store.dim(), 16);
  // Words of one cluster are close; clusters are orthogonal.
  EXPECT_GT(store.Cosine("directed", "director"), 0.8);
  EXPECT_LT(std::abs(store.Cosine("director", "elevation")), 0.3);
}

}  // namespace
}  // namespace kgqa
