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

#ifndef KGQA_EMBEDDINGS_H_
#define KGQA_EMBEDDINGS_H_

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgqa {

// Cosine of two equal-length vectors; 0 when either has zero norm.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

// Pre-trained word vectors keyed by lowercase token.
class WordVectorStore {
 public:
  explicit WordVectorStore(int dim = 1);

  // Text format: a token followed by `dim` numbers per line. The first line
  // fixes the dimension. Duplicate tokens keep their first vector.
  static WordVectorStore Load(const std::string &path);
  static WordVectorStore Parse(std::istream &in, const std::string &source);

  // Returns false (and keeps the old vector) for a duplicate token. Throws
  // ContractViolation on a dimension mismatch.
  bool Add(std::string_view token, std::vector<double> vector);

  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }

  // nullptr for out-of-vocabulary tokens. Lookup is case-insensitive.
  const std::vector<double> *Find(std::string_view token) const;

  // 0 for out-of-vocabulary tokens or zero vectors.
  double Cosine(std::string_view w1, std::string_view w2) const;

  // Mean vector of the in-vocabulary words of `text`; zeros when none.
  std::vector<double> SentenceVector(std::string_view text) const;

 private:
  int dim_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

}  // namespace kgqa

#endif  // KGQA_EMBEDDINGS_H_
