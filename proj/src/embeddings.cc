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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kgqa/errors.h"
#include "kgqa/text.h"

namespace kgqa {

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractViolation("cosine of vectors with different lengths");
  }
  double dot = 0, norm_a = 0, norm_b = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  if (norm_a == 0 || norm_b == 0) return 0;
  double cosine = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
  return std::clamp(cosine, -1.0, 1.0);
}

WordVectorStore::WordVectorStore(int dim) : dim_(dim) {
  if (dim <= 0) throw ContractViolation("vector dimension must be positive");
}

WordVectorStore WordVectorStore::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return Parse(in, path);
}

WordVectorStore WordVectorStore::Parse(std::istream &in,
                                       const std::string &source) {
  std::string line;
  int line_no = 0;
  int dim = 0;
  WordVectorStore store;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::vector<double> vector;
    std::string number;
    while (fields >> number) {
      char *end = nullptr;
      double value = std::strtod(number.c_str(), &end);
      if (end != number.c_str() + number.size()) {
        throw LoadError(source, line_no, "bad number '" + number + "'");
      }
      vector.push_back(value);
    }
    if (dim == 0) {
      if (vector.empty()) throw LoadError(source, line_no, "no vector values");
      dim = static_cast<int>(vector.size());
      store = WordVectorStore(dim);
    } else if (static_cast<int>(vector.size()) != dim) {
      throw LoadError(source, line_no,
                      "expected " + std::to_string(dim) + " values, got " +
                          std::to_string(vector.size()));
    }
    store.Add(token, std::move(vector));
  }
  if (dim == 0) throw LoadError(source + ": no vectors, dimension undefined");
  return store;
}

bool WordVectorStore::Add(std::string_view token, std::vector<double> vector) {
  if (static_cast<int>(vector.size()) != dim_) {
    throw ContractViolation("vector for '" + std::string(token) +
                            "' has the wrong dimension");
  }
  return vectors_.try_emplace(ToLower(token), std::move(vector)).second;
}

const std::vector<double> *WordVectorStore::Find(std::string_view token) const {
  auto it = vectors_.find(ToLower(token));
  return it == vectors_.end() ? nullptr : &it->second;
}

double WordVectorStore::Cosine(std::string_view w1, std::string_view w2) const {
  const std::vector<double> *a = Find(w1);
  const std::vector<double> *b = Find(w2);
  if (a == nullptr || b == nullptr) return 0;
  return CosineSimilarity(*a, *b);
}

std::vector<double> WordVectorStore::SentenceVector(
    std::string_view text) const {
  std::vector<double> sum(dim_, 0.0);
  int count = 0;
  // Summing in sorted order makes the result independent of word order.
  std::vector<std::string> words = Words(text);
  std::sort(words.begin(), words.end());
  for (const std::string &word : words) {
    const std::vector<double> *v = Find(word);
    if (v == nullptr) continue;
    for (int i = 0; i < dim_; ++i) sum[i] += (*v)[i];
    ++count;
  }
  if (count > 0) {
    for (double &x : sum) x /= count;
  }
  return sum;
}

}  // namespace kgqa
