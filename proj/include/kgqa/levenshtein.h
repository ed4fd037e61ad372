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

#ifndef KGQA_LEVENSHTEIN_H_
#define KGQA_LEVENSHTEIN_H_

#include <cstddef>
#include <string_view>

namespace kgqa {

// Edit distance with unit cost insertions, deletions and substitutions.
// Operates on bytes.
size_t Levenshtein(std::string_view a, std::string_view b);

// Same as Levenshtein() but gives up early. Returns the exact distance when
// it is at most `bound`, and some value greater than `bound` otherwise.
size_t BoundedLevenshtein(std::string_view a, std::string_view b, size_t bound);

}  // namespace kgqa

#endif  // KGQA_LEVENSHTEIN_H_
