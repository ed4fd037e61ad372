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

#ifndef KGQA_ERRORS_H_
#define KGQA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace kgqa {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. The message carries the file name and line number.
class LoadError : public Error {
 public:
  LoadError(const std::string &source, int line, const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit LoadError(const std::string &what) : Error(what) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

// A pattern or catalog violates the tree/size/isomorphism invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A query graph has no isomorphic counterpart in the pattern catalog.
class NoPatternError : public Error {
 public:
  using Error::Error;
};

// No entity phrase could be linked to the knowledge graph.
class NoEntityError : public Error {
 public:
  using Error::Error;
};

// Pattern-guided extension ran out of candidate relations.
class ExtensionError : public Error {
 public:
  using Error::Error;
};

// An ordinal or comparative constraint has no numeric or date binding.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace kgqa

#endif  // KGQA_ERRORS_H_
