// Copyright 2026 The pseudomat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSEUDOMAT_ERRORS_HPP
#define PSEUDOMAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pseudomat {

/// Malformed or out-of-range input (bad label, color, shape, word length).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size cap (partition order, word length, Wick instance size)
/// would be exceeded.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// An operation was called on input that fails its documented precondition,
/// e.g. inducing a coloring from a tuple the partition is not adapted to.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pseudomat

#endif  // PSEUDOMAT_ERRORS_HPP
