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

#ifndef PSEUDOMAT_WORD_SYNTAX_HPP
#define PSEUDOMAT_WORD_SYNTAX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "pseudomat/comb_moments.hpp"
#include "pseudomat/fock.hpp"
#include "pseudomat/randmat.hpp"

namespace pseudomat {

/// "(p,q)(p,q)..." gives ordered labels, "{p,q}{p,q}..." symmetric ones.
/// Whitespace is ignored; mixing brackets is an error.
BlockLabelWord parse_word(std::string_view text);
std::string format_word(const BlockLabelWord& word);

/// "phi" (j = 0), "psi:j", or "psi" (weighted by D).
struct StateSpec {
  int j = 0;
  bool weighted = false;
  FockState fock(const MomentMatrix& params) const;
  std::string str() const;
};
StateSpec parse_state(std::string_view text);

/// "full" or "partial:q".
TraceMode parse_trace(std::string_view text);

/// "circular" or "real".
EntryModel parse_model(std::string_view text);

/// "square", "lower" (or "lower-triangular"), "diagonal".
ArrayShape parse_shape(std::string_view text, int r);

/// Comma-separated integers.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace pseudomat

#endif  // PSEUDOMAT_WORD_SYNTAX_HPP
