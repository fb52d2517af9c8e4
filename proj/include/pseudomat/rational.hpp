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

#ifndef PSEUDOMAT_RATIONAL_HPP
#define PSEUDOMAT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace pseudomat {

using Rational = mpq_class;

/// Parses "num/den", an integer, or a finite decimal ("0.25", "-1.5e-2")
/// into an exact rational. Decimals are read digit-by-digit, never through
/// a double. Throws ArgumentError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals.
std::vector<Rational> parse_rational_list(std::string_view text);

/// Canonical "num/den" (or "num" for integers).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace pseudomat

#endif  // PSEUDOMAT_RATIONAL_HPP
