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

#ifndef PSEUDOMAT_FOCK_HPP
#define PSEUDOMAT_FOCK_HPP

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pseudomat/comb_moments.hpp"

namespace pseudomat {

/// One tensor factor e_{i,j} of a basis word.
struct Letter {
  int i = 0;
  int j = 0;
  auto operator<=>(const Letter&) const = default;
  bool diagonal() const { return i == j; }
};

/// Chain (j_k = i_{k+1}), no repeated off-diagonal neighbours, diagonal
/// innermost letter. The empty word (vacuum) is valid.
bool word_valid(std::span<const Letter> letters);

/// Basis vector of the matricially free-boolean Fock space. letters[0] is
/// the outermost (most recently created) factor; empty means the vacuum.
class FockWord {
 public:
  FockWord() = default;
  /// Throws ArgumentError for an invalid word.
  explicit FockWord(std::vector<Letter> letters);

  static FockWord vacuum() { return {}; }
  static FockWord diagonal(int j) { return FockWord({{j, j}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_vacuum() const { return letters_.empty(); }
  const Letter& front() const { return letters_.front(); }

  /// (i, j) prepended, if the result is a valid word.
  bool can_prepend(Letter l) const;
  FockWord prepended(Letter l) const;
  FockWord without_front() const;

  std::string str() const;

  auto operator<=>(const FockWord&) const = default;

 private:
  struct Unchecked {};
  FockWord(std::vector<Letter> letters, Unchecked) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Finite real combination of basis words; exact zeros are never stored.
class StateVector {
 public:
  StateVector() = default;
  static StateVector basis(FockWord w, double coeff = 1.0);

  void add(const FockWord& w, double coeff);
  void add(const StateVector& other, double scale = 1.0);
  double coefficient(const FockWord& w) const;
  double dot(const StateVector& other) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_length() const;
  const std::map<FockWord, double>& terms() const { return terms_; }

 private:
  std::map<FockWord, double> terms_;
};

enum class OpKind {
  Create,          // creation
  Annihilate,      // its adjoint
  Gauss,           // creation + annihilation
  TruncCreate,     // creation composed with the vacuum-killing projection
  TruncAnnihilate,
  TruncGauss,
  SymTruncGauss,   // omega_{i,j} + omega_{j,i} (omega_{j,j} on the diagonal)
  SymGauss,
  Unit,            // s_{i,j} + r_{i,j}
  SProj,           // words beginning with (i,j)
  RProj,           // words the creation operator can act on, besides SProj
  TruncUnit,
  SymUnit,         // words beginning with (i,k) or (j,k), plus vacuum if i == j
  SymTruncUnit,
  VacuumProj,
  TruncProj,       // kills the vacuum coefficient
  BlockUnit,       // projection for sums over rows x cols
  Sum,
};

struct OperatorSpec {
  OpKind kind = OpKind::Sum;
  int i = 0;
  int j = 0;
  std::vector<int> rows;  // BlockUnit row index set
  std::vector<int> cols;  // BlockUnit column index set
  std::vector<OperatorSpec> terms;

  static OperatorSpec labeled(OpKind kind, int i, int j) { return {kind, i, j, {}, {}, {}}; }
  static OperatorSpec create(int i, int j) { return labeled(OpKind::Create, i, j); }
  static OperatorSpec annihilate(int i, int j) { return labeled(OpKind::Annihilate, i, j); }
  static OperatorSpec gauss(int i, int j) { return labeled(OpKind::Gauss, i, j); }
  static OperatorSpec trunc_gauss(int i, int j) { return labeled(OpKind::TruncGauss, i, j); }
  static OperatorSpec sym_trunc_gauss(int i, int j) { return labeled(OpKind::SymTruncGauss, i, j); }
  static OperatorSpec unit(int i, int j) { return labeled(OpKind::Unit, i, j); }
  static OperatorSpec vacuum_proj() { return {OpKind::VacuumProj, 0, 0, {}, {}, {}}; }
  static OperatorSpec trunc_proj() { return {OpKind::TruncProj, 0, 0, {}, {}, {}}; }
  /// Rows and columns must be identical or disjoint.
  static OperatorSpec block_unit(std::vector<int> rows, std::vector<int> cols);
  static OperatorSpec sum(std::vector<OperatorSpec> terms) { return {OpKind::Sum, 0, 0, {}, {}, std::move(terms)}; }

  std::string str() const;
};

/// Sum of Gauss (or TruncGauss when truncated) over every pair of the shape.
OperatorSpec pseudomatrix_operator(const ArrayShape& shape, bool truncated);
/// Row sum over q of the p-th row restricted to the shape.
OperatorSpec row_sum_operator(int p, const ArrayShape& shape, bool truncated);
/// Sum over rows x cols of Gauss (or TruncGauss) entries inside the shape.
OperatorSpec block_sum_operator(const std::vector<int>& rows, const std::vector<int>& cols, const ArrayShape& shape,
                                bool truncated);

class FockState {
 public:
  enum class Kind { Vacuum, Vector, Weighted };

  static FockState vacuum() { return FockState(Kind::Vacuum, 0, {}); }
  /// Vector state at the one-letter word (j, j).
  static FockState vector(int j) { return FockState(Kind::Vector, j, {}); }
  /// sum_j weights[j-1] * vector(j); weights must be non-negative, sum to 1.
  static FockState weighted(std::vector<double> weights);
  static FockState weighted(const MomentMatrix& params);

  Kind kind() const { return kind_; }
  int index() const { return j_; }
  const std::vector<double>& weights() const { return weights_; }
  std::string str() const;

 private:
  FockState(Kind kind, int j, std::vector<double> weights) : kind_(kind), j_(j), weights_(std::move(weights)) {}
  Kind kind_;
  int j_;
  std::vector<double> weights_;
};

/// Throws CapacityError when the result holds a word longer than
/// max_word_length (0 disables the cap), ArgumentError on labels outside the
/// shape.
StateVector apply(const OperatorSpec& op, const StateVector& v, const MomentMatrix& params,
                  std::size_t max_word_length = 0);

/// op_1 (op_2 (... op_m(v))): the rightmost operator acts first.
StateVector apply_product(std::span<const OperatorSpec> ops, const StateVector& v, const MomentMatrix& params,
                          std::size_t max_word_length = 0);

struct MomentOptions {
  /// Longest intermediate word allowed; 0 means m + 2 for m operators.
  std::size_t max_word_length = 0;
};

/// <op_1 ... op_m xi, xi> for the state's vector xi (or the weighted sum of
/// such values). Throws ArgumentError for an empty product.
double moment(std::span<const OperatorSpec> ops, const FockState& state, const MomentMatrix& params,
              MomentOptions options = {});

/// m-th moment of the Gaussian pseudomatrix (or its truncation).
double pseudomatrix_moment(int m, const MomentMatrix& params, const FockState& state, bool truncated);

}  // namespace pseudomat

#endif  // PSEUDOMAT_FOCK_HPP
