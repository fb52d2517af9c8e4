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

#ifndef PSEUDOMAT_COMB_MOMENTS_HPP
#define PSEUDOMAT_COMB_MOMENTS_HPP

#include <vector>

#include "pseudomat/partitions.hpp"
#include "pseudomat/rational.hpp"

namespace pseudomat {

enum class ShapeKind { Square, LowerTriangular, Diagonal, Custom };

/// The index set J of an r x r array; always contains the diagonal.
class ArrayShape {
 public:
  static ArrayShape square(int r);
  /// J = {(p, q) : q <= p}.
  static ArrayShape lower_triangular(int r);
  static ArrayShape diagonal(int r);
  /// Throws ArgumentError if a pair is out of range or the diagonal is missing.
  static ArrayShape custom(int r, const std::vector<Label>& pairs);

  int r() const { return r_; }
  ShapeKind kind() const { return kind_; }
  bool contains(int p, int q) const;
  /// Pairs of J in row-major order.
  std::vector<Label> pairs() const;

 private:
  ArrayShape(int r, ShapeKind kind);
  int r_;
  ShapeKind kind_;
  std::vector<char> mask_;
};

/// Block variance parameters U, dimension weights D and B = DU
/// (b_{p,q} = d_p u_{p,q}), restricted to a shape.
class MomentMatrix {
 public:
  /// `u` is row-major r x r. Throws ArgumentError unless all u >= 0,
  /// all d >= 0 and sum(d) == 1 exactly.
  MomentMatrix(std::vector<Rational> u, std::vector<Rational> d, ArrayShape shape);

  /// Equal weights d_q = 1/r.
  static MomentMatrix with_equal_weights(std::vector<Rational> u, ArrayShape shape);

  int r() const { return shape_.r(); }
  const ArrayShape& shape() const { return shape_; }
  const Rational& u(int p, int q) const { return u_[index(p, q)]; }
  const Rational& d(int q) const { return d_.at(static_cast<std::size_t>(q - 1)); }
  const std::vector<Rational>& weights() const { return d_; }
  /// b_{p,q}, or 0 when (p, q) lies outside J.
  const Rational& b(int p, int q) const { return b_[index(p, q)]; }
  /// Entrywise square root of B.
  double alpha(int p, int q) const { return alpha_[index(p, q)]; }
  bool b_symmetric() const;
  bool u_symmetric() const;

 private:
  std::size_t index(int p, int q) const;
  ArrayShape shape_;
  std::vector<Rational> u_;
  std::vector<Rational> d_;
  std::vector<Rational> b_;
  std::vector<double> alpha_;
};

/// Labels of a product of blocks S_{p,q} (ordered) or symmetric blocks
/// (sets); same representation as an adapted-tuple candidate.
using BlockLabelWord = LabelTuple;

/// Product over blocks of b_{own, outer}; covering blocks use b_{own, j}
/// for j in [r] and b_{own, own} for j = 0. Throws ArgumentError on colors
/// outside [r] or when the coloring's imaginary color differs from j.
Rational b_value(const Coloring& coloring, const MomentMatrix& params, int j);

/// Sum of b_value over all colorings of the partition.
Rational b_sum(const PairPartition& partition, const MomentMatrix& params, int j);

/// Sum of b_sum over NC^2_m; zero for odd m. j = 0 is the vacuum variant.
Rational limit_moment(int m, const MomentMatrix& params, int j, int cap = kDefaultPartitionCap);

/// sum_k d_k limit_moment(m, B, k).
Rational weighted_limit_moment(int m, const MomentMatrix& params, int cap = kDefaultPartitionCap);

/// Mixed moment of ordered blocks under the j-th partial state (j = 0:
/// vacuum). Sums b_value over partitions adapted to the word whose induced
/// coloring reproduces every label; zero when j in [r] differs from q_m.
Rational mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params, int j,
                            int cap = kDefaultPartitionCap);

Rational weighted_mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params,
                                     int cap = kDefaultPartitionCap);

/// Mixed moment of symmetric blocks with imaginary color j in [r]: sums
/// b_value over symmetric-adapted partitions and those admissible colorings
/// whose (own, outer) color sets reproduce every label set.
Rational symmetric_mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params, int j,
                                      int cap = kDefaultPartitionCap);

Rational weighted_symmetric_mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params,
                                               int cap = kDefaultPartitionCap);

}  // namespace pseudomat

#endif  // PSEUDOMAT_COMB_MOMENTS_HPP
