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

#include "pseudomat/comb_moments.hpp"

#include <cmath>
#include <string>

#include "pseudomat/errors.hpp"

namespace pseudomat {

ArrayShape::ArrayShape(int r, ShapeKind kind) : r_(r), kind_(kind) {
  if (r < 1) throw ArgumentError("array shape needs r >= 1");
  mask_.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 0);
}

ArrayShape ArrayShape::square(int r) {
  ArrayShape s(r, ShapeKind::Square);
  std::fill(s.mask_.begin(), s.mask_.end(), 1);
  return s;
}

ArrayShape ArrayShape::lower_triangular(int r) {
  ArrayShape s(r, ShapeKind::LowerTriangular);
  for (int p = 1; p <= r; ++p)
    for (int q = 1; q <= p; ++q) s.mask_[static_cast<std::size_t>((p - 1) * r + (q - 1))] = 1;
  return s;
}

ArrayShape ArrayShape::diagonal(int r) {
  ArrayShape s(r, ShapeKind::Diagonal);
  for (int p = 1; p <= r; ++p) s.mask_[static_cast<std::size_t>((p - 1) * r + (p - 1))] = 1;
  return s;
}

ArrayShape ArrayShape::custom(int r, const std::vector<Label>& pairs) {
  ArrayShape s(r, ShapeKind::Custom);
  for (const auto& l : pairs) {
    if (l.p < 1 || l.p > r || l.q < 1 || l.q > r) {
      throw ArgumentError("shape pair (" + std::to_string(l.p) + "," + std::to_string(l.q) + ") outside [r]x[r]");
    }
    s.mask_[static_cast<std::size_t>((l.p - 1) * r + (l.q - 1))] = 1;
  }
  for (int p = 1; p <= r; ++p) {
    if (!s.contains(p, p)) throw ArgumentError("shape must contain the diagonal pair (" + std::to_string(p) + "," + std::to_string(p) + ")");
  }
  return s;
}

bool ArrayShape::contains(int p, int q) const {
  if (p < 1 || p > r_ || q < 1 || q > r_) return false;
  return mask_[static_cast<std::size_t>((p - 1) * r_ + (q - 1))] != 0;
}

std::vector<Label> ArrayShape::pairs() const {
  std::vector<Label> out;
  for (int p = 1; p <= r_; ++p)
    for (int q = 1; q <= r_; ++q)
      if (contains(p, q)) out.push_back({p, q});
  return out;
}

MomentMatrix::MomentMatrix(std::vector<Rational> u, std::vector<Rational> d, ArrayShape shape)
    : shape_(std::move(shape)), u_(std::move(u)), d_(std::move(d)) {
  const auto r = static_cast<std::size_t>(shape_.r());
  if (u_.size() != r * r) throw ArgumentError("U needs " + std::to_string(r * r) + " entries, got " + std::to_string(u_.size()));
  if (d_.size() != r) throw ArgumentError("D needs " + std::to_string(r) + " entries, got " + std::to_string(d_.size()));
  for (auto& x : u_) x.canonicalize();
  for (auto& x : d_) x.canonicalize();
  Rational total = 0;
  for (const auto& x : d_) {
    if (x < 0) throw ArgumentError("dimension weights must be non-negative");
    total += x;
  }
  if (total != 1) throw ArgumentError("dimension weights must sum to 1, got " + to_string(total));
  for (const auto& x : u_) {
    if (x < 0) throw ArgumentError("variance parameters must be non-negative");
  }
  b_.assign(r * r, Rational(0));
  alpha_.assign(r * r, 0.0);
  for (int p = 1; p <= shape_.r(); ++p) {
    for (int q = 1; q <= shape_.r(); ++q) {
      if (!shape_.contains(p, q)) continue;
      auto i = index(p, q);
      b_[i] = d_[static_cast<std::size_t>(p - 1)] * u_[i];
      alpha_[i] = std::sqrt(b_[i].get_d());
    }
  }
}

MomentMatrix MomentMatrix::with_equal_weights(std::vector<Rational> u, ArrayShape shape) {
  std::vector<Rational> d(static_cast<std::size_t>(shape.r()), Rational(1, shape.r()));
  return MomentMatrix(std::move(u), std::move(d), std::move(shape));
}

std::size_t MomentMatrix::index(int p, int q) const {
  const int r = shape_.r();
  if (p < 1 || p > r || q < 1 || q > r) {
    throw ArgumentError("index pair (" + std::to_string(p) + "," + std::to_string(q) + ") outside [r]x[r]");
  }
  return static_cast<std::size_t>((p - 1) * r + (q - 1));
}

bool MomentMatrix::b_symmetric() const {
  for (int p = 1; p <= r(); ++p)
    for (int q = p + 1; q <= r(); ++q)
      if (b(p, q) != b(q, p)) return false;
  return true;
}

bool MomentMatrix::u_symmetric() const {
  for (int p = 1; p <= r(); ++p)
    for (int q = p + 1; q <= r(); ++q)
      if (u(p, q) != u(q, p)) return false;
  return true;
}

namespace {

void check_color(int c, int r, const char* what) {
  if (c < 1 || c > r) throw ArgumentError(std::string(what) + " color " + std::to_string(c) + " outside [1, r]");
}

void check_state_index(int j, int r) {
  if (j < 0 || j > r) throw ArgumentError("state index " + std::to_string(j) + " outside [0, r]");
}

void check_word(const BlockLabelWord& word, int r) {
  if (word.entries.empty()) throw ArgumentError("block label word must be non-empty");
  for (const auto& l : word.entries) {
    check_color(l.p, r, "label");
    check_color(l.q, r, "label");
  }
}

}  // namespace

Rational b_value(const Coloring& coloring, const MomentMatrix& params, int j) {
  check_state_index(j, params.r());
  if (coloring.imaginary_color != j) {
    throw ArgumentError("coloring has imaginary color " + std::to_string(coloring.imaginary_color) +
                        " but j = " + std::to_string(j));
  }
  Rational value = 1;
  for (std::size_t b = 0; b < coloring.partition.size(); ++b) {
    int own = coloring.block_colors.at(b);
    check_color(own, params.r(), "block");
    auto outer = coloring.partition.outer(b);
    int other = outer ? coloring.block_colors.at(*outer) : (j == 0 ? own : j);
    value *= params.b(own, other);
  }
  return value;
}

Rational b_sum(const PairPartition& partition, const MomentMatrix& params, int j) {
  check_state_index(j, params.r());
  const int r = params.r();
  const std::size_t k = partition.size();
  // weight[b][c] = product over children of block b of their subtree sums,
  // given that b has color c. Children have larger left legs, so a reverse
  // sweep sees every child before its parent.
  std::vector<std::vector<Rational>> weight(k, std::vector<Rational>(static_cast<std::size_t>(r) + 1, Rational(1)));
  Rational total = 1;
  for (std::size_t idx = k; idx-- > 0;) {
    auto outer = partition.outer(idx);
    if (outer) {
      for (int oc = 1; oc <= r; ++oc) {
        Rational s = 0;
        for (int c = 1; c <= r; ++c) s += params.b(c, oc) * weight[idx][c];
        weight[*outer][oc] *= s;
      }
    } else {
      Rational s = 0;
      for (int c = 1; c <= r; ++c) s += params.b(c, j == 0 ? c : j) * weight[idx][c];
      total *= s;
    }
  }
  return total;
}

Rational limit_moment(int m, const MomentMatrix& params, int j, int cap) {
  check_state_index(j, params.r());
  if (m < 1) throw ArgumentError("moment order must be positive");
  if (m % 2 != 0) return 0;
  Rational total = 0;
  for (const auto& partition : enumerate_pair_partitions(m, cap)) total += b_sum(partition, params, j);
  return total;
}

Rational weighted_limit_moment(int m, const MomentMatrix& params, int cap) {
  Rational total = 0;
  for (int k = 1; k <= params.r(); ++k) total += params.d(k) * limit_moment(m, params, k, cap);
  return total;
}

Rational mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params, int j, int cap) {
  if (word.symmetric) throw ArgumentError("mixed_limit_moment needs ordered labels");
  check_word(word, params.r());
  check_state_index(j, params.r());
  const int m = static_cast<int>(word.entries.size());
  if (m % 2 != 0) return 0;
  if (j != 0 && word.entries.back().q != j) return 0;
  Rational total = 0;
  for (const auto& partition : enumerate_pair_partitions(m, cap)) {
    if (!is_adapted(partition, word)) continue;
    Coloring coloring = induced_coloring(partition, word);
    coloring.imaginary_color = j;
    if (!is_label_consistent(coloring, word)) continue;
    total += b_value(coloring, params, j);
  }
  return total;
}

Rational weighted_mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params, int cap) {
  Rational total = 0;
  for (int q = 1; q <= params.r(); ++q) total += params.d(q) * mixed_limit_moment(word, params, q, cap);
  return total;
}

Rational symmetric_mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params, int j, int cap) {
  if (!word.symmetric) throw ArgumentError("symmetric_mixed_limit_moment needs set labels");
  check_word(word, params.r());
  check_color(j, params.r(), "imaginary");
  const int m = static_cast<int>(word.entries.size());
  if (m % 2 != 0) return 0;
  Rational total = 0;
  for (const auto& partition : enumerate_pair_partitions(m, cap)) {
    if (!is_adapted(partition, word)) continue;
    for (const auto& coloring : admissible_colorings(partition, word)) {
      if (coloring.imaginary_color != j) continue;
      if (!is_label_consistent(coloring, word)) continue;
      total += b_value(coloring, params, j);
    }
  }
  return total;
}

Rational weighted_symmetric_mixed_limit_moment(const BlockLabelWord& word, const MomentMatrix& params, int cap) {
  Rational total = 0;
  for (int q = 1; q <= params.r(); ++q) total += params.d(q) * symmetric_mixed_limit_moment(word, params, q, cap);
  return total;
}

}  // namespace pseudomat
