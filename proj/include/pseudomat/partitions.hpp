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

#ifndef PSEUDOMAT_PARTITIONS_HPP
#define PSEUDOMAT_PARTITIONS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pseudomat {

inline constexpr int kDefaultPartitionCap = 16;

/// A block {left, right} of a pair partition; legs are 1-based.
struct LegPair {
  int left = 0;
  int right = 0;
  auto operator<=>(const LegPair&) const = default;
};

/// A non-crossing pair partition of [m]. Blocks are kept sorted by left leg,
/// so block index k (0-based) is the k-th block by increasing left leg.
class PairPartition {
 public:
  /// Validates that `blocks` pair every leg of [m] exactly once without
  /// crossings; throws ArgumentError otherwise.
  PairPartition(int m, std::vector<LegPair> blocks);

  int m() const { return m_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<LegPair>& blocks() const { return blocks_; }
  const LegPair& block(std::size_t index) const { return blocks_.at(index); }

  std::size_t block_of_leg(int leg) const;
  bool is_left_leg(int leg) const;
  std::vector<int> left_legs() const;
  std::vector<int> right_legs() const;

  /// Nearest outer block, or nullopt for a covering block.
  std::optional<std::size_t> outer(std::size_t index) const;
  bool is_covering(std::size_t index) const { return !outer(index).has_value(); }

  friend bool operator==(const PairPartition& a, const PairPartition& b) {
    return a.blocks_ == b.blocks_;
  }
  friend auto operator<=>(const PairPartition& a, const PairPartition& b) {
    return a.blocks_ <=> b.blocks_;
  }

 private:
  int m_;
  std::vector<LegPair> blocks_;
  std::vector<std::size_t> block_of_leg_;  // indexed by leg, slot 0 unused
  std::vector<std::optional<std::size_t>> outer_;
};

std::uint64_t catalan(int s);

/// All of NC^2_m in lexicographic order of the block list. Odd m yields an
/// empty list; m <= 0 throws ArgumentError; m > cap throws CapacityError.
std::vector<PairPartition> enumerate_pair_partitions(int m, int cap = kDefaultPartitionCap);

/// Throws ArgumentError when block_index is out of range.
std::optional<std::size_t> nearest_outer(const PairPartition& partition, std::size_t block_index);

/// Colors are 1-based; imaginary_color 0 means "no imaginary block" (vacuum).
struct Coloring {
  PairPartition partition;
  std::vector<int> block_colors;
  int imaginary_color = 0;

  int color_of_leg(int leg) const { return block_colors.at(partition.block_of_leg(leg)); }
  /// Color of the nearest outer block, falling back to the imaginary block.
  int outer_color(std::size_t block) const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend auto operator<=>(const Coloring& a, const Coloring& b) {
    if (auto c = a.partition <=> b.partition; c != 0) return c;
    if (auto c = a.block_colors <=> b.block_colors; c != 0) return c;
    return a.imaginary_color <=> b.imaginary_color;
  }
};

/// All r^(m/2) block colorings with the given imaginary color, in odometer
/// order (last block fastest).
std::vector<Coloring> enumerate_colorings(const PairPartition& partition, int r, int imaginary);

/// An index pair (p, q) attached to one leg. In symmetric mode only the set
/// {p, q} matters.
struct Label {
  int p = 0;
  int q = 0;
  auto operator<=>(const Label&) const = default;

  bool same_set(const Label& o) const {
    return (p == o.p && q == o.q) || (p == o.q && q == o.p);
  }
  bool meets(const Label& o) const { return p == o.p || p == o.q || q == o.p || q == o.q; }
  bool contains(int c) const { return p == c || q == c; }
};

struct LabelTuple {
  std::vector<Label> entries;
  bool symmetric = false;
};

/// Adaptedness of a partition to ordered pairs or to two-element subsets.
/// Throws ArgumentError when the tuple length differs from m.
bool is_adapted(const PairPartition& partition, const LabelTuple& tuple);

/// The unique coloring of an ordered-adapted tuple: the block of left leg k
/// gets p_k, the imaginary block gets q_m. Throws PreconditionError when the
/// tuple is symmetric or not adapted.
Coloring induced_coloring(const PairPartition& partition, const LabelTuple& tuple);

/// Admissible colorings of a symmetric-adapted tuple: the block containing
/// right leg k takes p_k or q_k, the imaginary block takes p_m or q_m.
/// Sorted and deduplicated. Throws PreconditionError when not adapted.
std::vector<Coloring> admissible_colorings(const PairPartition& partition, const LabelTuple& tuple);

/// Reads the ordered tuple back off a coloring: p_k is the color of k's
/// block, q_k the color of its outer block (imaginary for covering blocks,
/// or the block's own color when the imaginary color is 0).
LabelTuple tuple_from_coloring(const Coloring& coloring);

/// True when every block's label agrees with (own color, outer color):
/// equal as ordered pairs, or as sets when the tuple is symmetric.
bool is_label_consistent(const Coloring& coloring, const LabelTuple& tuple);

}  // namespace pseudomat

#endif  // PSEUDOMAT_PARTITIONS_HPP
