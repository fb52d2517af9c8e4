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

#include "pseudomat/partitions.hpp"

#include <algorithm>
#include <string>

#include "pseudomat/errors.hpp"

namespace pseudomat {

PairPartition::PairPartition(int m, std::vector<LegPair> blocks) : m_(m), blocks_(std::move(blocks)) {
  if (m_ <= 0 || m_ % 2 != 0) throw ArgumentError("pair partition needs even positive m, got " + std::to_string(m_));
  if (blocks_.size() * 2 != static_cast<std::size_t>(m_)) {
    throw ArgumentError("pair partition of " + std::to_string(m_) + " legs needs " + std::to_string(m_ / 2) + " blocks");
  }
  for (auto& b : blocks_) {
    if (b.left > b.right) std::swap(b.left, b.right);
  }
  std::sort(blocks_.begin(), blocks_.end());

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  block_of_leg_.assign(static_cast<std::size_t>(m_) + 1, kUnset);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (int leg : {blocks_[i].left, blocks_[i].right}) {
      if (leg < 1 || leg > m_) throw ArgumentError("leg " + std::to_string(leg) + " outside [1, m]");
      if (block_of_leg_[leg] != kUnset) throw ArgumentError("leg " + std::to_string(leg) + " used twice");
      block_of_leg_[leg] = i;
    }
    if (blocks_[i].left == blocks_[i].right) throw ArgumentError("block with a single leg");
  }
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    for (std::size_t b = a + 1; b < blocks_.size(); ++b) {
      const auto& x = blocks_[a];
      const auto& y = blocks_[b];
      if (x.left < y.left && y.left < x.right && x.right < y.right) {
        throw ArgumentError("crossing blocks {" + std::to_string(x.left) + "," + std::to_string(x.right) + "} and {" +
                            std::to_string(y.left) + "," + std::to_string(y.right) + "}");
      }
    }
  }
  outer_.assign(blocks_.size(), std::nullopt);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (blocks_[j].left < blocks_[i].left && blocks_[i].right < blocks_[j].right) {
        // Innermost enclosing block has the largest left leg.
        if (!outer_[i] || blocks_[*outer_[i]].left < blocks_[j].left) outer_[i] = j;
      }
    }
  }
}

std::size_t PairPartition::block_of_leg(int leg) const {
  if (leg < 1 || leg > m_) throw ArgumentError("leg " + std::to_string(leg) + " outside [1, m]");
  return block_of_leg_[leg];
}

bool PairPartition::is_left_leg(int leg) const { return blocks_[block_of_leg(leg)].left == leg; }

std::vector<int> PairPartition::left_legs() const {
  std::vector<int> out;
  for (const auto& b : blocks_) out.push_back(b.left);
  return out;
}

std::vector<int> PairPartition::right_legs() const {
  std::vector<int> out;
  for (const auto& b : blocks_) out.push_back(b.right);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> PairPartition::outer(std::size_t index) const { return outer_.at(index); }

std::uint64_t catalan(int s) {
  std::uint64_t c = 1;
  for (int k = 0; k < s; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

namespace {

// Pairs legs [first, last] non-crossingly; `todo` holds the outer ranges still
// waiting to be paired once the current one is exhausted.
void pair_range(int first, int last, std::vector<LegPair>& current, std::vector<std::vector<LegPair>>& out,
                std::vector<std::pair<int, int>>& todo) {
  if (first > last) {
    if (todo.empty()) {
      out.push_back(current);
      return;
    }
    auto [a, b] = todo.back();
    todo.pop_back();
    pair_range(a, b, current, out, todo);
    todo.emplace_back(a, b);
    return;
  }
  for (int partner = first + 1; partner <= last; partner += 2) {
    current.push_back({first, partner});
    todo.emplace_back(partner + 1, last);
    pair_range(first + 1, partner - 1, current, out, todo);
    todo.pop_back();
    current.pop_back();
  }
}

}  // namespace

std::vector<PairPartition> enumerate_pair_partitions(int m, int cap) {
  if (m <= 0) throw ArgumentError("enumerate_pair_partitions needs m >= 2, got " + std::to_string(m));
  if (m % 2 != 0) return {};
  if (m > cap) {
    throw CapacityError("m = " + std::to_string(m) + " exceeds the partition cap " + std::to_string(cap));
  }
  std::vector<std::vector<LegPair>> raw;
  std::vector<LegPair> current;
  std::vector<std::pair<int, int>> todo;
  pair_range(1, m, current, raw, todo);

  std::vector<PairPartition> out;
  out.reserve(raw.size());
  for (auto& blocks : raw) out.emplace_back(m, std::move(blocks));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> nearest_outer(const PairPartition& partition, std::size_t block_index) {
  if (block_index >= partition.size()) {
    throw ArgumentError("block index " + std::to_string(block_index) + " out of range");
  }
  return partition.outer(block_index);
}

int Coloring::outer_color(std::size_t block) const {
  if (auto o = partition.outer(block)) return block_colors.at(*o);
  return imaginary_color;
}

std::vector<Coloring> enumerate_colorings(const PairPartition& partition, int r, int imaginary) {
  if (r < 1) throw ArgumentError("number of colors must be positive");
  if (imaginary < 0 || imaginary > r) {
    throw ArgumentError("imaginary color " + std::to_string(imaginary) + " outside [0, r]");
  }
  const std::size_t k = partition.size();
  std::vector<Coloring> out;
  std::vector<int> colors(k, 1);
  while (true) {
    out.push_back(Coloring{partition, colors, imaginary});
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (colors[pos] < r) {
        ++colors[pos];
        break;
      }
      colors[pos] = 1;
      if (pos == 0) return out;
    }
    if (k == 0) return out;
  }
}

namespace {

void check_length(const PairPartition& partition, const LabelTuple& tuple) {
  if (tuple.entries.size() != static_cast<std::size_t>(partition.m())) {
    throw ArgumentError("label tuple of length " + std::to_string(tuple.entries.size()) + " does not match m = " +
                        std::to_string(partition.m()));
  }
}

const Label& at_leg(const LabelTuple& tuple, int leg) { return tuple.entries[static_cast<std::size_t>(leg - 1)]; }

}  // namespace

bool is_adapted(const PairPartition& partition, const LabelTuple& tuple) {
  check_length(partition, tuple);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto& blk = partition.block(b);
    const Label& left = at_leg(tuple, blk.left);
    const Label& right = at_leg(tuple, blk.right);
    if (tuple.symmetric ? !left.same_set(right) : left != right) return false;
    auto o = partition.outer(b);
    if (!o) continue;
    const Label& outer = at_leg(tuple, partition.block(*o).left);
    if (tuple.symmetric ? !right.meets(outer) : right.q != outer.p) return false;
  }
  return true;
}

Coloring induced_coloring(const PairPartition& partition, const LabelTuple& tuple) {
  if (tuple.symmetric) throw PreconditionError("induced_coloring needs an ordered tuple; use admissible_colorings");
  if (!is_adapted(partition, tuple)) throw PreconditionError("partition is not adapted to the tuple");
  std::vector<int> colors(partition.size());
  for (std::size_t b = 0; b < partition.size(); ++b) colors[b] = at_leg(tuple, partition.block(b).left).p;
  return Coloring{partition, std::move(colors), tuple.entries.back().q};
}

std::vector<Coloring> admissible_colorings(const PairPartition& partition, const LabelTuple& tuple) {
  if (!tuple.symmetric) throw PreconditionError("admissible_colorings needs a symmetric tuple");
  if (!is_adapted(partition, tuple)) throw PreconditionError("partition is not adapted to the tuple");
  const std::size_t k = partition.size();
  std::vector<Coloring> out;
  // Bit b < k picks p or q of the block's right leg; bit k picks the imaginary color.
  for (std::uint32_t mask = 0; mask < (1u << (k + 1)); ++mask) {
    std::vector<int> colors(k);
    for (std::size_t b = 0; b < k; ++b) {
      const Label& l = at_leg(tuple, partition.block(b).right);
      colors[b] = (mask >> b) & 1u ? l.q : l.p;
    }
    const Label& last = tuple.entries.back();
    int imaginary = (mask >> k) & 1u ? last.q : last.p;
    out.push_back(Coloring{partition, std::move(colors), imaginary});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LabelTuple tuple_from_coloring(const Coloring& coloring) {
  const auto& partition = coloring.partition;
  LabelTuple tuple;
  tuple.entries.resize(static_cast<std::size_t>(partition.m()));
  for (std::size_t b = 0; b < partition.size(); ++b) {
    int own = coloring.block_colors.at(b);
    int outer = coloring.outer_color(b);
    if (outer == 0) outer = own;
    Label l{own, outer};
    tuple.entries[static_cast<std::size_t>(partition.block(b).left - 1)] = l;
    tuple.entries[static_cast<std::size_t>(partition.block(b).right - 1)] = l;
  }
  return tuple;
}

bool is_label_consistent(const Coloring& coloring, const LabelTuple& tuple) {
  check_length(coloring.partition, tuple);
  for (std::size_t b = 0; b < coloring.partition.size(); ++b) {
    int own = coloring.block_colors.at(b);
    int outer = coloring.outer_color(b);
    if (outer == 0) outer = own;
    Label expected{own, outer};
    const auto& blk = coloring.partition.block(b);
    for (int leg : {blk.left, blk.right}) {
      const Label& l = at_leg(tuple, leg);
      if (tuple.symmetric ? !l.same_set(expected) : l != expected) return false;
    }
  }
  return true;
}

}  // namespace pseudomat
