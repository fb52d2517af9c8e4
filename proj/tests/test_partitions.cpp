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

#include <algorithm>
#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "pseudomat/errors.hpp"
#include "pseudomat/partitions.hpp"

using namespace pseudomat;

namespace {

PairPartition fig1() { return PairPartition(6, {{1, 6}, {2, 3}, {4, 5}}); }

LabelTuple ordered(std::vector<Label> e) { return {std::move(e), false}; }
LabelTuple sets(std::vector<Label> e) { return {std::move(e), true}; }

oracle::Pairing as_pairing(const PairPartition& p) {
  oracle::Pairing out;
  for (const auto& b : p.blocks()) out.push_back({b.left, b.right});
  return out;
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK_NOTHROW(fig1());
  CHECK_THROWS_AS(PairPartition(4, {{1, 3}, {2, 4}}), ArgumentError);
  CHECK_THROWS_AS(PairPartition(4, {{1, 2}, {2, 4}}), ArgumentError);
  CHECK_THROWS_AS(PairPartition(3, {{1, 2}}), ArgumentError);
  CHECK_THROWS_AS(PairPartition(4, {{1, 2}}), ArgumentError);
}

TEST_CASE("enumeration matches a brute-force filter of all matchings") {
  for (int m = 2; m <= 12; m += 2) {
    auto got = enumerate_pair_partitions(m);
    auto want = oracle::noncrossing_pairings(m);
    REQUIRE(got.size() == want.size());
    std::set<oracle::Pairing> a, b(want.begin(), want.end());
    for (const auto& p : got) a.insert(as_pairing(p));
    CHECK(a == b);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
  }
}

TEST_CASE("enumeration counts are Catalan numbers") {
  const std::uint64_t expect[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int s = 1; s <= 8; ++s) {
    CHECK(catalan(s) == expect[s]);
    CHECK(enumerate_pair_partitions(2 * s).size() == expect[s]);
  }
  CHECK(enumerate_pair_partitions(2).front() == PairPartition(2, {{1, 2}}));
  auto six = enumerate_pair_partitions(6);
  CHECK(std::find(six.begin(), six.end(), fig1()) != six.end());
}

TEST_CASE("enumeration edge cases") {
  CHECK(enumerate_pair_partitions(5).empty());
  CHECK_THROWS_AS(enumerate_pair_partitions(0), ArgumentError);
  CHECK_THROWS_AS(enumerate_pair_partitions(18), CapacityError);
  CHECK(enumerate_pair_partitions(18, 18).size() == 4862);
}

TEST_CASE("nearest outer blocks of the six-leg example") {
  auto p = fig1();
  CHECK(nearest_outer(p, 1) == std::optional<std::size_t>(0));
  // {4,5} sits inside {1,6} only; blocks are indexed by left leg.
  CHECK(nearest_outer(p, 2) == std::optional<std::size_t>(0));
  CHECK_FALSE(nearest_outer(p, 0).has_value());
  CHECK_THROWS_AS(nearest_outer(p, 3), ArgumentError);

  PairPartition nested(6, {{1, 6}, {2, 5}, {3, 4}});
  CHECK(nearest_outer(nested, 2) == std::optional<std::size_t>(1));
  CHECK(nearest_outer(nested, 1) == std::optional<std::size_t>(0));
}

TEST_CASE("nearest outer agrees with the enclosing-block oracle and forms a forest") {
  for (int m = 2; m <= 10; m += 2) {
    for (const auto& p : enumerate_pair_partitions(m)) {
      auto raw = as_pairing(p);
      for (std::size_t k = 0; k < p.size(); ++k) {
        int e = oracle::enclosing(raw, k);
        auto o = nearest_outer(p, k);
        CHECK(o.has_value() == (e >= 0));
        if (o) CHECK(static_cast<int>(*o) == e);
        std::size_t cur = k;
        std::size_t steps = 0;
        while (auto up = p.outer(cur)) {
          cur = *up;
          REQUIRE(++steps <= p.size());
        }
        CHECK(p.is_covering(cur));
      }
      if (p.block(0).right == m) CHECK(p.is_covering(0));
    }
  }
}

TEST_CASE("legs split evenly into left and right") {
  for (const auto& p : enumerate_pair_partitions(8)) {
    auto l = p.left_legs();
    auto r = p.right_legs();
    CHECK(l.size() == 4);
    CHECK(r.size() == 4);
    std::set<int> all(l.begin(), l.end());
    all.insert(r.begin(), r.end());
    CHECK(all.size() == 8);
    for (int leg : l) CHECK(p.is_left_leg(leg));
  }
}

TEST_CASE("coloring enumeration") {
  PairPartition one(2, {{1, 2}});
  CHECK(enumerate_colorings(one, 2, 0).size() == 2);
  auto c = enumerate_colorings(fig1(), 3, 1);
  CHECK(c.size() == 27);
  CHECK(std::set<Coloring>(c.begin(), c.end()).size() == 27);
  for (const auto& col : c) CHECK(col.imaginary_color == 1);
  CHECK(enumerate_colorings(PairPartition(4, {{1, 2}, {3, 4}}), 1, 1).size() == 1);
  CHECK_THROWS_AS(enumerate_colorings(one, 0, 0), ArgumentError);
  CHECK_THROWS_AS(enumerate_colorings(one, 2, 3), ArgumentError);
}

TEST_CASE("ordered adaptedness of the six-leg example") {
  // l = 1, i = 2, k = 3, j = 4 in the four free colors.
  const int l = 1, i = 2, k = 3, j = 4;
  auto t = ordered({{l, j}, {i, l}, {i, l}, {k, l}, {k, l}, {l, j}});
  CHECK(is_adapted(fig1(), t));
  auto col = induced_coloring(fig1(), t);
  CHECK(col.block_colors == std::vector<int>{l, i, k});
  CHECK(col.imaginary_color == j);

  auto broken = t;
  broken.entries[3] = {k, i};
  broken.entries[4] = {k, i};
  CHECK_FALSE(is_adapted(fig1(), broken));
  CHECK_THROWS_AS(induced_coloring(fig1(), broken), PreconditionError);

  PairPartition one(2, {{1, 2}});
  CHECK_FALSE(is_adapted(one, ordered({{1, 2}, {2, 1}})));
  auto single = induced_coloring(one, ordered({{2, 1}, {2, 1}}));
  CHECK(single.block_colors == std::vector<int>{2});
  CHECK(single.imaginary_color == 1);
  CHECK_THROWS_AS(is_adapted(one, ordered({{1, 1}})), ArgumentError);
}

TEST_CASE("symmetric adaptedness and admissible colorings") {
  // Chain q_i = p_{i+1} with every set distinct: {1,2},{2,3},{2,3},{3,4},{3,4},{1,2}
  // after the block constraints force equal sets on each block.
  auto t = sets({{1, 2}, {2, 3}, {3, 2}, {3, 4}, {4, 3}, {2, 1}});
  CHECK_FALSE(is_adapted(fig1(), t));  // {3,4} misses {1,2}
  auto chain = sets({{1, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {2, 1}});
  CHECK(is_adapted(fig1(), chain));
  CHECK(admissible_colorings(fig1(), chain).size() == 16);
  CHECK_THROWS_AS(admissible_colorings(fig1(), t), PreconditionError);
  CHECK_THROWS_AS(induced_coloring(fig1(), chain), PreconditionError);

  PairPartition one(2, {{1, 2}});
  CHECK(admissible_colorings(one, sets({{1, 1}, {1, 1}})).size() == 1);
  CHECK_FALSE(is_adapted(PairPartition(2, {{1, 2}}), sets({{1, 1}, {2, 2}})));
}

TEST_CASE("symmetric adaptedness ignores orientation within entries") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> col(1, 3);
  std::bernoulli_distribution flip(0.5);
  for (int trial = 0; trial < 400; ++trial) {
    int m = 2 * (1 + trial % 3);
    auto parts = enumerate_pair_partitions(m);
    const auto& p = parts[static_cast<std::size_t>(trial) % parts.size()];
    LabelTuple t{{}, true};
    for (int a = 0; a < m; ++a) t.entries.push_back({col(rng), col(rng)});
    // Make block constraints hold half of the time so both branches are hit.
    if (trial % 2 == 0)
      for (const auto& b : p.blocks()) t.entries[b.right - 1] = t.entries[b.left - 1];
    auto swapped = t;
    for (auto& e : swapped.entries)
      if (flip(rng)) std::swap(e.p, e.q);
    CHECK(is_adapted(p, t) == is_adapted(p, swapped));
  }
}

TEST_CASE("induced coloring inverts tuple reconstruction") {
  for (int m = 2; m <= 8; m += 2) {
    for (const auto& p : enumerate_pair_partitions(m)) {
      for (int imag = 1; imag <= 2; ++imag) {
        for (const auto& c : enumerate_colorings(p, 2, imag)) {
          auto t = tuple_from_coloring(c);
          REQUIRE(is_adapted(p, t));
          CHECK(induced_coloring(p, t) == c);
          CHECK(is_label_consistent(c, t));
        }
      }
    }
  }
}

TEST_CASE("every adapted ordered tuple comes from a coloring") {
  // Exhaustive over r = 2, m = 4: adapted tuples are exactly the images of
  // colorings whose covering blocks do not need the imaginary color.
  const int m = 4;
  for (const auto& p : enumerate_pair_partitions(m)) {
    int count = 0;
    std::vector<Label> e(m);
    std::function<void(int)> rec = [&](int k) {
      if (k == m) {
        LabelTuple t{e, false};
        if (!is_adapted(p, t)) return;
        ++count;
        auto back = tuple_from_coloring(induced_coloring(p, t));
        for (int a = 0; a < m; ++a) {
          std::size_t blk = p.block_of_leg(a + 1);
          if (!p.is_covering(blk) || p.block(blk).right == m) CHECK(back.entries[a] == e[a]);
        }
        return;
      }
      for (int x = 1; x <= 2; ++x)
        for (int y = 1; y <= 2; ++y) {
          e[k] = {x, y};
          rec(k + 1);
        }
    };
    rec(0);
    CHECK(count > 0);
  }
}
