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

#include <cmath>
#include <functional>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "pseudomat/errors.hpp"
#include "pseudomat/fock.hpp"

using namespace pseudomat;
using Catch::Approx;

namespace {

// alpha = (a, b, c, d) = (sqrt b11, sqrt b12, sqrt b21, sqrt b22).
MomentMatrix example_params() {
  return MomentMatrix({Rational(2, 3), Rational(2, 5), Rational(4, 7), Rational(6, 11)},
                      {Rational(1, 2), Rational(1, 2)}, ArrayShape::square(2));
}

FockWord word(std::vector<Letter> l) { return FockWord(std::move(l)); }

OperatorSpec op(OpKind k, int i, int j) { return OperatorSpec::labeled(k, i, j); }

// Every valid word of length <= len over [r].
std::vector<FockWord> all_words(int r, std::size_t len) {
  std::vector<FockWord> out{FockWord::vacuum()};
  std::vector<FockWord> frontier;
  for (int j = 1; j <= r; ++j) frontier.push_back(FockWord::diagonal(j));
  while (!frontier.empty() && frontier.front().length() <= len) {
    std::vector<FockWord> next;
    for (const auto& w : frontier) {
      out.push_back(w);
      for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
          if (w.can_prepend({i, j})) next.push_back(w.prepended({i, j}));
    }
    frontier = std::move(next);
  }
  return out;
}

bool same(const StateVector& a, const StateVector& b, double tol = 1e-12) {
  for (const auto& [w, c] : a.terms())
    if (std::abs(c - b.coefficient(w)) > tol) return false;
  for (const auto& [w, c] : b.terms())
    if (std::abs(c - a.coefficient(w)) > tol) return false;
  return true;
}

double moment_of(const std::vector<OperatorSpec>& ops, const FockState& s, const MomentMatrix& mm) {
  return moment(ops, s, mm);
}

}  // namespace

TEST_CASE("word validity") {
  CHECK(word_valid(std::vector<Letter>{{2, 1}, {1, 1}}));
  CHECK_FALSE(word_valid(std::vector<Letter>{{1, 2}}));
  CHECK_FALSE(word_valid(std::vector<Letter>{{1, 2}, {1, 1}}));
  CHECK(word_valid(std::vector<Letter>{}));
  CHECK(word_valid(std::vector<Letter>{{1, 1}, {1, 1}, {1, 1}}));
  CHECK(word_valid(std::vector<Letter>{{1, 2}, {2, 1}, {1, 1}}));
  CHECK_THROWS_AS(word({{1, 2}}), ArgumentError);
}

TEST_CASE("creation twice from the vacuum") {
  auto mm = example_params();
  double a = mm.alpha(1, 1), b = mm.alpha(1, 2), c = mm.alpha(2, 1), d = mm.alpha(2, 2);
  auto s = OperatorSpec::sum({OperatorSpec::create(1, 1), OperatorSpec::create(1, 2), OperatorSpec::create(2, 1),
                              OperatorSpec::create(2, 2)});
  auto v = apply(s, apply(s, StateVector::basis(FockWord::vacuum()), mm), mm);
  StateVector want;
  want.add(word({{1, 1}, {1, 1}}), a * a);
  want.add(word({{2, 1}, {1, 1}}), a * c);
  want.add(word({{1, 2}, {2, 2}}), b * d);
  want.add(word({{2, 2}, {2, 2}}), d * d);
  CHECK(same(v, want));

  CHECK(apply(OperatorSpec::annihilate(1, 2), StateVector::basis(FockWord::vacuum()), mm).empty());
}

TEST_CASE("truncated creation twice on e11") {
  auto mm = example_params();
  double a = mm.alpha(1, 1), b = mm.alpha(1, 2), c = mm.alpha(2, 1), d = mm.alpha(2, 2);
  std::vector<OperatorSpec> t;
  for (auto l : mm.shape().pairs()) t.push_back(op(OpKind::TruncCreate, l.p, l.q));
  auto s = OperatorSpec::sum(t);
  auto v = apply(s, apply(s, StateVector::basis(FockWord::diagonal(1)), mm), mm);
  StateVector want;
  want.add(word({{2, 2}, {2, 1}, {1, 1}}), c * d);
  want.add(word({{1, 2}, {2, 1}, {1, 1}}), c * b);
  want.add(word({{1, 1}, {1, 1}, {1, 1}}), a * a);
  want.add(word({{2, 1}, {1, 1}, {1, 1}}), a * c);
  CHECK(same(v, want));
  CHECK(apply(s, StateVector::basis(FockWord::vacuum()), mm).empty());
}

TEST_CASE("nested pairing contribution to the fourth vacuum moment") {
  auto mm = example_params();
  std::vector<OperatorSpec> cr, an;
  for (auto l : mm.shape().pairs()) {
    cr.push_back(OperatorSpec::create(l.p, l.q));
    an.push_back(OperatorSpec::annihilate(l.p, l.q));
  }
  auto C = OperatorSpec::sum(cr), A = OperatorSpec::sum(an);
  std::vector<OperatorSpec> ops = {A, A, C, C};
  double want = to_double(mm.b(1, 1) * mm.b(1, 1) + mm.b(1, 1) * mm.b(2, 1) + mm.b(2, 2) * mm.b(1, 2) +
                          mm.b(2, 2) * mm.b(2, 2));
  CHECK(moment_of(ops, FockState::vacuum(), mm) == Approx(want).epsilon(1e-12));
}

TEST_CASE("odd products vanish") {
  auto mm = example_params();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) CHECK(moment_of({OperatorSpec::gauss(i, j)}, FockState::vector(k), mm) == 0);
  CHECK(pseudomatrix_moment(3, mm, FockState::vacuum(), false) == 0);
  CHECK(pseudomatrix_moment(5, mm, FockState::vector(1), true) == 0);
}

TEST_CASE("second vacuum moment") {
  auto mm = example_params();
  CHECK(pseudomatrix_moment(2, mm, FockState::vacuum(), false) == Approx(to_double(mm.b(1, 1) + mm.b(2, 2))));
}

TEST_CASE("pseudomatrix moments equal the colored-partition sums") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 8; ++trial) {
    int r = 1 + trial % 3;
    auto shape = trial % 4 == 3 ? ArrayShape::lower_triangular(r) : ArrayShape::square(r);
    auto mm = oracle::random_params(rng, r, shape);
    for (int m = 1; m <= 8; ++m) {
      CHECK(pseudomatrix_moment(m, mm, FockState::vacuum(), false) ==
            Approx(oracle::to_d(limit_moment(m, mm, 0))).margin(1e-9));
      for (int k = 1; k <= r; ++k)
        CHECK(pseudomatrix_moment(m, mm, FockState::vector(k), true) ==
              Approx(oracle::to_d(limit_moment(m, mm, k))).margin(1e-9));
      CHECK(pseudomatrix_moment(m, mm, FockState::weighted(mm), true) ==
            Approx(oracle::to_d(weighted_limit_moment(m, mm))).margin(1e-9));
    }
  }
}

TEST_CASE("mixed truncated moments equal the adapted-partition sums") {
  std::mt19937_64 rng(202);
  auto mm = oracle::random_params(rng, 2, ArrayShape::square(2));
  auto pairs = mm.shape().pairs();
  for (int m = 1; m <= 6; ++m) {
    std::vector<Label> w(static_cast<std::size_t>(m));
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == w.size()) {
        std::vector<OperatorSpec> ops;
        for (const auto& l : w) ops.push_back(OperatorSpec::trunc_gauss(l.p, l.q));
        for (int q = 1; q <= 2; ++q)
          REQUIRE(moment(ops, FockState::vector(q), mm) ==
                  Approx(oracle::to_d(mixed_limit_moment(LabelTuple{w, false}, mm, q))).margin(1e-9));
        return;
      }
      for (const auto& l : pairs) {
        w[k] = l;
        rec(k + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("symmetrized moments equal the admissible-coloring sums") {
  std::mt19937_64 rng(303);
  auto mm = oracle::random_params(rng, 2, ArrayShape::square(2), true);
  const std::vector<Label> classes = {{1, 1}, {1, 2}, {2, 2}};
  for (int m = 2; m <= 6; m += 2) {
    std::vector<Label> w(static_cast<std::size_t>(m));
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == w.size()) {
        std::vector<OperatorSpec> ops;
        for (const auto& l : w) ops.push_back(OperatorSpec::sym_trunc_gauss(l.p, l.q));
        REQUIRE(moment(ops, FockState::weighted(mm), mm) ==
                Approx(oracle::to_d(weighted_symmetric_mixed_limit_moment(LabelTuple{w, true}, mm))).margin(1e-9));
        return;
      }
      for (const auto& l : classes) {
        w[k] = l;
        rec(k + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("second symmetrized moment picks up one orientation") {
  MomentMatrix mm({Rational(1), Rational(1, 2), Rational(1, 2), Rational(2)}, {Rational(1, 4), Rational(3, 4)},
                  ArrayShape::square(2));
  auto w = OperatorSpec::sym_trunc_gauss(1, 2);
  CHECK(moment_of({w, w}, FockState::vector(1), mm) == Approx(to_double(mm.b(2, 1))));
  CHECK(moment_of({w, w}, FockState::vector(2), mm) == Approx(to_double(mm.b(1, 2))));
}

TEST_CASE("diagonal semicircle marginals") {
  std::mt19937_64 rng(404);
  auto mm = oracle::random_params(rng, 3, ArrayShape::square(3));
  for (int j = 1; j <= 3; ++j) {
    double b = to_double(mm.b(j, j));
    for (int k = 1; k <= 4; ++k) {
      std::vector<OperatorSpec> ops(static_cast<std::size_t>(2 * k), OperatorSpec::gauss(j, j));
      CHECK(moment(ops, FockState::vacuum(), mm) ==
            Approx(std::pow(b, k) * static_cast<double>(catalan(k))).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetrized semicircle marginals") {
  std::mt19937_64 rng(505);
  // Symmetric B needs d_p u_pq = d_q u_qp; equal weights with symmetric U.
  auto base = oracle::random_params(rng, 3, ArrayShape::square(3), true);
  std::vector<Rational> u;
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) u.push_back(base.u(p, q));
  auto mm = MomentMatrix::with_equal_weights(u, ArrayShape::square(3));
  REQUIRE(mm.b_symmetric());
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      double b = to_double(mm.b(i, j));
      for (int k = 1; k <= 4; ++k) {
        std::vector<OperatorSpec> ops(static_cast<std::size_t>(2 * k), OperatorSpec::sym_trunc_gauss(i, j));
        CHECK(moment(ops, FockState::vector(j), mm) ==
              Approx(std::pow(b, k) * static_cast<double>(catalan(k))).margin(1e-12));
      }
    }
}

TEST_CASE("off-diagonal vector-state law is two-point at plus or minus alpha") {
  auto mm = example_params();
  for (int k = 1; k <= 3; ++k) {
    std::vector<OperatorSpec> z(static_cast<std::size_t>(2 * k), OperatorSpec::gauss(1, 2));
    std::vector<OperatorSpec> w(static_cast<std::size_t>(2 * k), OperatorSpec::trunc_gauss(1, 2));
    double b = to_double(mm.b(1, 2));
    CHECK(moment(z, FockState::vector(2), mm) == Approx(std::pow(b, k)).epsilon(1e-12));
    CHECK(moment(w, FockState::vector(2), mm) == Approx(std::pow(b, k)).epsilon(1e-12));
  }
}

TEST_CASE("creation-annihilation relations on all short words") {
  auto mm = example_params();
  auto words = all_words(2, 6);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      for (const auto& w : words) {
        auto v = StateVector::basis(w);
        auto lhs = apply(OperatorSpec::annihilate(i, j), apply(OperatorSpec::create(i, j), v, mm), mm);
        StateVector rhs;
        auto proj = i == j ? OperatorSpec::unit(j, j) : op(OpKind::RProj, i, j);
        rhs.add(apply(proj, v, mm), to_double(mm.b(i, j)));
        CHECK(same(lhs, rhs));
        if (i != j) {
          auto cc = apply(OperatorSpec::create(i, j), apply(OperatorSpec::create(i, j), v, mm), mm);
          CHECK(cc.empty());
        }
      }
    }
}

TEST_CASE("projection algebra") {
  auto mm = example_params();
  auto words = all_words(2, 5);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      for (const auto& w : words) {
        auto v = StateVector::basis(w);
        auto s = apply(op(OpKind::SProj, i, j), v, mm);
        auto r = apply(op(OpKind::RProj, i, j), v, mm);
        StateVector sum = s;
        sum.add(r);
        CHECK(same(sum, apply(OperatorSpec::unit(i, j), v, mm)));
        CHECK(apply(op(OpKind::SProj, i, j), r, mm).empty());
        auto t = apply(op(OpKind::TruncUnit, i, j), v, mm);
        CHECK(same(t, apply(OperatorSpec::unit(i, j), apply(OperatorSpec::trunc_proj(), v, mm), mm)));
        bool hat = w.is_vacuum() ? i == j : (w.front().i == i || w.front().i == j);
        CHECK(apply(op(OpKind::SymUnit, i, j), v, mm).empty() == !hat);
        // The symmetric unit is 1_ij + 1_ji - 1_ij 1_ji.
        auto a = apply(OperatorSpec::unit(i, j), v, mm);
        auto b = apply(OperatorSpec::unit(j, i), v, mm);
        StateVector combo = a;
        combo.add(b);
        combo.add(apply(OperatorSpec::unit(i, j), b, mm), -1.0);
        CHECK(same(combo, apply(op(OpKind::SymUnit, i, j), v, mm)));
      }
    }
  for (const auto& w : words) {
    auto v = StateVector::basis(w);
    CHECK(apply(OperatorSpec::trunc_proj(), v, mm).empty() == w.is_vacuum());
    CHECK(apply(OperatorSpec::vacuum_proj(), v, mm).empty() == !w.is_vacuum());
  }
}

TEST_CASE("block units") {
  auto mm = MomentMatrix::with_equal_weights(std::vector<Rational>(16, Rational(1)), ArrayShape::square(4));
  auto words = all_words(4, 3);
  auto disjoint = OperatorSpec::block_unit({1, 2}, {3, 4});
  auto same_block = OperatorSpec::block_unit({3, 4}, {3, 4});
  for (const auto& w : words) {
    auto v = StateVector::basis(w);
    // Sum of s_ij over rows x cols plus s_jj + r_jj - p over cols.
    StateVector want;
    for (int i : {1, 2})
      for (int j : {3, 4}) want.add(apply(op(OpKind::SProj, i, j), v, mm));
    for (int j : {3, 4}) {
      want.add(apply(op(OpKind::SProj, j, j), v, mm));
      want.add(apply(op(OpKind::RProj, j, j), v, mm));
      want.add(apply(OperatorSpec::vacuum_proj(), v, mm), -1.0);
    }
    CHECK(same(apply(disjoint, v, mm), want));

    StateVector want2;
    for (int j : {3, 4}) {
      want2.add(apply(op(OpKind::SProj, j, j), v, mm));
      want2.add(apply(op(OpKind::RProj, j, j), v, mm));
      want2.add(apply(OperatorSpec::vacuum_proj(), v, mm), -1.0);
    }
    want2.add(apply(OperatorSpec::vacuum_proj(), v, mm));
    CHECK(same(apply(same_block, v, mm), want2));
  }
  CHECK_THROWS_AS(OperatorSpec::block_unit({1, 2}, {2, 3}), ArgumentError);
  CHECK_THROWS_AS(OperatorSpec::block_unit({}, {2}), ArgumentError);
}

TEST_CASE("labels outside the shape are rejected") {
  MomentMatrix lt({1, 1, 1, 1}, {Rational(1, 2), Rational(1, 2)}, ArrayShape::lower_triangular(2));
  auto v = StateVector::basis(FockWord::diagonal(1));
  CHECK_THROWS_AS(apply(OperatorSpec::create(1, 2), v, lt), ArgumentError);
  CHECK_THROWS_AS(apply(OperatorSpec::gauss(3, 1), v, lt), ArgumentError);
  CHECK_NOTHROW(apply(OperatorSpec::sym_trunc_gauss(1, 2), v, lt));
  CHECK_THROWS_AS(moment({}, FockState::vacuum(), lt), ArgumentError);
  CHECK_THROWS_AS(moment(std::vector<OperatorSpec>{OperatorSpec::gauss(1, 1)}, FockState::vector(3), lt), ArgumentError);
}

TEST_CASE("word length cap") {
  auto mm = example_params();
  std::vector<OperatorSpec> ops(4, OperatorSpec::create(1, 1));
  CHECK_THROWS_AS(moment(ops, FockState::vacuum(), mm, {2}), CapacityError);
  CHECK(moment(ops, FockState::vacuum(), mm) == 0);
}

TEST_CASE("weighted state validation") {
  CHECK_THROWS_AS(FockState::weighted({0.5, 0.4}), ArgumentError);
  CHECK_THROWS_AS(FockState::weighted({1.5, -0.5}), ArgumentError);
  CHECK_NOTHROW(FockState::weighted({0.25, 0.75}));
}
