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

// Independent reference computations shared by the unit tests. Nothing here
// calls into the library's enumeration or moment code.

#ifndef PSEUDOMAT_TESTS_ORACLES_HPP
#define PSEUDOMAT_TESTS_ORACLES_HPP

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "pseudomat/comb_moments.hpp"

namespace oracle {

using pseudomat::Rational;
using Pairing = std::vector<std::pair<int, int>>;

// Every perfect matching of [m] (crossings included), by pairing the
// smallest free point with each other free point in turn.
inline std::vector<Pairing> all_pairings(int m) {
  std::vector<Pairing> out;
  std::vector<char> used(static_cast<std::size_t>(m + 1), 0);
  Pairing cur;
  std::function<void()> rec = [&] {
    int a = 1;
    while (a <= m && used[a]) ++a;
    if (a > m) {
      out.push_back(cur);
      return;
    }
    used[a] = 1;
    for (int b = a + 1; b <= m; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      cur.push_back({a, b});
      rec();
      cur.pop_back();
      used[b] = 0;
    }
    used[a] = 0;
  };
  if (m % 2 == 0) rec();
  return out;
}

inline bool crossing(const Pairing& p) {
  for (auto [a, b] : p)
    for (auto [c, d] : p)
      if (a < c && c < b && b < d) return true;
  return false;
}

inline std::vector<Pairing> noncrossing_pairings(int m) {
  std::vector<Pairing> out;
  for (auto& p : all_pairings(m))
    if (!crossing(p)) out.push_back(p);
  return out;
}

// Index of the innermost block strictly enclosing block k, or -1.
inline int enclosing(const Pairing& p, std::size_t k) {
  int best = -1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == k) continue;
    if (p[i].first < p[k].first && p[k].second < p[i].second) {
      if (best < 0 || p[i].first > p[static_cast<std::size_t>(best)].first) best = static_cast<int>(i);
    }
  }
  return best;
}

// Colored product straight from the three rules; `b` is row-major with
// zeros outside the shape.
inline Rational colored_product(const Pairing& p, const std::vector<int>& colors, int r,
                                const std::vector<Rational>& b, int j) {
  Rational prod = 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    int own = colors[k];
    int e = enclosing(p, k);
    int other = e >= 0 ? colors[static_cast<std::size_t>(e)] : (j == 0 ? own : j);
    prod *= b[static_cast<std::size_t>((own - 1) * r + other - 1)];
  }
  return prod;
}

// Sum over all r^(m/2) colorings by plain odometer.
inline Rational colored_sum(const Pairing& p, int r, const std::vector<Rational>& b, int j) {
  std::vector<int> colors(p.size(), 1);
  Rational total = 0;
  while (true) {
    total += colored_product(p, colors, r, b, j);
    std::size_t k = 0;
    while (k < colors.size() && colors[k] == r) colors[k++] = 1;
    if (k == colors.size()) break;
    ++colors[k];
  }
  return total;
}

inline std::vector<Rational> b_matrix(const pseudomat::MomentMatrix& mm) {
  std::vector<Rational> b;
  for (int p = 1; p <= mm.r(); ++p)
    for (int q = 1; q <= mm.r(); ++q) b.push_back(mm.b(p, q));
  return b;
}

// Sum over non-crossing pairings of colored_sum.
inline Rational moment(int m, const pseudomat::MomentMatrix& mm, int j) {
  auto b = b_matrix(mm);
  Rational total = 0;
  for (auto& p : noncrossing_pairings(m)) total += colored_sum(p, mm.r(), b, j);
  return total;
}

// Random rationals with small denominators: u in [0, 2], weights positive
// summing to one.
inline pseudomat::MomentMatrix random_params(std::mt19937_64& rng, int r, pseudomat::ArrayShape shape,
                                             bool symmetric_u = false) {
  std::uniform_int_distribution<int> num(0, 8);
  std::vector<Rational> u(static_cast<std::size_t>(r * r));
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      if (symmetric_u && q < p) {
        u[static_cast<std::size_t>(p * r + q)] = u[static_cast<std::size_t>(q * r + p)];
        continue;
      }
      u[static_cast<std::size_t>(p * r + q)] = Rational(num(rng), 4);
      u[static_cast<std::size_t>(p * r + q)].canonicalize();
    }
  std::uniform_int_distribution<int> w(1, 5);
  std::vector<Rational> d;
  Rational total = 0;
  for (int q = 0; q < r; ++q) {
    d.emplace_back(w(rng));
    total += d.back();
  }
  for (auto& x : d) {
    x /= total;
    x.canonicalize();
  }
  return pseudomat::MomentMatrix(u, d, shape);
}

inline double to_d(const Rational& q) { return q.get_d(); }

}  // namespace oracle

#endif  // PSEUDOMAT_TESTS_ORACLES_HPP
