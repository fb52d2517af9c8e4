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

#include <fmt/format.h>
#include <functional>
#include <numeric>

#include "pseudomat/errors.hpp"
#include "pseudomat/randmat.hpp"

namespace pseudomat {

namespace {

constexpr std::size_t kMaxRandomFactors = 8;
constexpr int kMaxWickDimension = 12;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

void pairings(const std::vector<int>& items, std::vector<std::pair<int, int>>& cur,
              std::vector<char>& used, const std::function<void()>& visit) {
  std::size_t first = 0;
  while (first < items.size() && used[first]) ++first;
  if (first == items.size()) {
    visit();
    return;
  }
  used[first] = 1;
  for (std::size_t k = first + 1; k < items.size(); ++k) {
    if (used[k]) continue;
    used[k] = 1;
    cur.push_back({items[first], items[k]});
    pairings(items, cur, used, visit);
    cur.pop_back();
    used[k] = 0;
  }
  used[first] = 0;
}

// Ways a pair of entries can be correlated. Conj: Y_{i_l, i_{l+1}} is the
// conjugate of Y_{i_k, i_{k+1}}; Same: the two entries coincide; Both: the
// inclusion-exclusion correction when both hold.
enum class Link { Conj, Same, Both };

}  // namespace

Rational wick_exact_moment(const MatrixWord& word, const BlockLayout& layout, const VarianceProfile& profile,
                           TraceMode trace, EntryModel model) {
  if (layout.r() != profile.r()) throw ArgumentError("layout and U disagree on r");
  if (!profile.symmetric()) throw ArgumentError("Hermitian entries need a symmetric U");
  if (trace.q < 0 || trace.q > layout.r()) throw ArgumentError("partial trace index out of range");
  if (word.empty()) throw ArgumentError("empty matrix word");
  for (const auto& f : word)
    if (f.p < 1 || f.p > layout.r() || f.q < 1 || f.q > layout.r())
      throw ArgumentError(fmt::format("block label ({},{}) outside [1, {}]", f.p, f.q, layout.r()));
  if (layout.n() > kMaxWickDimension)
    throw CapacityError(fmt::format("exact Wick sums are limited to n <= {}", kMaxWickDimension));

  const int m = static_cast<int>(word.size());
  std::vector<int> random;
  for (int k = 0; k < m; ++k)
    if (!word[static_cast<std::size_t>(k)].unit) random.push_back(k);
  if (random.size() > kMaxRandomFactors)
    throw CapacityError(fmt::format("exact Wick sums are limited to {} random factors", kMaxRandomFactors));
  if (random.size() % 2 == 1) return 0;

  const int r = layout.r();
  const Rational n(layout.n());
  auto next = [m](int k) { return (k + 1) % m; };

  // Does factor k allow row block a and column block b?
  auto allowed = [&](int k, int a, int b) {
    const auto& f = word[static_cast<std::size_t>(k)];
    if (f.unit) return a == b && (a == f.p || a == f.q);
    return (a == f.p && b == f.q) || (a == f.q && b == f.p);
  };

  Rational total = 0;
  std::vector<std::pair<int, int>> cur;
  std::vector<char> used(random.size(), 0);
  std::vector<Link> links;
  pairings(random, cur, used, [&] {
    links.assign(cur.size(), Link::Conj);
    std::function<void(std::size_t)> choose = [&](std::size_t idx) {
      if (idx < cur.size()) {
        links[idx] = Link::Conj;
        choose(idx + 1);
        if (model == EntryModel::Real) {
          links[idx] = Link::Same;
          choose(idx + 1);
          links[idx] = Link::Both;
          choose(idx + 1);
        }
        return;
      }
      int sign = 1;
      UnionFind uf(m);
      for (int k = 0; k < m; ++k)
        if (word[static_cast<std::size_t>(k)].unit) uf.unite(k, next(k));
      for (std::size_t t = 0; t < cur.size(); ++t) {
        auto [k, l] = cur[t];
        if (links[t] != Link::Same) {
          uf.unite(k, next(l));
          uf.unite(next(k), l);
        }
        if (links[t] != Link::Conj) {
          uf.unite(k, l);
          uf.unite(next(k), next(l));
        }
        if (links[t] == Link::Both) sign = -sign;
      }
      std::vector<int> rep(static_cast<std::size_t>(m));
      std::vector<int> classes;
      for (int k = 0; k < m; ++k) {
        rep[static_cast<std::size_t>(k)] = uf.find(k);
        if (rep[static_cast<std::size_t>(k)] == k) classes.push_back(k);
      }
      // Assign a block to every class and check each factor once both of
      // its indices are assigned.
      std::vector<int> block(static_cast<std::size_t>(m), 0);
      Rational sum = 0;
      std::function<void(std::size_t, Rational)> assign = [&](std::size_t c, Rational weight) {
        if (c == classes.size()) {
          if (trace.q != 0 && block[static_cast<std::size_t>(rep[0])] != trace.q) return;
          for (int k = 0; k < m; ++k)
            if (!allowed(k, block[static_cast<std::size_t>(rep[static_cast<std::size_t>(k)])],
                         block[static_cast<std::size_t>(rep[static_cast<std::size_t>(next(k))])]))
              return;
          for (auto [k, l] : cur) {
            (void)l;
            weight *= profile.u(block[static_cast<std::size_t>(rep[static_cast<std::size_t>(k)])],
                                block[static_cast<std::size_t>(rep[static_cast<std::size_t>(next(k))])]);
          }
          sum += weight;
          return;
        }
        for (int a = 1; a <= r; ++a) {
          block[static_cast<std::size_t>(classes[c])] = a;
          bool ok = true;
          for (int k = 0; k < m && ok; ++k) {
            int x = block[static_cast<std::size_t>(rep[static_cast<std::size_t>(k)])];
            int y = block[static_cast<std::size_t>(rep[static_cast<std::size_t>(next(k))])];
            if (x && y && !allowed(k, x, y)) ok = false;
          }
          if (ok) assign(c + 1, weight * layout.size(a));
        }
        block[static_cast<std::size_t>(classes[c])] = 0;
      };
      assign(0, Rational(1));
      total += sign * sum;
    };
    choose(0);
  });

  Rational scale = 1;
  for (std::size_t t = 0; t < random.size() / 2; ++t) scale /= n;
  total *= scale;
  total /= trace.q == 0 ? n : Rational(layout.size(trace.q));
  total.canonicalize();
  return total;
}

Rational wick_exact_moment(const BlockLabelWord& word, const BlockLayout& layout, const VarianceProfile& profile,
                           TraceMode trace, EntryModel model) {
  return wick_exact_moment(block_word(word), layout, profile, trace, model);
}

}  // namespace pseudomat
