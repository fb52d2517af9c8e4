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

#include "pseudomat/independence.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <json.hpp>
#include <set>

#include "pseudomat/errors.hpp"

namespace pseudomat {

// ---------------------------------------------------------------- oracles

FockOracle::FockOracle(MomentMatrix params, std::vector<Label> labels, std::vector<FockState> states,
                       std::vector<std::string> state_names, std::size_t max_word_length)
    : params_(std::move(params)),
      labels_(std::move(labels)),
      states_(std::move(states)),
      names_(std::move(state_names)),
      cap_(max_word_length) {
  if (labels_.empty()) throw ArgumentError("oracle needs at least one label");
  if (states_.empty()) throw ArgumentError("oracle needs at least one state");
  if (names_.empty())
    for (const auto& s : states_) names_.push_back(s.str());
  if (names_.size() != states_.size()) throw ArgumentError("one name per state expected");
  for (const auto& s : states_) {
    if (s.kind() == FockState::Kind::Vector && (s.index() < 1 || s.index() > params_.r()))
      throw ArgumentError(fmt::format("state index {} outside [1, {}]", s.index(), params_.r()));
    if (s.kind() == FockState::Kind::Weighted && static_cast<int>(s.weights().size()) != params_.r())
      throw ArgumentError("weighted state has the wrong number of weights");
  }
}

std::string FockOracle::label_name(int label) const { return labels_.at(static_cast<std::size_t>(label)).name; }

std::string FockOracle::state_name(int state) const { return names_.at(static_cast<std::size_t>(state)); }

namespace {

// w applied to the basis vector (0: vacuum, k: e_{k,k}), memoized on the
// word. The rightmost atom acts first.
class VectorCache {
 public:
  VectorCache(const MomentMatrix& params, const std::vector<FockOracle::Label>& labels, std::size_t cap)
      : params_(params), labels_(labels), cap_(cap) {}

  const StateVector& get(int basis, const AtomWord& w) {
    auto key = std::make_pair(basis, w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    StateVector v;
    if (w.empty()) {
      v = StateVector::basis(basis == 0 ? FockWord::vacuum() : FockWord::diagonal(basis));
    } else {
      const StateVector& inner = get(basis, AtomWord(w.begin() + 1, w.end()));
      const auto& l = labels_.at(static_cast<std::size_t>(w.front().label));
      v = apply(w.front().unit ? l.unit : l.generator, inner, params_, cap_);
    }
    return memo_.emplace(std::move(key), std::move(v)).first->second;
  }

 private:
  const MomentMatrix& params_;
  const std::vector<FockOracle::Label>& labels_;
  std::size_t cap_;
  std::map<std::pair<int, AtomWord>, StateVector> memo_;
};

}  // namespace

std::vector<OracleValue> FockOracle::evaluate(const std::vector<AtomWord>& words, int state) {
  const FockState& st = states_.at(static_cast<std::size_t>(state));
  std::vector<std::pair<int, double>> bases;
  switch (st.kind()) {
    case FockState::Kind::Vacuum: bases.emplace_back(0, 1.0); break;
    case FockState::Kind::Vector: bases.emplace_back(st.index(), 1.0); break;
    case FockState::Kind::Weighted:
      for (int k = 1; k <= params_.r(); ++k)
        if (st.weights()[static_cast<std::size_t>(k - 1)] > 0.0)
          bases.emplace_back(k, st.weights()[static_cast<std::size_t>(k - 1)]);
      break;
  }
  for (const auto& w : words)
    for (const auto& a : w)
      if (a.label < 0 || a.label >= label_count()) throw ArgumentError(fmt::format("unknown oracle label {}", a.label));

  // Every atom is self-adjoint, so <L R xi, xi> = <R xi, rev(L) xi>.
  VectorCache cache(params_, labels_, cap_);
  std::vector<OracleValue> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    auto key = std::make_pair(state, w);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      ++calls_;
      double v = 1.0;
      if (!w.empty()) {
        const std::size_t h = w.size() / 2;
        AtomWord left(w.rbegin() + static_cast<std::ptrdiff_t>(w.size() - h), w.rend());
        AtomWord right(w.begin() + static_cast<std::ptrdiff_t>(h), w.end());
        v = 0.0;
        for (auto [b, weight] : bases) v += weight * cache.get(b, right).dot(cache.get(b, left));
      }
      it = memo_.emplace(std::move(key), v).first;
    }
    out.push_back({it->second, 0.0});
  }
  return out;
}

MatrixMcOracle::MatrixMcOracle(BlockLayout layout, VarianceProfile profile, std::vector<std::pair<int, int>> labels,
                               std::vector<TraceMode> states, McOptions options)
    : layout_(std::move(layout)),
      profile_(std::move(profile)),
      labels_(std::move(labels)),
      states_(std::move(states)),
      options_(options) {
  if (labels_.empty()) throw ArgumentError("oracle needs at least one label");
  if (states_.empty()) throw ArgumentError("oracle needs at least one state");
  for (auto [p, q] : labels_)
    if (p < 1 || q < 1 || p > layout_.r() || q > layout_.r())
      throw ArgumentError(fmt::format("block label ({},{}) outside [1, {}]", p, q, layout_.r()));
  for (const auto& t : states_)
    if (t.q < 0 || t.q > layout_.r()) throw ArgumentError(fmt::format("trace index {} outside [0, {}]", t.q, layout_.r()));
}

std::string MatrixMcOracle::label_name(int label) const {
  auto [p, q] = labels_.at(static_cast<std::size_t>(label));
  return fmt::format("T{{{},{}}}", p, q);
}

std::string MatrixMcOracle::state_name(int state) const {
  return fmt::format("tau[{}]", states_.at(static_cast<std::size_t>(state)).str());
}

std::vector<OracleValue> MatrixMcOracle::evaluate(const std::vector<AtomWord>& words, int state) {
  std::vector<MatrixWord> pending;
  std::vector<AtomWord> keys;
  std::set<AtomWord> seen;
  for (const auto& w : words) {
    if (w.empty() || memo_.count({state, w}) || !seen.insert(w).second) continue;
    MatrixWord mw;
    for (const auto& a : w) {
      if (a.label < 0 || a.label >= label_count()) throw ArgumentError(fmt::format("unknown oracle label {}", a.label));
      auto [p, q] = labels_[static_cast<std::size_t>(a.label)];
      mw.push_back({a.unit, p, q});
    }
    pending.push_back(std::move(mw));
    keys.push_back(w);
  }
  if (!pending.empty()) {
    McOptions opts = options_;
    opts.trace = states_.at(static_cast<std::size_t>(state));
    auto est = mc_moments(pending, layout_, profile_, opts);
    for (std::size_t k = 0; k < keys.size(); ++k) memo_[{state, keys[k]}] = {est[k].mean, est[k].std_error};
  }
  std::vector<OracleValue> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.empty() ? OracleValue{1.0, 0.0} : memo_.at({state, w}));
  return out;
}

// ---------------------------------------------------------------- checks

namespace {

// First pass records the words every check needs; one batch per state is
// then sent to the oracle and the second pass does the arithmetic.
class Evaluator {
 public:
  explicit Evaluator(MomentOracle& oracle) : oracle_(oracle) {}

  bool collecting() const { return collecting_; }

  OracleValue get(int state, const AtomWord& w) {
    if (collecting_) {
      pending_[state].insert(w);
      return {};
    }
    return values_.at({state, w});
  }

  void flush() {
    for (auto& [state, set] : pending_) {
      std::vector<AtomWord> words(set.begin(), set.end());
      auto vals = oracle_.evaluate(words, state);
      for (std::size_t k = 0; k < words.size(); ++k) values_[{state, std::move(words[k])}] = vals[k];
    }
    pending_.clear();
    collecting_ = false;
  }

 private:
  MomentOracle& oracle_;
  bool collecting_ = true;
  std::map<int, std::set<AtomWord>> pending_;
  std::map<std::pair<int, AtomWord>, OracleValue> values_;
};

// One factor of a tested product. Centered factors subtract their
// centering constant times the label unit (or the identity, label -1).
struct Token {
  enum class Kind { Power, Centered, Unit } kind = Kind::Power;
  int label = 0;
  int exponent = 1;
  int center_state = 0;
  int center_unit = -1;  // label whose unit carries the constant; -1 is the identity
};

AtomWord power_word(int label, int e) { return AtomWord(static_cast<std::size_t>(e), Atom{label, false}); }

struct Value {
  double v = 0.0;
  double se = 0.0;
};

Value times(Value a, Value b) { return {a.v * b.v, std::abs(a.v) * b.se + std::abs(b.v) * a.se}; }

// Expands the product multilinearly and sums the oracle values.
Value product_value(Evaluator& ev, int state, const std::vector<Token>& tokens) {
  Value total;
  AtomWord word;
  std::function<void(std::size_t, Value)> rec = [&](std::size_t k, Value coeff) {
    if (k == tokens.size()) {
      OracleValue o = ev.get(state, word);
      total.v += coeff.v * o.value;
      total.se += std::abs(coeff.v) * o.std_error + std::abs(o.value) * coeff.se;
      return;
    }
    const Token& t = tokens[k];
    const std::size_t mark = word.size();
    if (t.kind == Token::Kind::Unit) {
      word.push_back({t.label, true});
      rec(k + 1, coeff);
      word.resize(mark);
      return;
    }
    AtomWord p = power_word(t.label, t.exponent);
    word.insert(word.end(), p.begin(), p.end());
    rec(k + 1, coeff);
    word.resize(mark);
    if (t.kind == Token::Kind::Centered) {
      OracleValue c = ev.get(t.center_state, p);
      if (t.center_unit >= 0) word.push_back({t.center_unit, true});
      rec(k + 1, times(coeff, {-c.value, c.std_error}));
      word.resize(mark);
    }
  };
  rec(0, {1.0, 0.0});
  return total;
}

class Checker {
 public:
  Checker(MomentOracle& oracle, const CheckOptions& options, std::string property)
      : oracle_(oracle), ev_(oracle), options_(options) {
    report_.property = std::move(property);
    report_.max_degree = options.max_degree;
    report_.tol = options.tol;
    if (options.max_degree < 1) throw ArgumentError("max degree must be at least 1");
    if (!(options.tol >= 0.0)) throw ArgumentError("tolerance must be non-negative");
  }

  Evaluator& ev() { return ev_; }

  // lhs against the product of rhs factors (0 when rhs is empty and
  // expect_zero is set).
  void check(const char* condition, int state, const std::vector<Token>& lhs,
             const std::vector<std::pair<int, std::vector<Token>>>& rhs, bool expect_zero) {
    Value a = product_value(ev_, state, lhs);
    Value b{expect_zero ? 0.0 : 1.0, 0.0};
    if (!expect_zero)
      for (const auto& [s, toks] : rhs) b = times(b, product_value(ev_, s, toks));
    if (ev_.collecting()) return;
    ++report_.checks;
    const double err = std::abs(a.v - b.v);
    const double allowed = options_.tol + (oracle_.stochastic() ? options_.stderr_factor * (a.se + b.se) : 0.0);
    report_.worst = std::max(report_.worst, err);
    if (err <= allowed) return;
    Violation v;
    v.condition = condition;
    v.state = oracle_.state_name(state);
    v.word = describe(lhs);
    for (const auto& t : lhs) v.factors.emplace_back(t.label, t.kind == Token::Kind::Unit ? 0 : t.exponent);
    v.value = a.v;
    v.expected = b.v;
    v.error = err;
    v.allowed = allowed;
    found_.push_back(std::move(v));
  }

  // Runs body twice: once to collect words, once to evaluate.
  CheckReport run(const std::function<void(Checker&)>& body) {
    body(*this);
    ev_.flush();
    body(*this);
    std::vector<std::string> order = {"kernel", "unit-insertion", "factorization", "free", "monotone", "boolean"};
    auto rank = [&](const std::string& c) { return std::find(order.begin(), order.end(), c) - order.begin(); };
    std::stable_sort(found_.begin(), found_.end(), [&](const Violation& x, const Violation& y) {
      auto kx = std::make_tuple(rank(x.condition), x.state, x.factors.size());
      auto ky = std::make_tuple(rank(y.condition), y.state, y.factors.size());
      if (kx != ky) return kx < ky;
      return x.factors < y.factors;
    });
    report_.violation_count = found_.size();
    if (options_.max_violators > 0 && found_.size() > options_.max_violators) found_.resize(options_.max_violators);
    report_.violators = std::move(found_);
    return report_;
  }

 private:
  std::string describe(const std::vector<Token>& tokens) const {
    std::string s;
    for (const auto& t : tokens) {
      if (!s.empty()) s += ' ';
      std::string name = oracle_.label_name(t.label);
      std::string pw = t.exponent == 1 ? name : fmt::format("{}^{}", name, t.exponent);
      switch (t.kind) {
        case Token::Kind::Power: s += pw; break;
        case Token::Kind::Centered: s += "c(" + pw + ")"; break;
        case Token::Kind::Unit: s += "1" + name; break;
      }
    }
    return s.empty() ? "1" : s;
  }

  MomentOracle& oracle_;
  Evaluator ev_;
  const CheckOptions& options_;
  CheckReport report_;
  std::vector<Violation> found_;
};

// Sequences (item, exponent) with exponents >= 1, consecutive items
// allowed by `next`, total degree in [1, max_degree].
void alternating_words(int items, int max_degree, const std::function<bool(int, int)>& next,
                       const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int budget) {
    for (int it = 0; it < items; ++it) {
      if (!cur.empty() && !next(cur.back().first, it)) continue;
      for (int e = 1; e <= budget; ++e) {
        cur.emplace_back(it, e);
        visit(cur);
        rec(budget - e);
        cur.pop_back();
      }
    }
  };
  rec(max_degree);
}

void all_words(int letters, int max_length, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    visit(cur);
    if (static_cast<int>(cur.size()) == max_length) return;
    for (int l = 0; l < letters; ++l) {
      cur.push_back(l);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

bool same_label(const ArrayLabel& a, const ArrayLabel& b, bool symmetric) {
  if (a.i == b.i && a.j == b.j) return true;
  return symmetric && a.i == b.j && a.j == b.i;
}

// Ordered pairs: j_k = i_{k+1} and the last pair ends at terminal.
// Sets: walk outwards from the terminal index; a factor on {x, y} carries
// x to y when its exponent is odd and leaves it at x when even (its words
// have as many letters as the exponent has parity). The unit set must
// contain the index reached.
bool chain_member(const std::vector<const ArrayLabel*>& seq, const std::vector<std::pair<int, int>>& tail,
                  int terminal, bool symmetric) {
  if (!symmetric) {
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
      if (seq[k]->j != seq[k + 1]->i) return false;
    return terminal == 0 || seq.back()->j == terminal;
  }
  std::set<int> at;
  if (terminal != 0) {
    at.insert(terminal);
  } else {
    for (const auto* l : seq) at.insert({l->i, l->j});
  }
  for (std::size_t k = seq.size() - 1; k >= 1; --k) {
    const int a = seq[k]->i, b = seq[k]->j;
    const bool odd = tail[k - 1].second % 2 == 1;
    std::set<int> next;
    if (at.count(a)) next.insert(odd ? b : a);
    if (at.count(b)) next.insert(odd ? a : b);
    at = std::move(next);
  }
  return at.count(seq[0]->i) > 0 || at.count(seq[0]->j) > 0;
}

void validate_setup(const ArraySetup& setup, const MomentOracle& oracle, bool symmetric) {
  if (setup.labels.empty()) throw ArgumentError("array check needs at least one label");
  if (setup.diagonal_states.empty()) throw ArgumentError("array check needs at least one diagonal state");
  for (std::size_t a = 0; a < setup.labels.size(); ++a) {
    const auto& l = setup.labels[a];
    if (l.label < 0 || l.label >= oracle.label_count()) throw ArgumentError(fmt::format("unknown oracle label {}", l.label));
    if (l.state < 0 || l.state >= oracle.state_count()) throw ArgumentError(fmt::format("unknown oracle state {}", l.state));
    for (std::size_t b = 0; b < a; ++b)
      if (same_label(l, setup.labels[b], symmetric))
        throw ArgumentError(fmt::format("array index ({},{}) listed twice", l.i, l.j));
  }
  for (const auto& d : setup.diagonal_states)
    if (d.state < 0 || d.state >= oracle.state_count()) throw ArgumentError(fmt::format("unknown oracle state {}", d.state));
}

CheckReport array_check(const ArraySetup& setup, MomentOracle& oracle, const CheckOptions& options, bool symmetric) {
  validate_setup(setup, oracle, symmetric);
  const int nl = static_cast<int>(setup.labels.size());
  const int degree = options.max_degree;
  auto differ = [&](int a, int b) {
    return !same_label(setup.labels[static_cast<std::size_t>(a)], setup.labels[static_cast<std::size_t>(b)], symmetric);
  };
  auto centered = [&](int a, int e) {
    const auto& l = setup.labels[static_cast<std::size_t>(a)];
    return Token{Token::Kind::Centered, l.label, e, l.state, l.label};
  };

  Checker checker(oracle, options, symmetric ? "symmetric-matricial-freeness" : "matricial-freeness");
  return checker.run([&](Checker& c) {
    alternating_words(nl, degree, differ, [&](const std::vector<std::pair<int, int>>& w) {
      std::vector<Token> tail;
      int deg = 0;
      for (auto [a, e] : w) {
        tail.push_back(centered(a, e));
        deg += e;
      }
      if (options.kernel)
        for (const auto& d : setup.diagonal_states) c.check("kernel", d.state, tail, {}, true);
      if (!options.unit_insertion) return;

      std::vector<const ArrayLabel*> seq(w.size() + 1);
      for (std::size_t k = 0; k < w.size(); ++k) seq[k + 1] = &setup.labels[static_cast<std::size_t>(w[k].first)];
      int lead_budget = degree - deg;
      if (options.leading_degree >= 0) lead_budget = std::min(lead_budget, options.leading_degree);
      for (int u = 0; u < nl; ++u) {
        if (!differ(u, w.front().first)) continue;
        seq[0] = &setup.labels[static_cast<std::size_t>(u)];
        const int ulabel = seq[0]->label;
        // Leading element: the identity or a power of one generator.
        std::vector<std::vector<Token>> leads = {{}};
        for (int a = 0; a < nl; ++a)
          for (int e = 1; e <= lead_budget; ++e)
            leads.push_back({Token{Token::Kind::Power, setup.labels[static_cast<std::size_t>(a)].label, e, 0, -1}});
        for (const auto& d : setup.diagonal_states) {
          const bool member = chain_member(seq, w, d.terminal, symmetric);
          for (const auto& lead : leads) {
            std::vector<Token> lhs = lead;
            lhs.push_back(Token{Token::Kind::Unit, ulabel, 0, 0, -1});
            lhs.insert(lhs.end(), tail.begin(), tail.end());
            std::vector<Token> rhs = lead;
            rhs.insert(rhs.end(), tail.begin(), tail.end());
            c.check("unit-insertion", d.state, lhs, {{d.state, rhs}}, !member);
          }
        }
      }
    });

    if (!options.factorization) return;
    std::vector<int> oracle_labels;
    for (const auto& l : setup.labels) oracle_labels.push_back(l.label);
    std::vector<std::vector<Token>> units;
    all_words(nl, options.unit_depth, [&](const std::vector<int>& us) {
      std::vector<Token> t;
      for (int u : us) t.push_back(Token{Token::Kind::Unit, oracle_labels[static_cast<std::size_t>(u)], 0, 0, -1});
      units.push_back(std::move(t));
    });
    all_words(nl, std::min(options.factorization_degree, degree), [&](const std::vector<int>& gs) {
      if (gs.empty()) return;
      std::vector<Token> mid;
      for (int g : gs) mid.push_back(Token{Token::Kind::Power, oracle_labels[static_cast<std::size_t>(g)], 1, 0, -1});
      for (const auto& d : setup.diagonal_states)
        for (const auto& u1 : units)
          for (const auto& u2 : units) {
            if (u1.empty() && u2.empty()) continue;
            std::vector<Token> lhs = u1;
            lhs.insert(lhs.end(), mid.begin(), mid.end());
            lhs.insert(lhs.end(), u2.begin(), u2.end());
            c.check("factorization", d.state, lhs, {{d.state, u1}, {d.state, mid}, {d.state, u2}}, false);
          }
    });
  });
}

void validate_families(const std::vector<int>& families, const MomentOracle& oracle, int state) {
  if (families.empty()) throw ArgumentError("need at least one family");
  if (state < 0 || state >= oracle.state_count()) throw ArgumentError(fmt::format("unknown oracle state {}", state));
  std::set<int> seen;
  for (int f : families) {
    if (f < 0 || f >= oracle.label_count()) throw ArgumentError(fmt::format("unknown oracle label {}", f));
    if (!seen.insert(f).second) throw ArgumentError(fmt::format("family {} listed twice", f));
  }
}

std::vector<Token> powers(const std::vector<int>& families, const std::vector<std::pair<int, int>>& w) {
  std::vector<Token> t;
  for (auto [f, e] : w) t.push_back(Token{Token::Kind::Power, families[static_cast<std::size_t>(f)], e, 0, -1});
  return t;
}

}  // namespace

CheckReport check_matricial_freeness(const ArraySetup& setup, MomentOracle& oracle, const CheckOptions& options) {
  return array_check(setup, oracle, options, false);
}

CheckReport check_symmetric_matricial_freeness(const ArraySetup& setup, MomentOracle& oracle,
                                               const CheckOptions& options) {
  return array_check(setup, oracle, options, true);
}

CheckReport check_freeness(const std::vector<int>& families, MomentOracle& oracle, int state,
                           const CheckOptions& options) {
  validate_families(families, oracle, state);
  Checker checker(oracle, options, "freeness");
  const int nf = static_cast<int>(families.size());
  return checker.run([&](Checker& c) {
    alternating_words(nf, options.max_degree, std::not_equal_to<int>(), [&](const std::vector<std::pair<int, int>>& w) {
      std::vector<Token> t;
      for (auto [f, e] : w) t.push_back(Token{Token::Kind::Centered, families[static_cast<std::size_t>(f)], e, state, -1});
      c.check("free", state, t, {}, true);
    });
  });
}

CheckReport check_monotone(const std::vector<int>& families, MomentOracle& oracle, int state,
                           const CheckOptions& options) {
  validate_families(families, oracle, state);
  Checker checker(oracle, options, "monotone");
  const int nf = static_cast<int>(families.size());
  return checker.run([&](Checker& c) {
    alternating_words(nf, options.max_degree, std::not_equal_to<int>(), [&](const std::vector<std::pair<int, int>>& w) {
      if (w.size() < 2) return;
      for (std::size_t k = 0; k < w.size(); ++k) {
        const int f = w[k].first;
        if ((k > 0 && w[k - 1].first > f) || (k + 1 < w.size() && w[k + 1].first > f)) continue;
        std::vector<std::pair<int, int>> rest;
        for (std::size_t m = 0; m < w.size(); ++m) {
          if (m == k) continue;
          if (!rest.empty() && rest.back().first == w[m].first)
            rest.back().second += w[m].second;
          else
            rest.push_back(w[m]);
        }
        c.check("monotone", state, powers(families, w), {{state, powers(families, {w[k]})}, {state, powers(families, rest)}},
                false);
      }
    });
  });
}

CheckReport check_boolean(const std::vector<int>& families, MomentOracle& oracle, int state,
                          const CheckOptions& options) {
  validate_families(families, oracle, state);
  Checker checker(oracle, options, "boolean");
  const int nf = static_cast<int>(families.size());
  return checker.run([&](Checker& c) {
    alternating_words(nf, options.max_degree, std::not_equal_to<int>(), [&](const std::vector<std::pair<int, int>>& w) {
      if (w.size() < 2) return;
      std::vector<std::pair<int, std::vector<Token>>> rhs;
      for (const auto& x : w) rhs.emplace_back(state, powers(families, {x}));
      c.check("boolean", state, powers(families, w), rhs, false);
    });
  });
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "pseudomat.check/1";
  j["property"] = property;
  j["verdict"] = verdict();
  j["max_degree"] = max_degree;
  j["tol"] = tol;
  j["worst_violation"] = worst;
  j["checks"] = checks;
  j["violation_count"] = violation_count;
  auto& list = j["violators"] = nlohmann::ordered_json::array();
  for (const auto& v : violators) {
    nlohmann::ordered_json e;
    e["condition"] = v.condition;
    e["state"] = v.state;
    e["word"] = v.word;
    e["factors"] = v.factors;
    e["value"] = v.value;
    e["expected"] = v.expected;
    e["error"] = v.error;
    e["allowed"] = v.allowed;
    list.push_back(std::move(e));
  }
  return j.dump(2);
}

}  // namespace pseudomat
