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

#include "pseudomat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "pseudomat/errors.hpp"

namespace pseudomat {

bool word_valid(std::span<const Letter> letters) {
  if (letters.empty()) return true;
  for (std::size_t k = 0; k + 1 < letters.size(); ++k) {
    if (letters[k].j != letters[k + 1].i) return false;
    if (letters[k] == letters[k + 1] && !letters[k].diagonal()) return false;
  }
  return letters.back().diagonal();
}

FockWord::FockWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (!word_valid(letters_)) throw ArgumentError("invalid Fock word " + str());
}

bool FockWord::can_prepend(Letter l) const {
  if (letters_.empty()) return l.diagonal();
  const Letter& f = letters_.front();
  return l.j == f.i && (l.diagonal() || l != f);
}

FockWord FockWord::prepended(Letter l) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() + 1);
  out.push_back(l);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return FockWord(std::move(out), Unchecked{});
}

FockWord FockWord::without_front() const {
  return FockWord(std::vector<Letter>(letters_.begin() + 1, letters_.end()), Unchecked{});
}

std::string FockWord::str() const {
  if (letters_.empty()) return "Omega";
  std::string s;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) s += "(x)";
    s += fmt::format("e{},{}", letters_[k].i, letters_[k].j);
  }
  return s;
}

StateVector StateVector::basis(FockWord w, double coeff) {
  StateVector v;
  v.add(w, coeff);
  return v;
}

void StateVector::add(const FockWord& w, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

void StateVector::add(const StateVector& other, double scale) {
  for (const auto& [w, c] : other.terms_) add(w, scale * c);
}

double StateVector::coefficient(const FockWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0.0 : it->second;
}

double StateVector::dot(const StateVector& other) const {
  const auto& small = size() <= other.size() ? terms_ : other.terms_;
  const auto& large = size() <= other.size() ? other.terms_ : terms_;
  double s = 0.0;
  for (const auto& [w, c] : small) {
    auto it = large.find(w);
    if (it != large.end()) s += c * it->second;
  }
  return s;
}

std::size_t StateVector::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.length());
  return m;
}

namespace {

bool has(const std::vector<int>& s, int x) { return std::find(s.begin(), s.end(), x) != s.end(); }

void check_index(int r, int i) {
  if (i < 1 || i > r) throw ArgumentError(fmt::format("index {} outside [1, {}]", i, r));
}

void check_label(const ArrayShape& shape, const OperatorSpec& op, bool symmetric) {
  check_index(shape.r(), op.i);
  check_index(shape.r(), op.j);
  bool ok = shape.contains(op.i, op.j) || (symmetric && shape.contains(op.j, op.i));
  if (!ok) throw ArgumentError(fmt::format("label ({},{}) outside the shape", op.i, op.j));
}

// Membership tests of the projections on a single basis word.
bool in_s(const FockWord& w, int i, int j) { return !w.is_vacuum() && w.front() == Letter{i, j}; }

bool in_r(const FockWord& w, int i, int j) {
  if (i != j) return !w.is_vacuum() && w.front().i == j;
  return w.is_vacuum() || (w.front().i == j && w.front().j != j);
}

bool in_sym_unit(const FockWord& w, int i, int j) {
  if (w.is_vacuum()) return i == j;
  return w.front().i == i || w.front().i == j;
}

bool in_block_unit(const FockWord& w, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows == cols) return w.is_vacuum() || has(rows, w.front().i);
  if (w.is_vacuum()) return false;
  const Letter& f = w.front();
  return (has(rows, f.i) && has(cols, f.j)) || has(cols, f.i);
}

class Applier {
 public:
  Applier(const MomentMatrix& params) : params_(params) {}

  void run(const OperatorSpec& op, const FockWord& w, double c, StateVector& out) const {
    const int i = op.i;
    const int j = op.j;
    switch (op.kind) {
      case OpKind::Create:
        create(i, j, w, c, out);
        return;
      case OpKind::Annihilate:
        annihilate(i, j, w, c, out, false);
        return;
      case OpKind::Gauss:
        create(i, j, w, c, out);
        annihilate(i, j, w, c, out, false);
        return;
      case OpKind::TruncCreate:
        if (!w.is_vacuum()) create(i, j, w, c, out);
        return;
      case OpKind::TruncAnnihilate:
        annihilate(i, j, w, c, out, true);
        return;
      case OpKind::TruncGauss:
        if (w.is_vacuum()) return;
        create(i, j, w, c, out);
        annihilate(i, j, w, c, out, true);
        return;
      case OpKind::SymTruncGauss:
        if (w.is_vacuum()) return;
        create(i, j, w, c, out);
        annihilate(i, j, w, c, out, true);
        if (i != j) {
          create(j, i, w, c, out);
          annihilate(j, i, w, c, out, true);
        }
        return;
      case OpKind::SymGauss:
        create(i, j, w, c, out);
        annihilate(i, j, w, c, out, false);
        if (i != j) {
          create(j, i, w, c, out);
          annihilate(j, i, w, c, out, false);
        }
        return;
      case OpKind::Unit:
        if (in_s(w, i, j) || in_r(w, i, j)) out.add(w, c);
        return;
      case OpKind::SProj:
        if (in_s(w, i, j)) out.add(w, c);
        return;
      case OpKind::RProj:
        if (in_r(w, i, j)) out.add(w, c);
        return;
      case OpKind::TruncUnit:
        if (!w.is_vacuum() && (in_s(w, i, j) || in_r(w, i, j))) out.add(w, c);
        return;
      case OpKind::SymUnit:
        if (in_sym_unit(w, i, j)) out.add(w, c);
        return;
      case OpKind::SymTruncUnit:
        if (!w.is_vacuum() && in_sym_unit(w, i, j)) out.add(w, c);
        return;
      case OpKind::VacuumProj:
        if (w.is_vacuum()) out.add(w, c);
        return;
      case OpKind::TruncProj:
        if (!w.is_vacuum()) out.add(w, c);
        return;
      case OpKind::BlockUnit:
        if (in_block_unit(w, op.rows, op.cols)) out.add(w, c);
        return;
      case OpKind::Sum:
        for (const auto& t : op.terms) run(t, w, c, out);
        return;
    }
  }

 private:
  void create(int i, int j, const FockWord& w, double c, StateVector& out) const {
    double a = params_.alpha(i, j);
    if (a == 0.0 || !w.can_prepend({i, j})) return;
    out.add(w.prepended({i, j}), a * c);
  }

  void annihilate(int i, int j, const FockWord& w, double c, StateVector& out, bool truncated) const {
    if (!in_s(w, i, j)) return;
    if (truncated && w.length() == 1) return;
    double a = params_.alpha(i, j);
    if (a == 0.0) return;
    out.add(w.without_front(), a * c);
  }

  const MomentMatrix& params_;
};

void validate(const OperatorSpec& op, const ArrayShape& shape) {
  switch (op.kind) {
    case OpKind::VacuumProj:
    case OpKind::TruncProj:
      return;
    case OpKind::BlockUnit:
      for (int x : op.rows) check_index(shape.r(), x);
      for (int x : op.cols) check_index(shape.r(), x);
      return;
    case OpKind::Sum:
      for (const auto& t : op.terms) validate(t, shape);
      return;
    case OpKind::SymTruncGauss:
    case OpKind::SymGauss:
    case OpKind::SymUnit:
    case OpKind::SymTruncUnit:
      check_label(shape, op, true);
      return;
    default:
      check_label(shape, op, false);
  }
}

std::vector<int> normalized(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

const char* kind_name(OpKind k) {
  switch (k) {
    case OpKind::Create: return "CREATE";
    case OpKind::Annihilate: return "ANNIHILATE";
    case OpKind::Gauss: return "GAUSS";
    case OpKind::TruncCreate: return "TRUNC_CREATE";
    case OpKind::TruncAnnihilate: return "TRUNC_ANNIHILATE";
    case OpKind::TruncGauss: return "TRUNC_GAUSS";
    case OpKind::SymTruncGauss: return "SYM_TRUNC_GAUSS";
    case OpKind::SymGauss: return "SYM_GAUSS";
    case OpKind::Unit: return "UNIT";
    case OpKind::SProj: return "S_PROJ";
    case OpKind::RProj: return "R_PROJ";
    case OpKind::TruncUnit: return "TRUNC_UNIT";
    case OpKind::SymUnit: return "SYM_UNIT";
    case OpKind::SymTruncUnit: return "SYM_TRUNC_UNIT";
    case OpKind::VacuumProj: return "VACUUM_PROJ";
    case OpKind::TruncProj: return "TRUNC_PROJ";
    case OpKind::BlockUnit: return "BLOCK_UNIT";
    case OpKind::Sum: return "SUM";
  }
  return "?";
}

}  // namespace

OperatorSpec OperatorSpec::block_unit(std::vector<int> rows, std::vector<int> cols) {
  rows = normalized(std::move(rows));
  cols = normalized(std::move(cols));
  if (rows.empty() || cols.empty()) throw ArgumentError("block unit needs non-empty index sets");
  if (rows != cols) {
    for (int x : rows)
      if (has(cols, x)) throw ArgumentError("block unit index sets must be identical or disjoint");
  }
  return {OpKind::BlockUnit, 0, 0, std::move(rows), std::move(cols), {}};
}

std::string OperatorSpec::str() const {
  switch (kind) {
    case OpKind::VacuumProj:
    case OpKind::TruncProj:
      return kind_name(kind);
    case OpKind::BlockUnit:
      return fmt::format("BLOCK_UNIT({{{}}},{{{}}})", fmt::join(rows, ","), fmt::join(cols, ","));
    case OpKind::Sum: {
      std::vector<std::string> parts;
      for (const auto& t : terms) parts.push_back(t.str());
      return fmt::format("SUM[{}]", fmt::join(parts, "+"));
    }
    default:
      return fmt::format("{}({},{})", kind_name(kind), i, j);
  }
}

OperatorSpec pseudomatrix_operator(const ArrayShape& shape, bool truncated) {
  std::vector<OperatorSpec> terms;
  OpKind k = truncated ? OpKind::TruncGauss : OpKind::Gauss;
  for (const Label& l : shape.pairs()) terms.push_back(OperatorSpec::labeled(k, l.p, l.q));
  return OperatorSpec::sum(std::move(terms));
}

OperatorSpec row_sum_operator(int p, const ArrayShape& shape, bool truncated) {
  check_index(shape.r(), p);
  std::vector<OperatorSpec> terms;
  OpKind k = truncated ? OpKind::TruncGauss : OpKind::Gauss;
  for (int q = 1; q <= shape.r(); ++q)
    if (shape.contains(p, q)) terms.push_back(OperatorSpec::labeled(k, p, q));
  return OperatorSpec::sum(std::move(terms));
}

OperatorSpec block_sum_operator(const std::vector<int>& rows, const std::vector<int>& cols, const ArrayShape& shape,
                                bool truncated) {
  std::vector<OperatorSpec> terms;
  OpKind k = truncated ? OpKind::TruncGauss : OpKind::Gauss;
  for (int p : rows) {
    check_index(shape.r(), p);
    for (int q : cols) {
      check_index(shape.r(), q);
      if (shape.contains(p, q)) terms.push_back(OperatorSpec::labeled(k, p, q));
    }
  }
  return OperatorSpec::sum(std::move(terms));
}

FockState FockState::weighted(std::vector<double> weights) {
  double s = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ArgumentError("state weights must be non-negative");
    s += w;
  }
  if (weights.empty() || std::abs(s - 1.0) > 1e-12) throw ArgumentError("state weights must sum to 1");
  return FockState(Kind::Weighted, 0, std::move(weights));
}

FockState FockState::weighted(const MomentMatrix& params) {
  std::vector<double> w;
  for (const auto& d : params.weights()) w.push_back(to_double(d));
  return FockState(Kind::Weighted, 0, std::move(w));
}

std::string FockState::str() const {
  switch (kind_) {
    case Kind::Vacuum: return "phi";
    case Kind::Vector: return fmt::format("psi:{}", j_);
    case Kind::Weighted: return "psi";
  }
  return "?";
}

StateVector apply(const OperatorSpec& op, const StateVector& v, const MomentMatrix& params,
                  std::size_t max_word_length) {
  validate(op, params.shape());
  Applier applier(params);
  StateVector out;
  for (const auto& [w, c] : v.terms()) applier.run(op, w, c, out);
  if (max_word_length > 0 && out.max_length() > max_word_length)
    throw CapacityError(fmt::format("word length exceeds cap {}", max_word_length));
  return out;
}

StateVector apply_product(std::span<const OperatorSpec> ops, const StateVector& v, const MomentMatrix& params,
                          std::size_t max_word_length) {
  StateVector cur = v;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    cur = apply(*it, cur, params, max_word_length);
    if (cur.empty()) break;
  }
  return cur;
}

double moment(std::span<const OperatorSpec> ops, const FockState& state, const MomentMatrix& params,
              MomentOptions options) {
  if (ops.empty()) throw ArgumentError("moment needs at least one operator");
  for (const auto& op : ops) validate(op, params.shape());
  std::size_t cap = options.max_word_length ? options.max_word_length : ops.size() + 2;
  auto vector_value = [&](const FockWord& xi) {
    StateVector v = StateVector::basis(xi);
    return apply_product(ops, v, params, cap).coefficient(xi);
  };
  const int r = params.r();
  switch (state.kind()) {
    case FockState::Kind::Vacuum:
      return vector_value(FockWord::vacuum());
    case FockState::Kind::Vector:
      check_index(r, state.index());
      return vector_value(FockWord::diagonal(state.index()));
    case FockState::Kind::Weighted: {
      if (static_cast<int>(state.weights().size()) != r)
        throw ArgumentError(fmt::format("state has {} weights for r = {}", state.weights().size(), r));
      double s = 0.0;
      for (int j = 1; j <= r; ++j) {
        double w = state.weights()[static_cast<std::size_t>(j - 1)];
        if (w != 0.0) s += w * vector_value(FockWord::diagonal(j));
      }
      return s;
    }
  }
  return 0.0;
}

double pseudomatrix_moment(int m, const MomentMatrix& params, const FockState& state, bool truncated) {
  if (m < 1) throw ArgumentError("moment order must be positive");
  std::vector<OperatorSpec> ops(static_cast<std::size_t>(m), pseudomatrix_operator(params.shape(), truncated));
  return moment(ops, state, params);
}

}  // namespace pseudomat
