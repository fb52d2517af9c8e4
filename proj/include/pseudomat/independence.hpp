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

#ifndef PSEUDOMAT_INDEPENDENCE_HPP
#define PSEUDOMAT_INDEPENDENCE_HPP

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pseudomat/comb_moments.hpp"
#include "pseudomat/fock.hpp"
#include "pseudomat/randmat.hpp"

namespace pseudomat {

/// A factor of an oracle word: the generator of a label, or its unit.
struct Atom {
  int label = 0;
  bool unit = false;
  auto operator<=>(const Atom&) const = default;
};
using AtomWord = std::vector<Atom>;

struct OracleValue {
  double value = 0.0;
  double std_error = 0.0;
};

/// Moments of words in a fixed set of generators and units under a fixed
/// set of states. Labels and states are 0-based indices.
class MomentOracle {
 public:
  virtual ~MomentOracle() = default;
  virtual int label_count() const = 0;
  virtual int state_count() const = 0;
  virtual std::string label_name(int label) const = 0;
  virtual std::string state_name(int state) const = 0;
  /// The empty word has moment 1. Implementations may evaluate in parallel
  /// but must return values in request order.
  virtual std::vector<OracleValue> evaluate(const std::vector<AtomWord>& words, int state) = 0;
  /// True when values carry Monte Carlo error.
  virtual bool stochastic() const { return false; }
};

/// Exact operator moments on the Fock space, memoized.
class FockOracle : public MomentOracle {
 public:
  struct Label {
    std::string name;
    OperatorSpec generator;
    OperatorSpec unit;
  };

  /// state_names defaults to FockState::str(). A non-zero
  /// max_word_length caps intermediate words (CapacityError beyond it).
  FockOracle(MomentMatrix params, std::vector<Label> labels, std::vector<FockState> states,
             std::vector<std::string> state_names = {}, std::size_t max_word_length = 0);

  int label_count() const override { return static_cast<int>(labels_.size()); }
  int state_count() const override { return static_cast<int>(states_.size()); }
  std::string label_name(int label) const override;
  std::string state_name(int state) const override;
  std::vector<OracleValue> evaluate(const std::vector<AtomWord>& words, int state) override;

  std::size_t calls() const { return calls_; }

 private:
  MomentMatrix params_;
  std::vector<Label> labels_;
  std::vector<FockState> states_;
  std::vector<std::string> names_;
  std::size_t cap_;
  std::map<std::pair<int, AtomWord>, double> memo_;
  std::size_t calls_ = 0;
};

/// Normalized traces of products of symmetric random blocks and block
/// units. Every batch reuses the same samples (same seed), so estimates of
/// different words are coupled.
class MatrixMcOracle : public MomentOracle {
 public:
  /// labels: block pairs (p, q) read as symmetric blocks T_{p,q}.
  MatrixMcOracle(BlockLayout layout, VarianceProfile profile, std::vector<std::pair<int, int>> labels,
                 std::vector<TraceMode> states, McOptions options);

  int label_count() const override { return static_cast<int>(labels_.size()); }
  int state_count() const override { return static_cast<int>(states_.size()); }
  std::string label_name(int label) const override;
  std::string state_name(int state) const override;
  std::vector<OracleValue> evaluate(const std::vector<AtomWord>& words, int state) override;
  bool stochastic() const override { return true; }

 private:
  BlockLayout layout_;
  VarianceProfile profile_;
  std::vector<std::pair<int, int>> labels_;
  std::vector<TraceMode> states_;
  McOptions options_;
  std::map<std::pair<int, AtomWord>, OracleValue> memo_;
};

/// A member of an array of subalgebras: array index (i, j), its oracle
/// label, and the oracle state used to center its elements.
struct ArrayLabel {
  int i = 0;
  int j = 0;
  int label = 0;
  int state = 0;
};

/// A state in which kernel products must vanish. Index tuples admitted by
/// the unit-insertion rule must end at `terminal` (0: anywhere).
struct DiagonalState {
  int state = 0;
  int terminal = 0;
};

struct ArraySetup {
  std::vector<ArrayLabel> labels;
  std::vector<DiagonalState> diagonal_states;
};

struct CheckOptions {
  int max_degree = 6;
  double tol = 1e-9;
  /// Allowed error grows by this many standard errors for stochastic
  /// oracles.
  double stderr_factor = 4.0;
  /// Unit insertion: largest degree of the leading element (-1: whatever
  /// the degree budget leaves).
  int leading_degree = -1;
  /// Factorization: longest unit product on each side and largest degree of
  /// the middle monomial.
  int unit_depth = 2;
  int factorization_degree = 3;
  bool kernel = true;
  bool unit_insertion = true;
  bool factorization = true;
  /// Violators kept in the report after canonical sorting.
  std::size_t max_violators = 50;
};

/// (label, exponent) as passed to the oracle.
using FactorList = std::vector<std::pair<int, int>>;

struct Violation {
  std::string condition;
  std::string state;
  std::string word;
  /// Oracle-level (label, exponent) factors of the tested product; a unit
  /// is exponent 0.
  FactorList factors;
  double value = 0.0;
  double expected = 0.0;
  double error = 0.0;
  double allowed = 0.0;
};

struct CheckReport {
  std::string property;
  int max_degree = 0;
  double tol = 0.0;
  /// Largest |value - expected| over all checks.
  double worst = 0.0;
  std::size_t checks = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violators;

  bool pass() const { return violation_count == 0; }
  std::string verdict() const { return pass() ? "PASS" : "FAIL"; }
  /// Versioned JSON document.
  std::string to_json() const;
};

/// Kernel vanishing, unit insertion with chain membership, and unit
/// factorization for an array indexed by ordered pairs.
CheckReport check_matricial_freeness(const ArraySetup& setup, MomentOracle& oracle, const CheckOptions& options = {});

/// The same checks with labels read as sets: alternation and chain
/// membership are decided on unordered pairs.
CheckReport check_symmetric_matricial_freeness(const ArraySetup& setup, MomentOracle& oracle,
                                               const CheckOptions& options = {});

/// Alternating products of centered powers vanish.
CheckReport check_freeness(const std::vector<int>& families, MomentOracle& oracle, int state,
                           const CheckOptions& options = {});

/// Peak deletion: phi(w) = phi(x_k^e) phi(w without factor k) whenever the
/// k-th family is larger than its neighbours. Families are listed in
/// increasing order.
CheckReport check_monotone(const std::vector<int>& families, MomentOracle& oracle, int state,
                           const CheckOptions& options = {});

/// Alternating products factor into the moments of their factors.
CheckReport check_boolean(const std::vector<int>& families, MomentOracle& oracle, int state,
                          const CheckOptions& options = {});

}  // namespace pseudomat

#endif  // PSEUDOMAT_INDEPENDENCE_HPP
