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

#ifndef PSEUDOMAT_RANDMAT_HPP
#define PSEUDOMAT_RANDMAT_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pseudomat/comb_moments.hpp"
#include "pseudomat/rational.hpp"

namespace pseudomat {

/// [n] split into r consecutive intervals N_1, ..., N_r.
class BlockLayout {
 public:
  /// Throws ArgumentError unless every size is at least 1.
  explicit BlockLayout(std::vector<int> sizes);
  /// r intervals of size n / r, the first n % r of them one larger.
  static BlockLayout equal(int n, int r);

  int n() const { return n_; }
  int r() const { return static_cast<int>(sizes_.size()); }
  int size(int q) const { return sizes_.at(static_cast<std::size_t>(q - 1)); }
  /// 0-based first index of N_q.
  int offset(int q) const { return offsets_.at(static_cast<std::size_t>(q - 1)); }
  /// 1-based block label of a 0-based index.
  int block_of(int index) const;
  const std::vector<int>& sizes() const { return sizes_; }
  /// n_q / n.
  std::vector<double> realized_weights() const;

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int n_ = 0;
};

/// Block variance parameters u_{p,q}; the sampler needs them symmetric.
class VarianceProfile {
 public:
  /// Row-major r x r. Throws ArgumentError on negative entries or size
  /// mismatch.
  VarianceProfile(int r, std::vector<Rational> u);
  static VarianceProfile from(const MomentMatrix& params);

  int r() const { return r_; }
  const Rational& u(int p, int q) const { return u_[index(p, q)]; }
  double u_double(int p, int q) const { return ud_[index(p, q)]; }
  bool symmetric() const;

 private:
  std::size_t index(int p, int q) const;
  int r_;
  std::vector<Rational> u_;
  std::vector<double> ud_;
};

/// Circular: off-diagonal real and imaginary parts independent with equal
/// variance. Real: real symmetric entries, so E(Y_ab Y_ab) is also u / n.
enum class EntryModel { Circular, Real };

using ComplexMatrix = Eigen::MatrixXcd;

/// Hermitian Y with E|Y_ab|^2 = u_{p,q} / n for a in N_p, b in N_q. Throws
/// ArgumentError if the profile is not symmetric or r differs.
ComplexMatrix sample_matrix(const BlockLayout& layout, const VarianceProfile& profile, std::mt19937_64& rng,
                            EntryModel model = EntryModel::Circular);

/// Y masked to (N_p x N_q) u (N_q x N_p).
ComplexMatrix symmetric_block(const ComplexMatrix& y, const BlockLayout& layout, int p, int q);

/// Diagonal 0/1 matrix supported on N_p u N_q.
Eigen::MatrixXd block_unit(const BlockLayout& layout, int p, int q);

/// Either a symmetric random block T_{p,q} or the unit on N_p u N_q.
struct MatrixFactor {
  bool unit = false;
  int p = 0;
  int q = 0;
  auto operator<=>(const MatrixFactor&) const = default;
};

using MatrixWord = std::vector<MatrixFactor>;

/// Reads the labels of a word as symmetric blocks.
MatrixWord block_word(const BlockLabelWord& word);

/// 0 selects the full normalized trace, q >= 1 the trace over N_q divided
/// by n_q.
struct TraceMode {
  int q = 0;
  static TraceMode full() { return {0}; }
  static TraceMode partial(int q) { return {q}; }
  std::string str() const;
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string target;
  /// Diagnostics for the imaginary part, which should vanish on average.
  double imag_mean = 0.0;
  double imag_stderr = 0.0;
};

struct McOptions {
  long trials = 1000;
  std::uint64_t seed = 0;
  TraceMode trace = TraceMode::full();
  EntryModel model = EntryModel::Circular;
  /// 0 reads PSEUDOMAT_THREADS, falling back to the hardware count.
  int threads = 0;
};

/// One estimate per word, all from the same samples. Output is identical
/// for any thread count. Throws ArgumentError when trials < 2.
std::vector<MomentEstimate> mc_moments(const std::vector<MatrixWord>& words, const BlockLayout& layout,
                                       const VarianceProfile& profile, const McOptions& options);

MomentEstimate mc_mixed_moment(const BlockLabelWord& word, const BlockLayout& layout, const VarianceProfile& profile,
                               const McOptions& options);

/// Exact expectation of the normalized trace by summing covariance products
/// over all pairings. Throws CapacityError for more than 8 random factors or
/// n > 12.
Rational wick_exact_moment(const MatrixWord& word, const BlockLayout& layout, const VarianceProfile& profile,
                           TraceMode trace, EntryModel model = EntryModel::Circular);

Rational wick_exact_moment(const BlockLabelWord& word, const BlockLayout& layout, const VarianceProfile& profile,
                           TraceMode trace, EntryModel model = EntryModel::Circular);

/// Per-trial generator derived from (seed, trial) alone.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Thread count from PSEUDOMAT_THREADS, or the hardware count.
int default_thread_count();

std::string word_string(const MatrixWord& word);

}  // namespace pseudomat

#endif  // PSEUDOMAT_RANDMAT_HPP
