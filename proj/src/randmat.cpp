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

#include "pseudomat/randmat.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <map>
#include <thread>

#include "pseudomat/errors.hpp"

namespace pseudomat {

BlockLayout::BlockLayout(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw ArgumentError("layout needs at least one block");
  for (int s : sizes_) {
    if (s < 1) throw ArgumentError("block sizes must be at least 1");
    offsets_.push_back(n_);
    n_ += s;
  }
}

BlockLayout BlockLayout::equal(int n, int r) {
  if (r < 1 || n < r) throw ArgumentError(fmt::format("cannot split n = {} into {} blocks", n, r));
  std::vector<int> sizes(static_cast<std::size_t>(r), n / r);
  for (int q = 0; q < n % r; ++q) ++sizes[static_cast<std::size_t>(q)];
  return BlockLayout(std::move(sizes));
}

int BlockLayout::block_of(int index) const {
  if (index < 0 || index >= n_) throw ArgumentError(fmt::format("index {} outside [0, {})", index, n_));
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin());
}

std::vector<double> BlockLayout::realized_weights() const {
  std::vector<double> w;
  for (int s : sizes_) w.push_back(static_cast<double>(s) / n_);
  return w;
}

VarianceProfile::VarianceProfile(int r, std::vector<Rational> u) : r_(r), u_(std::move(u)) {
  if (r < 1) throw ArgumentError("r must be positive");
  if (u_.size() != static_cast<std::size_t>(r * r))
    throw ArgumentError(fmt::format("U needs {} entries, got {}", r * r, u_.size()));
  for (auto& x : u_) {
    x.canonicalize();
    if (x < 0) throw ArgumentError("variance parameters must be non-negative");
    ud_.push_back(x.get_d());
  }
}

VarianceProfile VarianceProfile::from(const MomentMatrix& params) {
  std::vector<Rational> u;
  for (int p = 1; p <= params.r(); ++p)
    for (int q = 1; q <= params.r(); ++q) u.push_back(params.u(p, q));
  return VarianceProfile(params.r(), std::move(u));
}

std::size_t VarianceProfile::index(int p, int q) const {
  if (p < 1 || p > r_ || q < 1 || q > r_) throw ArgumentError(fmt::format("label ({},{}) outside [1, {}]", p, q, r_));
  return static_cast<std::size_t>((p - 1) * r_ + (q - 1));
}

bool VarianceProfile::symmetric() const {
  for (int p = 1; p <= r_; ++p)
    for (int q = p + 1; q <= r_; ++q)
      if (u(p, q) != u(q, p)) return false;
  return true;
}

namespace {

void check_labels(const BlockLayout& layout, int p, int q) {
  if (p < 1 || p > layout.r() || q < 1 || q > layout.r())
    throw ArgumentError(fmt::format("block label ({},{}) outside [1, {}]", p, q, layout.r()));
}

void check_compatible(const BlockLayout& layout, const VarianceProfile& profile) {
  if (layout.r() != profile.r())
    throw ArgumentError(fmt::format("layout has {} blocks but U is {}x{}", layout.r(), profile.r(), profile.r()));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

int default_thread_count() {
  if (const char* env = std::getenv("PSEUDOMAT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ComplexMatrix sample_matrix(const BlockLayout& layout, const VarianceProfile& profile, std::mt19937_64& rng,
                            EntryModel model) {
  check_compatible(layout, profile);
  if (!profile.symmetric()) throw ArgumentError("Hermitian sampling needs a symmetric U");
  const int n = layout.n();
  std::vector<int> block(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) block[static_cast<std::size_t>(a)] = layout.block_of(a);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix y(n, n);
  for (int a = 0; a < n; ++a) {
    const int p = block[static_cast<std::size_t>(a)];
    y(a, a) = std::sqrt(profile.u_double(p, p) / n) * gauss(rng);
    for (int b = a + 1; b < n; ++b) {
      double v = profile.u_double(p, block[static_cast<std::size_t>(b)]) / n;
      std::complex<double> z;
      if (model == EntryModel::Circular) {
        double s = std::sqrt(v / 2);
        double re = s * gauss(rng);
        double im = s * gauss(rng);
        z = {re, im};
      } else {
        z = std::sqrt(v) * gauss(rng);
      }
      y(a, b) = z;
      y(b, a) = std::conj(z);
    }
  }
  return y;
}

ComplexMatrix symmetric_block(const ComplexMatrix& y, const BlockLayout& layout, int p, int q) {
  check_labels(layout, p, q);
  if (y.rows() != layout.n() || y.cols() != layout.n()) throw ArgumentError("matrix size does not match layout");
  ComplexMatrix t = ComplexMatrix::Zero(y.rows(), y.cols());
  auto copy = [&](int a, int b) {
    t.block(layout.offset(a), layout.offset(b), layout.size(a), layout.size(b)) =
        y.block(layout.offset(a), layout.offset(b), layout.size(a), layout.size(b));
  };
  copy(p, q);
  if (p != q) copy(q, p);
  return t;
}

Eigen::MatrixXd block_unit(const BlockLayout& layout, int p, int q) {
  check_labels(layout, p, q);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(layout.n(), layout.n());
  for (int c : {p, q})
    for (int a = 0; a < layout.size(c); ++a) e(layout.offset(c) + a, layout.offset(c) + a) = 1.0;
  return e;
}

MatrixWord block_word(const BlockLabelWord& word) {
  MatrixWord w;
  for (const auto& l : word.entries) w.push_back({false, l.p, l.q});
  return w;
}

std::string TraceMode::str() const { return q == 0 ? std::string("full") : fmt::format("partial:{}", q); }

std::string word_string(const MatrixWord& word) {
  std::string s;
  for (const auto& f : word) s += f.unit ? fmt::format("1{{{},{}}}", f.p, f.q) : fmt::format("T{{{},{}}}", f.p, f.q);
  return s;
}

namespace {

// r x r grid of dense blocks; an empty block is zero. Small matrices use a
// single dense block instead.
struct BlockSparse {
  int r = 0;
  std::vector<ComplexMatrix> blocks;
  ComplexMatrix& at(int a, int b) { return blocks[static_cast<std::size_t>(a * r + b)]; }
  const ComplexMatrix& at(int a, int b) const { return blocks[static_cast<std::size_t>(a * r + b)]; }
  bool has(int a, int b) const { return at(a, b).size() > 0; }
};

// Sparsity depends only on the labels, so storage in out is reused from
// trial to trial.
void multiply_into(BlockSparse& out, const BlockSparse& x, const BlockSparse& y) {
  for (int a = 0; a < x.r; ++a)
    for (int c = 0; c < x.r; ++c) {
      bool first = true;
      for (int b = 0; b < x.r; ++b) {
        if (!x.has(a, b) || !y.has(b, c)) continue;
        if (first)
          out.at(a, c).noalias() = x.at(a, b) * y.at(b, c);
        else
          out.at(a, c).noalias() += x.at(a, b) * y.at(b, c);
        first = false;
      }
      if (first) out.at(a, c).resize(0, 0);
    }
}

// Every distinct product needed by a batch of words, in dependency order.
// A word is traced as (left half) * (right half); halves are built from
// shorter products by appending or prepending a single factor.
struct ProductPlan {
  struct Node {
    int parent = -1;  // -1: the node is a single factor
    int atom = 0;     // index into atoms
    bool append = true;
  };
  std::vector<Node> nodes;
  std::vector<MatrixFactor> atoms;
  std::vector<std::pair<int, int>> words;  // right half -1 when absent

  explicit ProductPlan(const std::vector<MatrixWord>& ws) {
    for (const auto& w : ws) {
      const std::size_t k = (w.size() + 1) / 2;
      int l = node(MatrixWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)), true);
      int r = k == w.size() ? -1 : node(MatrixWord(w.begin() + static_cast<std::ptrdiff_t>(k), w.end()), false);
      words.emplace_back(l, r);
    }
  }

 private:
  int node(const MatrixWord& w, bool append) {
    auto it = index_.find(w);
    if (it != index_.end()) return it->second;
    Node nd;
    if (w.size() == 1) {
      nd.atom = atom(w.front());
    } else if (append) {
      nd.parent = node(MatrixWord(w.begin(), w.end() - 1), true);
      nd.atom = atom(w.back());
    } else {
      nd.parent = node(MatrixWord(w.begin() + 1, w.end()), false);
      nd.atom = atom(w.front());
      nd.append = false;
    }
    nodes.push_back(nd);
    int id = static_cast<int>(nodes.size()) - 1;
    index_.emplace(w, id);
    return id;
  }

  int atom(const MatrixFactor& f) {
    auto it = std::find(atoms.begin(), atoms.end(), f);
    if (it != atoms.end()) return static_cast<int>(it - atoms.begin());
    atoms.push_back(f);
    return static_cast<int>(atoms.size()) - 1;
  }

  std::map<MatrixWord, int> index_;
};

constexpr int kDenseLimit = 32;

// Holds the products of one plan for the current trial; storage lives as
// long as the worker.
class TrialEvaluator {
 public:
  TrialEvaluator(const ProductPlan& plan, const BlockLayout& layout, TraceMode trace)
      : plan_(plan), layout_(layout), trace_(trace), dense_(layout.n() <= kDenseLimit) {
    grid_ = dense_ ? 1 : layout.r();
    const BlockSparse empty{grid_, std::vector<ComplexMatrix>(static_cast<std::size_t>(grid_ * grid_))};
    atoms_.assign(plan.atoms.size(), empty);
    values_.assign(plan.nodes.size(), empty);
  }

  void load(const ComplexMatrix& y) {
    for (std::size_t k = 0; k < plan_.atoms.size(); ++k) load_factor(atoms_[k], plan_.atoms[k], y);
    for (std::size_t k = 0; k < plan_.nodes.size(); ++k) {
      const auto& nd = plan_.nodes[k];
      if (nd.parent < 0) continue;
      const BlockSparse& f = atoms_[static_cast<std::size_t>(nd.atom)];
      if (nd.append)
        multiply_into(values_[k], value(nd.parent), f);
      else
        multiply_into(values_[k], f, value(nd.parent));
    }
  }

  std::complex<double> trace_of(std::size_t word) const {
    auto [l, r] = plan_.words[word];
    return trace_pair(value(l), r < 0 ? nullptr : &value(r));
  }

 private:
  const BlockSparse& value(int node) const {
    const auto& nd = plan_.nodes[static_cast<std::size_t>(node)];
    return nd.parent < 0 ? atoms_[static_cast<std::size_t>(nd.atom)] : values_[static_cast<std::size_t>(node)];
  }

  void load_factor(BlockSparse& m, const MatrixFactor& f, const ComplexMatrix& y) const {
    const int p = f.p, q = f.q;
    const int op = layout_.offset(p), oq = layout_.offset(q);
    const int np = layout_.size(p), nq = layout_.size(q);
    if (dense_) {
      ComplexMatrix& d = m.at(0, 0);
      d.setZero(layout_.n(), layout_.n());
      if (f.unit) {
        d.diagonal().segment(op, np).setOnes();
        d.diagonal().segment(oq, nq).setOnes();
      } else {
        d.block(op, oq, np, nq) = y.block(op, oq, np, nq);
        d.block(oq, op, nq, np) = y.block(oq, op, nq, np);
      }
      return;
    }
    if (f.unit) {
      m.at(p - 1, p - 1).setIdentity(np, np);
      m.at(q - 1, q - 1).setIdentity(nq, nq);
    } else {
      m.at(p - 1, q - 1) = y.block(op, oq, np, nq);
      m.at(q - 1, p - 1) = y.block(oq, op, nq, np);
    }
  }

  // Normalized trace of l (or of l * r).
  std::complex<double> trace_pair(const BlockSparse& l, const BlockSparse* r) const {
    if (dense_) {
      const int off = trace_.q == 0 ? 0 : layout_.offset(trace_.q);
      const int len = trace_.q == 0 ? layout_.n() : layout_.size(trace_.q);
      const ComplexMatrix& a = l.at(0, 0);
      std::complex<double> t =
          r ? a.middleRows(off, len).cwiseProduct(r->at(0, 0).middleCols(off, len).transpose()).sum()
            : a.diagonal().segment(off, len).sum();
      return t / static_cast<double>(len);
    }
    auto row_sum = [&](int q) {
      std::complex<double> t = 0.0;
      if (!r) {
        if (l.has(q, q)) t += l.at(q, q).trace();
        return t;
      }
      for (int b = 0; b < grid_; ++b)
        if (l.has(q, b) && r->has(b, q)) t += l.at(q, b).cwiseProduct(r->at(b, q).transpose()).sum();
      return t;
    };
    if (trace_.q == 0) {
      std::complex<double> s = 0.0;
      for (int q = 0; q < grid_; ++q) s += row_sum(q);
      return s / static_cast<double>(layout_.n());
    }
    return row_sum(trace_.q - 1) / static_cast<double>(layout_.size(trace_.q));
  }

  const ProductPlan& plan_;
  const BlockLayout& layout_;
  TraceMode trace_;
  bool dense_;
  int grid_ = 1;
  std::vector<BlockSparse> atoms_;
  std::vector<BlockSparse> values_;
};

// Count, mean and sum of squared deviations; merged with the pairwise
// update so that a fixed merge order gives fixed bits.
struct Running {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    count += 1.0;
    double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  static Running merge(const Running& a, const Running& b) {
    if (a.count == 0.0) return b;
    if (b.count == 0.0) return a;
    Running out;
    out.count = a.count + b.count;
    double d = b.mean - a.mean;
    out.mean = a.mean + d * (b.count / out.count);
    out.m2 = a.m2 + b.m2 + d * d * (a.count * b.count / out.count);
    return out;
  }
};

struct ChunkResult {
  std::vector<Running> re;
  std::vector<Running> im;
};

ChunkResult merge_range(const std::vector<ChunkResult>& chunks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return chunks[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  ChunkResult a = merge_range(chunks, lo, mid);
  ChunkResult b = merge_range(chunks, mid, hi);
  for (std::size_t k = 0; k < a.re.size(); ++k) {
    a.re[k] = Running::merge(a.re[k], b.re[k]);
    a.im[k] = Running::merge(a.im[k], b.im[k]);
  }
  return a;
}

constexpr long kChunkTrials = 32;

}  // namespace

std::vector<MomentEstimate> mc_moments(const std::vector<MatrixWord>& words, const BlockLayout& layout,
                                       const VarianceProfile& profile, const McOptions& options) {
  check_compatible(layout, profile);
  if (options.trials < 2) throw ArgumentError("Monte Carlo needs at least 2 trials");
  if (!profile.symmetric()) throw ArgumentError("Hermitian sampling needs a symmetric U");
  if (options.trace.q < 0 || options.trace.q > layout.r())
    throw ArgumentError(fmt::format("partial trace index {} outside [1, {}]", options.trace.q, layout.r()));
  for (const auto& w : words) {
    if (w.empty()) throw ArgumentError("empty matrix word");
    for (const auto& f : w) check_labels(layout, f.p, f.q);
  }

  const ProductPlan plan(words);
  const long nchunks = (options.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkResult> chunks(static_cast<std::size_t>(nchunks));
  std::atomic<long> next{0};
  auto worker = [&] {
    TrialEvaluator eval(plan, layout, options.trace);
    for (long c = next++; c < nchunks; c = next++) {
      ChunkResult res{std::vector<Running>(words.size()), std::vector<Running>(words.size())};
      const long first = c * kChunkTrials;
      const long last = std::min(options.trials, first + kChunkTrials);
      for (long t = first; t < last; ++t) {
        auto rng = trial_rng(options.seed, static_cast<std::uint64_t>(t));
        ComplexMatrix y = sample_matrix(layout, profile, rng, options.model);
        eval.load(y);
        for (std::size_t k = 0; k < words.size(); ++k) {
          auto v = eval.trace_of(k);
          res.re[k].push(v.real());
          res.im[k].push(v.imag());
        }
      }
      chunks[static_cast<std::size_t>(c)] = std::move(res);
    }
  };
  int threads = options.threads > 0 ? options.threads : default_thread_count();
  threads = static_cast<int>(std::min<long>(threads, nchunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ChunkResult total = merge_range(chunks, 0, chunks.size());
  std::vector<MomentEstimate> out;
  const double n = static_cast<double>(options.trials);
  for (std::size_t k = 0; k < words.size(); ++k) {
    MomentEstimate e;
    e.mean = total.re[k].mean;
    e.std_error = std::sqrt(total.re[k].m2 / (n - 1) / n);
    e.imag_mean = total.im[k].mean;
    e.imag_stderr = std::sqrt(total.im[k].m2 / (n - 1) / n);
    e.trials = options.trials;
    e.seed = options.seed;
    e.target = fmt::format("tau[{}]({})", options.trace.str(), word_string(words[k]));
    out.push_back(std::move(e));
  }
  return out;
}

MomentEstimate mc_mixed_moment(const BlockLabelWord& word, const BlockLayout& layout, const VarianceProfile& profile,
                               const McOptions& options) {
  return mc_moments({block_word(word)}, layout, profile, options).front();
}

}  // namespace pseudomat
