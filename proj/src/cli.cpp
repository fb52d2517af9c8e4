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

#include "pseudomat/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "pseudomat/comb_moments.hpp"
#include "pseudomat/errors.hpp"
#include "pseudomat/fock.hpp"
#include "pseudomat/independence.hpp"
#include "pseudomat/partitions.hpp"
#include "pseudomat/randmat.hpp"
#include "pseudomat/word_syntax.hpp"

namespace pseudomat::cli {
namespace {

const std::vector<std::string> kCommands = {"partitions", "limit-moments", "fock-moment", "mixed", "symmetric-mixed",
                                            "mc",         "wick",          "check",       "compare"};

// ------------------------------------------------------------ tables

struct Cell {
  std::string text;
  std::optional<double> number;
  bool null = false;
};

Cell text(std::string s) { return {std::move(s), std::nullopt, false}; }
Cell number(double x) { return {fmt::format("{}", x), x, false}; }
Cell integer(long x) { return {std::to_string(x), static_cast<double>(x), false}; }
Cell exact(const Rational& q) { return text(to_string(q)); }
Cell null_cell() { return {"", std::nullopt, true}; }

struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  os << "# schema: " << t.schema << "\n";
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_field(t.columns[k]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(row[k].text);
    os << "\n";
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json j;
  j["schema"] = t.schema;
  j["columns"] = t.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Cell& c = row[k];
      if (c.null)
        r[t.columns[k]] = nullptr;
      else if (c.number)
        r[t.columns[k]] = *c.number;
      else
        r[t.columns[k]] = c.text;
    }
    rows.push_back(std::move(r));
  }
  os << j.dump(2) << "\n";
}

// ------------------------------------------------------------ inputs

int infer_r(const ExperimentConfig& c, const std::vector<BlockLabelWord>& words) {
  if (c.r > 0) return c.r;
  if (!c.u.empty()) {
    auto n = parse_rational_list(c.u).size();
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (static_cast<std::size_t>(r * r) != n) throw ArgumentError(fmt::format("--u has {} entries, not a square", n));
    return r;
  }
  int r = 0;
  for (const auto& w : words)
    for (const auto& l : w.entries) r = std::max({r, l.p, l.q});
  if (c.command == "mc" || c.command == "wick") r = std::max(r, static_cast<int>(c.sizes.size()));
  if (c.command == "check" && !c.sizes.empty()) {
    int total = 0;
    for (int s : c.sizes) total += s;
    r = std::max(r, total);
  }
  return r > 0 ? r : 2;
}

MomentMatrix build_params(const ExperimentConfig& c, int r) {
  if (r < 1) throw ArgumentError("r must be at least 1");
  std::vector<Rational> u = c.u.empty() ? std::vector<Rational>(static_cast<std::size_t>(r * r), Rational(1))
                                        : parse_rational_list(c.u);
  std::vector<Rational> d;
  if (c.d.empty()) {
    for (int q = 0; q < r; ++q) {
      Rational w(1, r);
      w.canonicalize();
      d.push_back(w);
    }
  } else {
    d = parse_rational_list(c.d);
  }
  if (u.size() != static_cast<std::size_t>(r * r))
    throw ArgumentError(fmt::format("--u needs {} entries for r = {}, got {}", r * r, r, u.size()));
  if (d.size() != static_cast<std::size_t>(r))
    throw ArgumentError(fmt::format("--d needs {} entries for r = {}, got {}", r, r, d.size()));
  return MomentMatrix(u, d, parse_shape(c.shape, r));
}

StateSpec state_of(const ExperimentConfig& c, const char* fallback) {
  if (!c.state.empty()) return parse_state(c.state);
  if (c.j == 0) return {0, false};
  if (c.j > 0) return {c.j, false};
  return parse_state(fallback);
}

std::vector<BlockLabelWord> words_of(const ExperimentConfig& c) {
  std::vector<BlockLabelWord> out;
  for (const auto& w : c.words) out.push_back(parse_word(w));
  return out;
}

void check_word_range(const BlockLabelWord& w, int r) {
  for (const auto& l : w.entries)
    if (l.p > r || l.q > r)
      throw ArgumentError(fmt::format("word {} uses an index outside [1, {}]", format_word(w), r));
}

std::vector<OperatorSpec> word_operators(const BlockLabelWord& w, bool truncated) {
  std::vector<OperatorSpec> ops;
  for (const auto& l : w.entries) {
    if (w.symmetric)
      ops.push_back(truncated ? OperatorSpec::sym_trunc_gauss(l.p, l.q)
                              : OperatorSpec::labeled(OpKind::SymGauss, l.p, l.q));
    else
      ops.push_back(truncated ? OperatorSpec::trunc_gauss(l.p, l.q) : OperatorSpec::gauss(l.p, l.q));
  }
  return ops;
}

bool truncated_for(const ExperimentConfig& c, const StateSpec& s) {
  if (c.truncated >= 0) return c.truncated == 1;
  return s.weighted || s.j != 0;
}

Rational comb_moment(const BlockLabelWord& w, const MomentMatrix& mm, const StateSpec& s) {
  if (w.symmetric) {
    if (s.weighted) return weighted_symmetric_mixed_limit_moment(w, mm);
    if (s.j == 0) throw ArgumentError("symmetric mixed moments need psi or psi:j");
    return symmetric_mixed_limit_moment(w, mm, s.j);
  }
  if (s.weighted) return weighted_mixed_limit_moment(w, mm);
  return mixed_limit_moment(w, mm, s.j);
}

std::vector<std::string> required_words(const ExperimentConfig& c) {
  if (c.words.empty()) throw ArgumentError(fmt::format("{} needs --word", c.command));
  return c.words;
}

// ------------------------------------------------------------ commands

Table cmd_partitions(const ExperimentConfig& c) {
  Table t{"pseudomat.partitions/1", {}, {}};
  if (c.max_m < 0) throw ArgumentError("--max-m must be non-negative");
  if (c.list) {
    t.columns = {"m", "index", "blocks"};
    for (int m = 2; m <= c.max_m; m += 2) {
      auto parts = enumerate_pair_partitions(m);
      for (std::size_t k = 0; k < parts.size(); ++k) {
        std::string b;
        for (const auto& blk : parts[k].blocks()) b += fmt::format("{{{},{}}}", blk.left, blk.right);
        t.rows.push_back({integer(m), integer(static_cast<long>(k + 1)), text(b)});
      }
    }
    return t;
  }
  t.columns = {"m", "count", "catalan"};
  for (int m = 2; m <= c.max_m; m += 2) {
    auto parts = enumerate_pair_partitions(m);
    t.rows.push_back({integer(m), integer(static_cast<long>(parts.size())), integer(static_cast<long>(catalan(m / 2)))});
  }
  return t;
}

Table cmd_limit_moments(const ExperimentConfig& c) {
  const MomentMatrix mm = build_params(c, infer_r(c, {}));
  const StateSpec s = state_of(c, "phi");
  Table t{"pseudomat.limit-moments/1", {"m", "moment", "value"}, {}};
  for (int m = 1; m <= c.max_m; ++m) {
    Rational v = s.weighted ? weighted_limit_moment(m, mm) : limit_moment(m, mm, s.j);
    t.rows.push_back({integer(m), exact(v), number(to_double(v))});
  }
  return t;
}

Table cmd_fock_moment(const ExperimentConfig& c) {
  const MomentMatrix mm = build_params(c, infer_r(c, {}));
  const StateSpec s = state_of(c, "phi");
  const bool trunc = truncated_for(c, s);
  const FockState st = s.fock(mm);
  Table t{"pseudomat.fock-moment/1", {"m", "state", "operator", "fock"}, {}};
  for (int m = 1; m <= c.max_m; ++m)
    t.rows.push_back({integer(m), text(s.str()), text(trunc ? "omega" : "zeta"),
                      number(pseudomatrix_moment(m, mm, st, trunc))});
  return t;
}

Table cmd_mixed(const ExperimentConfig& c, bool symmetric) {
  const auto words = words_of(c);
  required_words(c);
  for (const auto& w : words)
    if (w.symmetric != symmetric)
      throw ArgumentError(fmt::format("{} expects {} labels, got {}", c.command, symmetric ? "{p,q}" : "(p,q)",
                                      format_word(w)));
  const MomentMatrix mm = build_params(c, infer_r(c, words));
  const StateSpec s = state_of(c, symmetric ? "psi" : "phi");
  Table t{fmt::format("pseudomat.{}/1", c.command), {"word", "state", "moment", "value"}, {}};
  for (const auto& w : words) {
    check_word_range(w, mm.r());
    Rational v = comb_moment(w, mm, s);
    t.rows.push_back({text(format_word(w)), text(s.str()), exact(v), number(to_double(v))});
  }
  return t;
}

Table cmd_compare(const ExperimentConfig& c) {
  const auto words = words_of(c);
  const MomentMatrix mm = build_params(c, infer_r(c, words));
  Table t{"pseudomat.compare/1", {"word", "state", "comb", "fock", "abs_diff"}, {}};
  if (words.empty()) {
    const StateSpec s = state_of(c, "phi");
    const bool trunc = truncated_for(c, s);
    for (int m = 1; m <= c.max_m; ++m) {
      double comb = to_double(s.weighted ? weighted_limit_moment(m, mm) : limit_moment(m, mm, s.j));
      double fock = pseudomatrix_moment(m, mm, s.fock(mm), trunc);
      t.rows.push_back({text(fmt::format("m={}", m)), text(s.str()), number(comb), number(fock),
                        number(std::abs(comb - fock))});
    }
    return t;
  }
  for (const auto& w : words) {
    check_word_range(w, mm.r());
    const StateSpec s = state_of(c, w.symmetric ? "psi" : "phi");
    double comb = to_double(comb_moment(w, mm, s));
    auto ops = word_operators(w, truncated_for(c, s));
    double fock = moment(ops, s.fock(mm), mm);
    t.rows.push_back({text(format_word(w)), text(s.str()), number(comb), number(fock), number(std::abs(comb - fock))});
  }
  return t;
}

std::vector<BlockLayout> layouts_of(const ExperimentConfig& c, int r) {
  if (!c.sizes.empty()) {
    if (static_cast<int>(c.sizes.size()) != r)
      throw ArgumentError(fmt::format("--sizes needs {} blocks for r = {}", r, r));
    return {BlockLayout(c.sizes)};
  }
  if (c.n.empty()) throw ArgumentError(fmt::format("{} needs --n or --sizes", c.command));
  std::vector<BlockLayout> out;
  for (int n : c.n) {
    if (n < r) throw ArgumentError(fmt::format("n = {} is smaller than r = {}", n, r));
    out.push_back(BlockLayout::equal(n, r));
  }
  return out;
}

std::vector<BlockLabelWord> symmetric_words(const ExperimentConfig& c) {
  required_words(c);
  auto words = words_of(c);
  for (const auto& w : words)
    if (!w.symmetric)
      throw ArgumentError(fmt::format("random blocks are symmetric: write {} with {{p,q}} labels", format_word(w)));
  return words;
}

Table cmd_mc(const ExperimentConfig& c) {
  const auto words = symmetric_words(c);
  const MomentMatrix mm = build_params(c, infer_r(c, words));
  for (const auto& w : words) check_word_range(w, mm.r());
  const auto profile = VarianceProfile::from(mm);
  McOptions opts;
  opts.trials = c.trials;
  opts.seed = c.seed;
  opts.trace = parse_trace(c.trace);
  opts.model = parse_model(c.model);
  if (opts.trace.q > mm.r()) throw ArgumentError(fmt::format("trace {} outside [1, {}]", opts.trace.str(), mm.r()));
  const FockState limit_state = opts.trace.q == 0 ? FockState::weighted(mm) : FockState::vector(opts.trace.q);

  std::vector<double> limits;
  std::vector<MatrixWord> mws;
  for (const auto& w : words) {
    limits.push_back(moment(word_operators(w, true), limit_state, mm));
    mws.push_back(block_word(w));
  }
  Table t{"pseudomat.mc/1", {"n", "functional", "mc_mean", "mc_stderr", "wick_exact", "fock_limit", "abs_error"}, {}};
  for (const auto& layout : layouts_of(c, mm.r())) {
    auto est = mc_moments(mws, layout, profile, opts);
    for (std::size_t k = 0; k < words.size(); ++k) {
      Cell wick = null_cell();
      try {
        wick = number(to_double(wick_exact_moment(mws[k], layout, profile, opts.trace, opts.model)));
      } catch (const CapacityError&) {
      }
      t.rows.push_back({integer(layout.n()),
                        text(fmt::format("tau[{}]({})", opts.trace.str(), format_word(words[k]))),
                        number(est[k].mean), number(est[k].std_error), wick, number(limits[k]),
                        number(std::abs(est[k].mean - limits[k]))});
    }
  }
  return t;
}

Table cmd_wick(const ExperimentConfig& c) {
  const auto words = symmetric_words(c);
  const MomentMatrix mm = build_params(c, infer_r(c, words));
  for (const auto& w : words) check_word_range(w, mm.r());
  const auto profile = VarianceProfile::from(mm);
  const TraceMode trace = parse_trace(c.trace);
  const EntryModel model = parse_model(c.model);
  Table t{"pseudomat.wick/1", {"n", "functional", "wick_exact", "value"}, {}};
  for (const auto& layout : layouts_of(c, mm.r()))
    for (const auto& w : words) {
      Rational v = wick_exact_moment(w, layout, profile, trace, model);
      t.rows.push_back({integer(layout.n()), text(fmt::format("tau[{}]({})", trace.str(), format_word(w))), exact(v),
                        number(to_double(v))});
    }
  return t;
}

// Oracle, setup and families for each named property.
CheckReport cmd_check(const ExperimentConfig& c) {
  const MomentMatrix mm = build_params(c, infer_r(c, {}));
  const int r = mm.r();
  CheckOptions opt;
  opt.max_degree = c.max_degree;
  opt.tol = c.tol;
  const std::string& p = c.property;

  if (p == "free" || p == "monotone" || p == "boolean") {
    const StateSpec s = state_of(c, "phi");
    const bool trunc = truncated_for(c, s);
    std::vector<FockOracle::Label> labels;
    std::vector<int> fam;
    for (int q = 1; q <= r; ++q) {
      labels.push_back({fmt::format("x{}", q), row_sum_operator(q, mm.shape(), trunc), OperatorSpec::unit(q, q)});
      fam.push_back(q - 1);
    }
    FockOracle o(mm, labels, {s.fock(mm)}, {s.str()});
    if (p == "free") return check_freeness(fam, o, 0, opt);
    if (p == "monotone") return check_monotone(fam, o, 0, opt);
    return check_boolean(fam, o, 0, opt);
  }

  std::vector<FockOracle::Label> labels;
  std::vector<FockState> states;
  std::vector<std::string> names;
  ArraySetup setup;
  if (p == "matricial" || p == "truncated") {
    const bool trunc = p == "truncated";
    if (!trunc) {
      states.push_back(FockState::vacuum());
      names.push_back("phi");
      setup.diagonal_states.push_back({0, 0});
    }
    for (int q = 1; q <= r; ++q) {
      states.push_back(FockState::vector(q));
      names.push_back(fmt::format("psi:{}", q));
      if (trunc) setup.diagonal_states.push_back({q - 1, q});
    }
    const int offset = trunc ? -1 : 0;
    for (auto [i, j] : mm.shape().pairs()) {
      setup.labels.push_back({i, j, static_cast<int>(labels.size()), (!trunc && i == j) ? 0 : j + offset});
      labels.push_back({fmt::format("{}{}{}", trunc ? "w" : "z", i, j),
                        trunc ? OperatorSpec::trunc_gauss(i, j) : OperatorSpec::gauss(i, j),
                        OperatorSpec::labeled(trunc ? OpKind::TruncUnit : OpKind::Unit, i, j)});
    }
    FockOracle o(mm, labels, states, names);
    return check_matricial_freeness(setup, o, opt);
  }
  if (p == "symmetric") {
    for (int q = 1; q <= r; ++q) {
      states.push_back(FockState::vector(q));
      names.push_back(fmt::format("psi:{}", q));
      setup.diagonal_states.push_back({q - 1, q});
    }
    for (int i = 1; i <= r; ++i)
      for (int j = i; j <= r; ++j) {
        if (!mm.shape().contains(i, j) && !mm.shape().contains(j, i)) continue;
        setup.labels.push_back({i, j, static_cast<int>(labels.size()), j - 1});
        labels.push_back({fmt::format("W{}{}", i, j), OperatorSpec::sym_trunc_gauss(i, j),
                          OperatorSpec::labeled(OpKind::SymTruncUnit, i, j)});
      }
    FockOracle o(mm, labels, states, names);
    return check_symmetric_matricial_freeness(setup, o, opt);
  }
  if (p == "blocks") {
    if (c.sizes.empty()) throw ArgumentError("--property blocks needs --sizes for the grouping of [r]");
    std::vector<std::vector<int>> groups;
    int next = 1;
    for (int s : c.sizes) {
      if (s < 1) throw ArgumentError("--sizes entries must be positive");
      groups.emplace_back();
      for (int k = 0; k < s; ++k) groups.back().push_back(next++);
    }
    if (next - 1 != r) throw ArgumentError(fmt::format("--sizes must add up to r = {}", r));
    const int g = static_cast<int>(groups.size());
    for (int q = 1; q <= g; ++q) {
      std::vector<double> w(static_cast<std::size_t>(r), 0.0);
      for (int k : groups[static_cast<std::size_t>(q - 1)])
        w[static_cast<std::size_t>(k - 1)] = 1.0 / static_cast<double>(groups[static_cast<std::size_t>(q - 1)].size());
      states.push_back(FockState::weighted(w));
      names.push_back(fmt::format("psi:N{}", q));
      setup.diagonal_states.push_back({q - 1, q});
    }
    for (int a = 1; a <= g; ++a)
      for (int b = 1; b <= g; ++b) {
        const auto& rows = groups[static_cast<std::size_t>(a - 1)];
        const auto& cols = groups[static_cast<std::size_t>(b - 1)];
        setup.labels.push_back({a, b, static_cast<int>(labels.size()), b - 1});
        labels.push_back({fmt::format("S{}{}", a, b), block_sum_operator(rows, cols, mm.shape(), true),
                          OperatorSpec::block_unit(rows, cols)});
      }
    FockOracle o(mm, labels, states, names);
    return check_matricial_freeness(setup, o, opt);
  }
  throw ArgumentError(fmt::format(
      "unknown property '{}' (expected matricial, truncated, symmetric, blocks, free, monotone or boolean)", p));
}

Table check_table(const CheckReport& r) {
  return {"pseudomat.check/1",
          {"property", "verdict", "max_degree", "tol", "worst_violation", "checks", "violation_count"},
          {{text(r.property), text(r.verdict()), integer(r.max_degree), number(r.tol), number(r.worst),
            integer(static_cast<long>(r.checks)), integer(static_cast<long>(r.violation_count))}}};
}

// Writes to the configured file or to `out`.
template <class F>
void emit(const ExperimentConfig& c, std::ostream& out, F&& write) {
  if (c.output.empty()) {
    write(out);
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw ArgumentError(fmt::format("cannot open '{}' for writing", c.output));
  write(f);
  if (!f) throw ArgumentError(fmt::format("failed writing '{}'", c.output));
}

std::string destination(const ExperimentConfig& c) { return c.output.empty() ? "stdout" : c.output; }

// ------------------------------------------------------------ arguments

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

ExperimentConfig parse_arguments(const std::vector<std::string>& input) {
  std::vector<std::string> args = input;

  // The config file sits underneath explicit flags.
  nlohmann::json conf = nlohmann::json::object();
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::string path;
    if (args[k] == "--config" && k + 1 < args.size())
      path = args[k + 1];
    else if (args[k].rfind("--config=", 0) == 0)
      path = args[k].substr(9);
    else
      continue;
    std::ifstream f(path);
    if (!f) throw ArgumentError(fmt::format("cannot read config '{}'", path));
    try {
      conf = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError(fmt::format("malformed config '{}': {}", path, e.what()));
    }
    if (!conf.is_object()) throw ArgumentError(fmt::format("config '{}' must be a JSON object", path));
    break;
  }

  const bool has_command = !args.empty() && !args.front().empty() && args.front().front() != '-';
  if (has_command && std::find(kCommands.begin(), kCommands.end(), args.front()) == kCommands.end())
    throw ArgumentError(fmt::format("unknown subcommand '{}' (expected one of: {})", args.front(),
                                    fmt::join(kCommands, ", ")));
  if (!has_command && conf.contains("command")) args.insert(args.begin(), json_scalar(conf["command"]));

  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  std::vector<std::string> merged;
  if (!args.empty()) merged.push_back(args.front());
  for (const auto& [key, value] : conf.items()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "command" || flag == "config" || given.count(flag)) continue;
    if (value.is_boolean()) {
      if (flag == "truncated") {
        merged.push_back(value.get<bool>() ? "--truncated" : "--untruncated");
      } else if (value.get<bool>()) {
        merged.push_back("--" + flag);
      }
    } else if (value.is_array()) {
      if (flag == "word") {
        for (const auto& v : value) merged.insert(merged.end(), {"--word", json_scalar(v)});
      } else {
        std::vector<std::string> parts;
        for (const auto& v : value) parts.push_back(json_scalar(v));
        merged.insert(merged.end(), {"--" + flag, fmt::format("{}", fmt::join(parts, ","))});
      }
    } else {
      merged.insert(merged.end(), {"--" + flag, json_scalar(value)});
    }
  }
  merged.insert(merged.end(), args.begin() + (args.empty() ? 0 : 1), args.end());

  ExperimentConfig c;
  std::string config_path, n_text, sizes_text;
  bool truncated = false, untruncated = false;
  CLI::App app{"Limit moments, Fock-space operators and random block matrices.", "pseudomat"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--config", config_path, "JSON file with defaults for any flag");
  app.add_option("--r", c.r, "number of blocks");
  app.add_option("--u", c.u, "row-major variances, e.g. 1,1/2,1/2,1");
  app.add_option("--d", c.d, "dimension weights summing to 1");
  app.add_option("--shape", c.shape, "square, lower or diagonal");
  app.add_option("--state", c.state, "phi, psi:j or psi");
  app.add_option("--j", c.j, "0 for phi, k for psi:k");
  app.add_option("--max-m", c.max_m, "largest moment order");
  app.add_flag("--list", c.list, "list partitions instead of counting");
  app.add_flag("--truncated", truncated, "use the truncated operators");
  app.add_flag("--untruncated", untruncated, "use the full Gaussian operators");
  app.add_option("--word", c.words, "(p,q)... or {p,q}...; repeatable")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--n", n_text, "matrix sizes, comma separated");
  app.add_option("--sizes", sizes_text, "block sizes, comma separated");
  app.add_option("--trials", c.trials, "Monte Carlo trials");
  app.add_option("--seed", c.seed, "Monte Carlo seed");
  app.add_option("--trace", c.trace, "full or partial:q");
  app.add_option("--model", c.model, "circular or real");
  app.add_option("--property", c.property, "matricial, truncated, symmetric, blocks, free, monotone, boolean");
  app.add_option("--max-degree", c.max_degree, "largest degree for checks");
  app.add_option("--tol", c.tol, "check tolerance");
  app.add_option("--output", c.output, "output file (default stdout)");
  app.add_option("--format", c.format, "csv or json");
  app.add_flag("--strict", c.strict, "exit 3 when a check fails");
  const std::map<std::string, std::string> about = {
      {"partitions", "count or list non-crossing pair partitions"},
      {"limit-moments", "moments of the limit law from colored partitions"},
      {"fock-moment", "moments of the pseudomatrix operator on Fock space"},
      {"mixed", "mixed moment of an ordered block word"},
      {"symmetric-mixed", "mixed moment of a symmetric block word"},
      {"mc", "Monte Carlo moments of random block matrices"},
      {"wick", "exact finite-n expectation by Wick pairings"},
      {"check", "test an independence property up to a degree"},
      {"compare", "partition sums against Fock-space moments"},
  };
  for (const auto& name : kCommands) app.add_subcommand(name, about.at(name))->fallthrough();
  app.require_subcommand(1);

  try {
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    c.command = "help";
    c.output = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  if (truncated && untruncated) throw ArgumentError("--truncated and --untruncated conflict");
  if (truncated) c.truncated = 1;
  if (untruncated) c.truncated = 0;
  if (!n_text.empty()) c.n = parse_int_list(n_text);
  if (!sizes_text.empty()) c.sizes = parse_int_list(sizes_text);
  if (c.format != "csv" && c.format != "json") throw ArgumentError(fmt::format("unknown format '{}'", c.format));
  if (c.command == "check" && c.property.empty()) throw ArgumentError("check needs --property");
  return c;
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "check") {
    CheckReport r = cmd_check(c);
    emit(c, out, [&](std::ostream& os) {
      if (c.format == "json")
        os << r.to_json() << "\n";
      else
        write_csv(check_table(r), os);
    });
    err << fmt::format("{}: {} (worst {:.3g} over {} checks, {} violations) -> {}\n", r.property, r.verdict(), r.worst,
                       r.checks, r.violation_count, destination(c));
    return c.strict && !r.pass() ? kCheckFailed : kOk;
  }
  Table t;
  if (c.command == "partitions")
    t = cmd_partitions(c);
  else if (c.command == "limit-moments")
    t = cmd_limit_moments(c);
  else if (c.command == "fock-moment")
    t = cmd_fock_moment(c);
  else if (c.command == "mixed")
    t = cmd_mixed(c, false);
  else if (c.command == "symmetric-mixed")
    t = cmd_mixed(c, true);
  else if (c.command == "compare")
    t = cmd_compare(c);
  else if (c.command == "mc")
    t = cmd_mc(c);
  else if (c.command == "wick")
    t = cmd_wick(c);
  else
    throw ArgumentError(fmt::format("unknown subcommand '{}'", c.command));
  emit(c, out, [&](std::ostream& os) {
    if (c.format == "json")
      write_json(t, os);
    else
      write_csv(t, os);
  });
  err << fmt::format("{}: {} rows -> {}\n", c.command, t.rows.size(), destination(c));
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig c = parse_arguments(args);
    if (c.command == "help") {
      out << c.output;
      return kOk;
    }
    return run(c, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const ArgumentError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace pseudomat::cli
