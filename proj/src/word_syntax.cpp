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

#include "pseudomat/word_syntax.hpp"

#include <cctype>
#include <charconv>
#include <fmt/format.h>

#include "pseudomat/errors.hpp"

namespace pseudomat {
namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

int parse_int(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ArgumentError(fmt::format("malformed integer '{}' in '{}'", s, context));
  return v;
}

}  // namespace

BlockLabelWord parse_word(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw ArgumentError("empty word");
  BlockLabelWord word;
  char open = s.front();
  if (open != '(' && open != '{') throw ArgumentError(fmt::format("word '{}' must start with '(' or '{{'", text));
  word.symmetric = open == '{';
  const char close = word.symmetric ? '}' : ')';
  std::size_t k = 0;
  while (k < s.size()) {
    if (s[k] != open) throw ArgumentError(fmt::format("word '{}': expected '{}' at position {}", text, open, k));
    auto end = s.find(close, k);
    if (end == std::string::npos) throw ArgumentError(fmt::format("word '{}': unclosed '{}'", text, open));
    std::string_view body(s.data() + k + 1, end - k - 1);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ArgumentError(fmt::format("word '{}': label needs two indices", text));
    Label l{parse_int(body.substr(0, comma), text), parse_int(body.substr(comma + 1), text)};
    if (l.p < 1 || l.q < 1) throw ArgumentError(fmt::format("word '{}': indices start at 1", text));
    word.entries.push_back(l);
    k = end + 1;
  }
  return word;
}

std::string format_word(const BlockLabelWord& word) {
  std::string s;
  for (const auto& l : word.entries)
    s += word.symmetric ? fmt::format("{{{},{}}}", l.p, l.q) : fmt::format("({},{})", l.p, l.q);
  return s;
}

FockState StateSpec::fock(const MomentMatrix& params) const {
  if (weighted) return FockState::weighted(params);
  if (j == 0) return FockState::vacuum();
  if (j > params.r()) throw ArgumentError(fmt::format("state psi:{} outside [1, {}]", j, params.r()));
  return FockState::vector(j);
}

std::string StateSpec::str() const {
  if (weighted) return "psi";
  return j == 0 ? "phi" : fmt::format("psi:{}", j);
}

StateSpec parse_state(std::string_view text) {
  const std::string s = strip(text);
  if (s == "phi") return {0, false};
  if (s == "psi") return {0, true};
  if (s.rfind("psi:", 0) == 0) {
    int j = parse_int(std::string_view(s).substr(4), text);
    if (j < 1) throw ArgumentError(fmt::format("state '{}': index starts at 1", text));
    return {j, false};
  }
  throw ArgumentError(fmt::format("unknown state '{}' (expected phi, psi or psi:j)", text));
}

TraceMode parse_trace(std::string_view text) {
  const std::string s = strip(text);
  if (s == "full") return TraceMode::full();
  if (s.rfind("partial:", 0) == 0) {
    int q = parse_int(std::string_view(s).substr(8), text);
    if (q < 1) throw ArgumentError(fmt::format("trace '{}': index starts at 1", text));
    return TraceMode::partial(q);
  }
  throw ArgumentError(fmt::format("unknown trace '{}' (expected full or partial:q)", text));
}

EntryModel parse_model(std::string_view text) {
  if (text == "circular") return EntryModel::Circular;
  if (text == "real") return EntryModel::Real;
  throw ArgumentError(fmt::format("unknown entry model '{}' (expected circular or real)", text));
}

ArrayShape parse_shape(std::string_view text, int r) {
  if (text == "square") return ArrayShape::square(r);
  if (text == "lower" || text == "lower-triangular") return ArrayShape::lower_triangular(r);
  if (text == "diagonal") return ArrayShape::diagonal(r);
  throw ArgumentError(fmt::format("unknown shape '{}' (expected square, lower or diagonal)", text));
}

std::vector<int> parse_int_list(std::string_view text) {
  const std::string s = strip(text);
  std::vector<int> out;
  std::size_t k = 0;
  while (k <= s.size()) {
    auto end = s.find(',', k);
    if (end == std::string::npos) end = s.size();
    out.push_back(parse_int(std::string_view(s).substr(k, end - k), text));
    k = end + 1;
  }
  return out;
}

}  // namespace pseudomat
