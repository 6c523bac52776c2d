// Copyright 2026 The mannerctc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mannerctc/metrics.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mannerctc {
namespace {

bool is_whitespace(std::string_view cp) {
  return cp == " " || cp == "\t" || cp == "\n" || cp == "\r" || cp == "\f" || cp == "\v";
}

}  // namespace

double EditStats::rate() const {
  if (ref_len == 0) {
    if (errors() == 0) return 0.0;
    throw std::domain_error("error rate is undefined for an empty reference and a non-empty hypothesis");
  }
  return static_cast<double>(errors()) / static_cast<double>(ref_len);
}

EditStats& EditStats::operator+=(const EditStats& other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  ref_len += other.ref_len;
  return *this;
}

EditStats edit_ops(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // cost[i][j]: distance between ref[0, i) and hyp[0, j).
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diagonal = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diagonal, at(i, j - 1) + 1, at(i - 1, j) + 1});
    }
  }

  EditStats stats;
  stats.ref_len = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++stats.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      ++stats.insertions;
      --j;
    } else {
      ++stats.deletions;
      --i;
    }
  }
  return stats;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (const std::string& cp : split_code_points(text)) {
    if (is_whitespace(cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current += cp;
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> char_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  bool pending_space = false;
  for (const std::string& cp : split_code_points(text)) {
    if (is_whitespace(cp) || cp == kSpaceToken) {
      pending_space = !tokens.empty();
      continue;
    }
    if (pending_space) tokens.emplace_back(" ");
    pending_space = false;
    tokens.push_back(cp);
  }
  return tokens;
}

EditStats word_stats(std::string_view ref, std::string_view hyp) {
  return edit_ops(word_tokens(ref), word_tokens(hyp));
}

EditStats char_stats(std::string_view ref, std::string_view hyp) {
  return edit_ops(char_tokens(ref), char_tokens(hyp));
}

EditStats manner_stats(std::string_view ref_chars, std::string_view hyp_manner, const MannerMap& map) {
  std::vector<std::string> ref;
  for (std::string& token : char_tokens(ref_chars)) {
    if (token == " ") {
      ref.push_back(std::move(token));
      continue;
    }
    auto manner = map.lookup(token);
    if (!manner) throw std::invalid_argument("reference symbol '" + token + "' has no manner of articulation");
    if (*manner == MannerClass::kDelete) continue;
    ref.emplace_back(manner_token(*manner));
  }
  return edit_ops(ref, char_tokens(hyp_manner));
}

double wer(std::string_view ref, std::string_view hyp) { return word_stats(ref, hyp).rate(); }

double cer(std::string_view ref, std::string_view hyp) { return char_stats(ref, hyp).rate(); }

double mer(std::string_view ref_chars, std::string_view hyp_manner, const MannerMap& map) {
  return manner_stats(ref_chars, hyp_manner, map).rate();
}

}  // namespace mannerctc
