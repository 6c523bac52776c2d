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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mannerctc/alphabet.h"

namespace mannerctc {

struct EditStats {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_len = 0;

  std::size_t errors() const { return substitutions + insertions + deletions; }

  // errors() / ref_len. 0 for an empty, error-free pair; throws
  // std::domain_error when ref_len is 0 but errors() is not. Not clamped
  // to 1.
  double rate() const;

  EditStats& operator+=(const EditStats& other);
  friend bool operator==(const EditStats&, const EditStats&) = default;
};

// Minimal Levenshtein alignment. Among co-optimal alignments the backtrace
// prefers substitution (or match), then insertion, then deletion; this only
// changes the breakdown, never errors().
EditStats edit_ops(std::span<const std::string> ref, std::span<const std::string> hyp);

// Whitespace-separated words.
std::vector<std::string> word_tokens(std::string_view text);

// Code points, with leading/trailing whitespace dropped and internal
// whitespace runs folded into a single " " token. ">" counts as whitespace,
// so machine-rendered transcripts score the same as human ones.
std::vector<std::string> char_tokens(std::string_view text);

EditStats word_stats(std::string_view ref, std::string_view hyp);
EditStats char_stats(std::string_view ref, std::string_view hyp);

// The reference is character text and is mapped to manner symbols first;
// the hypothesis is already manner text ("VNV", "V>N" or "V N").
EditStats manner_stats(std::string_view ref_chars, std::string_view hyp_manner, const MannerMap& map);

double wer(std::string_view ref, std::string_view hyp);
double cer(std::string_view ref, std::string_view hyp);
double mer(std::string_view ref_chars, std::string_view hyp_manner, const MannerMap& map);

}  // namespace mannerctc
