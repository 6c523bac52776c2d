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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mannerctc {

using LabelIndex = std::size_t;

// A sequence of non-blank label indices into some Alphabet. Spaces are
// ordinary symbols here; adjacent equal symbols are allowed.
using Transcript = std::vector<LabelIndex>;

inline constexpr std::string_view kBlankToken = "<";
inline constexpr std::string_view kSpaceToken = ">";
inline constexpr LabelIndex kBlankIndex = 0;

// Ordered, immutable label inventory. Index 0 is always the blank "<" and
// the space ">" appears exactly once at a later index.
class Alphabet {
 public:
  // Validates the label list. A missing leading blank is prepended.
  // Throws std::invalid_argument on duplicates, reserved characters, a
  // misplaced blank, a missing space or fewer than two non-blank labels.
  explicit Alphabet(std::vector<std::string> labels);

  // One label token per line. Empty lines and a trailing '\r' are ignored.
  static Alphabet parse(std::string_view text);

  std::size_t size() const { return labels_.size(); }
  LabelIndex blank() const { return kBlankIndex; }
  LabelIndex space() const { return space_; }
  const std::string& label(LabelIndex index) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<LabelIndex> find(std::string_view token) const;

  // True when every label is a single UTF-8 code point. Such alphabets
  // render transcripts without separators ("VNV"); others separate tokens
  // with single spaces ("C3 C4 > C10").
  bool single_character() const { return single_character_; }

  // Turns text into a transcript. For single-character alphabets every
  // code point is a token and whitespace runs become one space symbol;
  // otherwise whitespace separates tokens. In both cases ">" denotes the
  // space symbol. Leading and trailing whitespace is dropped.
  // Throws std::invalid_argument naming the first unknown token.
  Transcript encode(std::string_view text) const;

  // Machine-facing rendering: space is written as ">". With `human` set the
  // space symbol is written as a literal ' ' instead.
  std::string render(const Transcript& transcript, bool human = false) const;

  // Text with the space symbol as ' ' and other labels concatenated.
  // Used for scoring.
  std::string to_text(const Transcript& transcript) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelIndex> index_;
  LabelIndex space_ = 0;
  bool single_character_ = true;
};

// blank, apostrophe, A..Z, space: 29 labels.
const Alphabet& default_character_alphabet();

// blank, V, $, N, F, S, space: 7 labels.
const Alphabet& manner_alphabet();

enum class MannerClass { kVowel, kSemiVowel, kNasal, kFricative, kStop, kDelete };

// "V", "$", "N", "F", "S" or "DELETE".
std::string_view manner_token(MannerClass manner);
std::optional<MannerClass> parse_manner_class(std::string_view token);

// Character label -> manner class. Space is handled implicitly and is never
// stored; blank is never part of the domain.
class MannerMap {
 public:
  MannerMap() = default;
  explicit MannerMap(std::map<std::string, MannerClass> entries);

  // Lines of "CHAR<TAB>CLASS"; blank lines and lines starting with '#' are
  // skipped.
  static MannerMap parse(std::string_view text);

  std::optional<MannerClass> lookup(std::string_view token) const;
  const std::map<std::string, MannerClass>& entries() const { return entries_; }

  // Throws std::invalid_argument naming the first label of `alphabet`
  // (other than blank and space) that has no entry.
  void check_covers(const Alphabet& alphabet) const;

 private:
  std::map<std::string, MannerClass> entries_;
};

const MannerMap& default_manner_map();

// Position-wise substitution into manner_alphabet(). DELETE-mapped symbols
// are dropped, spaces are kept. Throws std::invalid_argument for blanks and
// for symbols outside the map's domain.
Transcript map_transcript_to_manner(const Transcript& transcript,
                                    const Alphabet& characters,
                                    const MannerMap& map);

// Splits UTF-8 text into code points. Invalid sequences are passed through
// byte by byte.
std::vector<std::string> split_code_points(std::string_view text);

}  // namespace mannerctc
