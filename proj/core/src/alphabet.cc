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

#include "mannerctc/alphabet.h"

#include <stdexcept>
#include <utility>

namespace mannerctc {
namespace {

bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::size_t code_point_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

void validate_token(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("empty label");
  if (token.find_first_of("\n,\t") != std::string::npos) {
    throw std::invalid_argument("label '" + token +
                                "' contains a reserved separator (newline, comma or tab)");
  }
}

}  // namespace

std::vector<std::string> split_code_points(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = code_point_length(static_cast<unsigned char>(text[i]));
    if (i + len > text.size()) len = 1;
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(text[i + j]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> labels) {
  if (labels.empty() || labels.front() != kBlankToken) {
    labels.insert(labels.begin(), std::string(kBlankToken));
  }
  bool have_space = false;
  for (LabelIndex i = 0; i < labels.size(); ++i) {
    const std::string& token = labels[i];
    validate_token(token);
    if (token == kBlankToken && i != kBlankIndex) {
      throw std::invalid_argument("blank label '<' must come first");
    }
    if (!index_.emplace(token, i).second) {
      throw std::invalid_argument("duplicate label '" + token + "'");
    }
    if (token == kSpaceToken) {
      have_space = true;
      space_ = i;
    }
    if (split_code_points(token).size() != 1) single_character_ = false;
  }
  if (labels.size() < 3) {
    throw std::invalid_argument("alphabet needs at least 2 non-blank labels");
  }
  if (!have_space) throw std::invalid_argument("alphabet has no space label '>'");
  labels_ = std::move(labels);
}

Alphabet Alphabet::parse(std::string_view text) {
  std::vector<std::string> labels;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) labels.emplace_back(line);
    pos = end + 1;
  }
  return Alphabet(std::move(labels));
}

const std::string& Alphabet::label(LabelIndex index) const {
  if (index >= labels_.size()) {
    throw std::out_of_range("label index " + std::to_string(index) + " out of range for alphabet of size " +
                            std::to_string(labels_.size()));
  }
  return labels_[index];
}

std::optional<LabelIndex> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Transcript Alphabet::encode(std::string_view text) const {
  auto lookup = [&](const std::string& token) {
    auto index = find(token);
    if (!index) throw std::invalid_argument("symbol '" + token + "' is not in the alphabet");
    if (*index == kBlankIndex) throw std::invalid_argument("the blank '<' cannot appear in a transcript");
    return *index;
  };

  Transcript out;
  if (!single_character_) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space_char(text[i])) ++i;
      std::size_t start = i;
      while (i < text.size() && !is_space_char(text[i])) ++i;
      if (i > start) out.push_back(lookup(std::string(text.substr(start, i - start))));
    }
    return out;
  }

  // Whitespace runs are a pending space symbol that an explicit ">" on
  // either side absorbs.
  constexpr LabelIndex kWhitespace = static_cast<LabelIndex>(-1);
  std::vector<LabelIndex> raw;
  std::vector<bool> explicit_space;
  for (const std::string& cp : split_code_points(text)) {
    if (cp.size() == 1 && is_space_char(cp[0])) {
      if (raw.empty() || raw.back() != kWhitespace) {
        raw.push_back(kWhitespace);
        explicit_space.push_back(false);
      }
      continue;
    }
    raw.push_back(lookup(cp));
    explicit_space.push_back(cp == kSpaceToken);
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != kWhitespace) {
      out.push_back(raw[i]);
      continue;
    }
    if (i == 0 || i + 1 == raw.size()) continue;
    if (explicit_space[i - 1] || explicit_space[i + 1]) continue;
    out.push_back(space_);
  }
  return out;
}

std::string Alphabet::render(const Transcript& transcript, bool human) const {
  std::string out;
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    const LabelIndex symbol = transcript[i];
    if (!single_character_ && i > 0) out += ' ';
    if (symbol == space_ && human) {
      if (single_character_) out += ' ';
      continue;
    }
    out += label(symbol);
  }
  return out;
}

std::string Alphabet::to_text(const Transcript& transcript) const {
  std::string out;
  for (LabelIndex symbol : transcript) {
    if (symbol == space_) {
      out += ' ';
    } else {
      out += label(symbol);
    }
  }
  return out;
}

const Alphabet& default_character_alphabet() {
  static const Alphabet alphabet = [] {
    std::vector<std::string> labels{"<", "'"};
    for (char c = 'A'; c <= 'Z'; ++c) labels.emplace_back(1, c);
    labels.emplace_back(">");
    return Alphabet(std::move(labels));
  }();
  return alphabet;
}

const Alphabet& manner_alphabet() {
  static const Alphabet alphabet({"<", "V", "$", "N", "F", "S", ">"});
  return alphabet;
}

std::string_view manner_token(MannerClass manner) {
  switch (manner) {
    case MannerClass::kVowel: return "V";
    case MannerClass::kSemiVowel: return "$";
    case MannerClass::kNasal: return "N";
    case MannerClass::kFricative: return "F";
    case MannerClass::kStop: return "S";
    case MannerClass::kDelete: return "DELETE";
  }
  return "";
}

std::optional<MannerClass> parse_manner_class(std::string_view token) {
  for (MannerClass m : {MannerClass::kVowel, MannerClass::kSemiVowel, MannerClass::kNasal,
                        MannerClass::kFricative, MannerClass::kStop, MannerClass::kDelete}) {
    if (manner_token(m) == token) return m;
  }
  return std::nullopt;
}

MannerMap::MannerMap(std::map<std::string, MannerClass> entries) : entries_(std::move(entries)) {
  for (const auto& [token, manner] : entries_) {
    validate_token(token);
    if (token == kBlankToken || token == kSpaceToken) {
      throw std::invalid_argument("manner map cannot contain the reserved label '" + token + "'");
    }
  }
}

MannerMap MannerMap::parse(std::string_view text) {
  std::map<std::string, MannerClass> entries;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw std::invalid_argument("manner map line " + std::to_string(line_no) +
                                  ": expected CHAR<TAB>CLASS");
    }
    std::string token(line.substr(0, tab));
    auto manner = parse_manner_class(line.substr(tab + 1));
    if (!manner) {
      throw std::invalid_argument("manner map line " + std::to_string(line_no) + ": unknown class '" +
                                  std::string(line.substr(tab + 1)) + "'");
    }
    if (!entries.emplace(token, *manner).second) {
      throw std::invalid_argument("manner map line " + std::to_string(line_no) + ": duplicate entry for '" +
                                  token + "'");
    }
  }
  return MannerMap(std::move(entries));
}

std::optional<MannerClass> MannerMap::lookup(std::string_view token) const {
  auto it = entries_.find(std::string(token));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MannerMap::check_covers(const Alphabet& alphabet) const {
  for (LabelIndex i = 0; i < alphabet.size(); ++i) {
    if (i == alphabet.blank() || i == alphabet.space()) continue;
    if (!lookup(alphabet.label(i))) {
      throw std::invalid_argument("manner map has no entry for label '" + alphabet.label(i) + "'");
    }
  }
}

const MannerMap& default_manner_map() {
  static const MannerMap map = [] {
    std::map<std::string, MannerClass> entries;
    auto assign = [&](std::string_view letters, MannerClass manner) {
      for (char c : letters) entries.emplace(std::string(1, c), manner);
    };
    assign("AEIOU", MannerClass::kVowel);
    assign("WYRL", MannerClass::kSemiVowel);
    assign("MN", MannerClass::kNasal);
    assign("FVSZHX", MannerClass::kFricative);
    assign("BCDGJKPQT", MannerClass::kStop);
    entries.emplace("'", MannerClass::kDelete);
    return MannerMap(std::move(entries));
  }();
  return map;
}

Transcript map_transcript_to_manner(const Transcript& transcript, const Alphabet& characters,
                                    const MannerMap& map) {
  const Alphabet& manners = manner_alphabet();
  if (characters == manners) {
    throw std::invalid_argument("transcript is already over the manner alphabet");
  }
  Transcript out;
  out.reserve(transcript.size());
  for (LabelIndex symbol : transcript) {
    if (symbol == characters.space()) {
      out.push_back(manners.space());
      continue;
    }
    const std::string& token = characters.label(symbol);
    if (symbol == characters.blank()) {
      throw std::invalid_argument("transcript contains the blank label");
    }
    auto manner = map.lookup(token);
    if (!manner) throw std::invalid_argument("symbol '" + token + "' has no manner of articulation");
    if (*manner == MannerClass::kDelete) continue;
    out.push_back(*manners.find(manner_token(*manner)));
  }
  return out;
}

}  // namespace mannerctc
