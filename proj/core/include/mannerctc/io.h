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

// Text formats.
//
// Posterior file (UTF-8, '\n' line endings):
//
//   #labels:<,A,B,>
//   #frames:3
//   0.10000000000000001,0.80000000000000004,0.050000000000000003,0.050000000000000003
//   ...
//
// Optional metadata lines may follow "#frames:" before the first data row:
// "#kind:posterior" or "#kind:gradient", and "#frame_shift_ms:<value>".
// Values are written with 17 significant digits.
//
// Manifest: one JSON object per line with "id", "char_posteriors",
// "reference" and optionally "manner_posteriors". Relative paths are
// resolved against the manifest's directory.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mannerctc/alphabet.h"
#include "mannerctc/matrix.h"

namespace mannerctc::io {

// Thrown for malformed or unreadable files; the message names the file and
// line where possible.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double value);

std::string serialize_posteriors(const PosteriorMatrix& posteriors);
PosteriorMatrix parse_posteriors(std::string_view text, std::string_view source = "<memory>");

void write_posteriors(const PosteriorMatrix& posteriors, const std::filesystem::path& path);
PosteriorMatrix read_posteriors(const std::filesystem::path& path);

// Same layout with "#kind:gradient"; rows are not normalized.
std::string serialize_gradient(const Matrix& gradient, const Alphabet& alphabet);
void write_gradient(const Matrix& gradient, const Alphabet& alphabet, const std::filesystem::path& path);

struct ManifestEntry {
  std::string id;
  std::filesystem::path char_posteriors;
  std::optional<std::filesystem::path> manner_posteriors;
  std::string reference;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

// `base_dir` resolves relative paths; referenced files must exist.
std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                                          std::string_view source = "<memory>");
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::string serialize_manifest_entry(const ManifestEntry& entry);

std::string read_file(const std::filesystem::path& path);
// Throws FormatError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace mannerctc::io
