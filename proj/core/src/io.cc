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

#include "mannerctc/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mannerctc::io {
namespace {

constexpr std::string_view kLabelsPrefix = "#labels:";
constexpr std::string_view kFramesPrefix = "#frames:";
constexpr std::string_view kKindPrefix = "#kind:";
constexpr std::string_view kFrameShiftPrefix = "#frame_shift_ms:";

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  throw FormatError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view field, std::string_view source, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail(source, line, "bad number '" + std::string(field) + "'");
  return value;
}

std::string serialize_rows(const Matrix& values, const Alphabet& alphabet, std::string_view kind,
                           std::optional<double> frame_shift_ms) {
  std::string out(kLabelsPrefix);
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    if (k > 0) out += ',';
    out += alphabet.label(k);
  }
  out += '\n';
  out += kFramesPrefix;
  out += std::to_string(values.rows());
  out += '\n';
  if (!kind.empty()) {
    out += kKindPrefix;
    out += kind;
    out += '\n';
  }
  if (frame_shift_ms) {
    out += kFrameShiftPrefix;
    out += format_double(*frame_shift_ms);
    out += '\n';
  }
  for (std::size_t t = 0; t < values.rows(); ++t) {
    for (std::size_t k = 0; k < values.cols(); ++k) {
      if (k > 0) out += ',';
      out += format_double(values(t, k));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string serialize_posteriors(const PosteriorMatrix& posteriors) {
  return serialize_rows(posteriors.values(), posteriors.alphabet(), "", posteriors.frame_shift_ms());
}

std::string serialize_gradient(const Matrix& gradient, const Alphabet& alphabet) {
  if (gradient.cols() != alphabet.size()) throw std::invalid_argument("gradient width does not match alphabet");
  return serialize_rows(gradient, alphabet, "gradient", std::nullopt);
}

PosteriorMatrix parse_posteriors(std::string_view text, std::string_view source) {
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty() || !lines[0].starts_with(kLabelsPrefix)) fail(source, 1, "expected '#labels:' header");
  if (lines.size() < 2 || !lines[1].starts_with(kFramesPrefix)) fail(source, 2, "expected '#frames:' header");

  std::optional<Alphabet> alphabet;
  try {
    std::vector<std::string> labels;
    for (std::string_view token : split_commas(lines[0].substr(kLabelsPrefix.size()))) labels.emplace_back(token);
    if (labels.empty() || labels.front() != kBlankToken) fail(source, 1, "blank '<' must be the first label");
    alphabet.emplace(std::move(labels));
  } catch (const std::invalid_argument& e) {
    fail(source, 1, e.what());
  }

  std::size_t frames = 0;
  {
    std::string_view count = lines[1].substr(kFramesPrefix.size());
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), frames);
    if (ec != std::errc() || ptr != count.data() + count.size()) {
      fail(source, 2, "bad frame count '" + std::string(count) + "'");
    }
  }

  std::size_t line_no = 2;
  std::optional<double> frame_shift_ms;
  while (line_no < lines.size() && lines[line_no].starts_with("#")) {
    std::string_view line = lines[line_no];
    if (line.starts_with(kKindPrefix)) {
      std::string_view kind = line.substr(kKindPrefix.size());
      if (kind != "posterior") fail(source, line_no + 1, "expected a posterior file, found kind '" + std::string(kind) + "'");
    } else if (line.starts_with(kFrameShiftPrefix)) {
      frame_shift_ms = parse_double(line.substr(kFrameShiftPrefix.size()), source, line_no + 1);
    } else {
      fail(source, line_no + 1, "unknown header '" + std::string(line) + "'");
    }
    ++line_no;
  }

  // A single trailing empty line comes from the final newline.
  std::size_t last = lines.size();
  if (last > line_no && lines[last - 1].empty()) --last;
  if (last - line_no != frames) {
    fail(source, line_no + 1,
         "header declares " + std::to_string(frames) + " frames but " + std::to_string(last - line_no) + " rows follow");
  }

  Matrix values(frames, alphabet->size());
  for (std::size_t t = 0; t < frames; ++t, ++line_no) {
    const auto fields = split_commas(lines[line_no]);
    if (fields.size() != alphabet->size()) {
      fail(source, line_no + 1,
           "row has " + std::to_string(fields.size()) + " values, expected " + std::to_string(alphabet->size()));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) values(t, k) = parse_double(fields[k], source, line_no + 1);
  }
  try {
    return PosteriorMatrix(std::move(*alphabet), std::move(values), frame_shift_ms);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string(source) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

void write_posteriors(const PosteriorMatrix& posteriors, const std::filesystem::path& path) {
  write_file(path, serialize_posteriors(posteriors));
}

PosteriorMatrix read_posteriors(const std::filesystem::path& path) {
  return parse_posteriors(read_file(path), path.string());
}

void write_gradient(const Matrix& gradient, const Alphabet& alphabet, const std::filesystem::path& path) {
  write_file(path, serialize_gradient(gradient, alphabet));
}

std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                                          std::string_view source) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> ids;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string_view::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      fail(source, i + 1, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) fail(source, i + 1, "record is not a JSON object");

    auto text_field = [&](const char* name) -> std::optional<std::string> {
      auto it = record.find(name);
      if (it == record.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) fail(source, i + 1, std::string("field '") + name + "' must be a string");
      return it->get<std::string>();
    };
    auto required = [&](const char* name) {
      auto value = text_field(name);
      if (!value) fail(source, i + 1, std::string("missing required field '") + name + "'");
      return *value;
    };
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      if (path.is_relative()) path = base_dir / path;
      if (!std::filesystem::exists(path)) fail(source, i + 1, "referenced file '" + path.string() + "' does not exist");
      return path;
    };

    ManifestEntry entry;
    entry.id = required("id");
    entry.char_posteriors = resolve(required("char_posteriors"));
    entry.reference = required("reference");
    if (auto manner = text_field("manner_posteriors")) entry.manner_posteriors = resolve(*manner);
    if (!ids.insert(entry.id).second) fail(source, i + 1, "duplicate id '" + entry.id + "'");
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path(), path.string());
}

std::string serialize_manifest_entry(const ManifestEntry& entry) {
  nlohmann::ordered_json record;
  record["id"] = entry.id;
  record["char_posteriors"] = entry.char_posteriors.generic_string();
  if (entry.manner_posteriors) record["manner_posteriors"] = entry.manner_posteriors->generic_string();
  record["reference"] = entry.reference;
  return record.dump();
}

}  // namespace mannerctc::io
