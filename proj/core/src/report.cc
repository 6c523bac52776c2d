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

#include "mannerctc/report.h"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "mannerctc/io.h"

namespace mannerctc::io {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kPooledId = "ALL";

bool has_manner(const Report& report) {
  return std::any_of(report.utterances.begin(), report.utterances.end(),
                     [](const UtteranceScores& u) { return u.manner.has_value(); });
}

Json rate_json(const EditStats& stats) {
  if (stats.ref_len == 0 && stats.errors() > 0) return nullptr;
  return stats.rate();
}

Json edits_json(const EditStats& stats) {
  Json j;
  j["substitutions"] = stats.substitutions;
  j["insertions"] = stats.insertions;
  j["deletions"] = stats.deletions;
  j["ref_len"] = stats.ref_len;
  return j;
}

Json method_json(const EditStats& words, const EditStats& chars) {
  Json j;
  j["wer"] = rate_json(words);
  j["cer"] = rate_json(chars);
  j["word_edits"] = edits_json(words);
  j["char_edits"] = edits_json(chars);
  return j;
}

std::string pad(std::string_view text, std::size_t width) {
  std::string out(text);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

class TextTable {
 public:
  TextTable(std::size_t id_width, bool with_manner) : id_width_(id_width), with_manner_(with_manner) {}

  std::string header() const {
    std::string line = pad("Utterance", id_width_) + pad("Method", 10) + pad("%WER", 8) + pad("%CER", 8);
    if (with_manner_) line += "%MER";
    return trim(line);
  }

  std::string row(std::string_view id, std::string_view method, const EditStats& words, const EditStats& chars,
                  const std::optional<EditStats>& manner) const {
    std::string line = pad(id, id_width_) + pad(method, 10) + pad(percent(words), 8) + pad(percent(chars), 8);
    if (with_manner_) line += manner ? percent(*manner) : "-";
    return trim(line);
  }

 private:
  static std::string trim(std::string line) {
    line.erase(line.find_last_not_of(' ') + 1);
    return line + '\n';
  }

  std::size_t id_width_;
  bool with_manner_;
};

TextTable make_table(const Report& report) {
  std::size_t width = std::string_view("Utterance").size();
  for (const auto& u : report.utterances) width = std::max(width, u.id.size());
  return TextTable(width + 2, has_manner(report));
}

std::string pooled_rows(const Report& report, const TextTable& table) {
  if (report.utterances.empty()) return "";
  const PooledScores pooled = report.pooled();
  return table.row(kPooledId, "Baseline", pooled.baseline_words, pooled.baseline_chars, std::nullopt) +
         table.row(kPooledId, "Proposed", pooled.proposed_words, pooled.proposed_chars, pooled.manner);
}

std::string render_text(const Report& report) {
  const TextTable table = make_table(report);
  std::string out = table.header();
  for (const auto& u : report.utterances) {
    out += table.row(u.id, "Baseline", u.baseline.words, u.baseline.chars, std::nullopt);
    out += table.row(u.id, "Proposed", u.proposed.words, u.proposed.chars, u.manner);
  }
  return out + pooled_rows(report, table);
}

std::string csv_quote(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string render_csv(const Report& report) {
  std::string out = "id,method,wer_percent,cer_percent,mer_percent,word_errors,words,char_errors,chars,hypothesis\n";
  auto row = [&](std::string_view id, std::string_view method, const EditStats& words, const EditStats& chars,
                 const std::optional<EditStats>& manner, std::string_view hypothesis) {
    out += csv_quote(id) + ',' + std::string(method) + ',' + percent(words) + ',' + percent(chars) + ',' +
           (manner ? percent(*manner) : "") + ',' + std::to_string(words.errors()) + ',' +
           std::to_string(words.ref_len) + ',' + std::to_string(chars.errors()) + ',' +
           std::to_string(chars.ref_len) + ',' + csv_quote(hypothesis) + '\n';
  };
  for (const auto& u : report.utterances) {
    row(u.id, "baseline", u.baseline.words, u.baseline.chars, std::nullopt, u.baseline.hypothesis);
    row(u.id, "proposed", u.proposed.words, u.proposed.chars, u.manner, u.proposed.hypothesis);
  }
  if (!report.utterances.empty()) {
    const PooledScores pooled = report.pooled();
    row(kPooledId, "baseline", pooled.baseline_words, pooled.baseline_chars, std::nullopt, "");
    row(kPooledId, "proposed", pooled.proposed_words, pooled.proposed_chars, pooled.manner, "");
  }
  return out;
}

std::string render_json(const Report& report) {
  Json root;
  root["utterances"] = Json::array();
  for (const auto& u : report.utterances) {
    Json j;
    j["id"] = u.id;
    j["reference"] = u.reference;
    j["baseline"] = method_json(u.baseline.words, u.baseline.chars);
    j["baseline"]["hypothesis"] = u.baseline.hypothesis;
    j["proposed"] = method_json(u.proposed.words, u.proposed.chars);
    j["proposed"]["hypothesis"] = u.proposed.hypothesis;
    if (u.manner) {
      j["manner"]["hypothesis"] = u.manner_hypothesis.value_or("");
      j["manner"]["mer"] = rate_json(*u.manner);
      j["manner"]["edits"] = edits_json(*u.manner);
    }
    root["utterances"].push_back(std::move(j));
  }
  const PooledScores pooled = report.pooled();
  Json aggregate;
  aggregate["baseline"] = method_json(pooled.baseline_words, pooled.baseline_chars);
  aggregate["proposed"] = method_json(pooled.proposed_words, pooled.proposed_chars);
  if (pooled.manner) {
    aggregate["manner"]["mer"] = rate_json(*pooled.manner);
    aggregate["manner"]["edits"] = edits_json(*pooled.manner);
  }
  root["aggregate"] = std::move(aggregate);
  return root.dump(2) + '\n';
}

}  // namespace

PooledScores Report::pooled() const {
  PooledScores pooled;
  for (const auto& u : utterances) {
    pooled.baseline_words += u.baseline.words;
    pooled.baseline_chars += u.baseline.chars;
    pooled.proposed_words += u.proposed.words;
    pooled.proposed_chars += u.proposed.chars;
    if (u.manner) {
      if (!pooled.manner) pooled.manner.emplace();
      *pooled.manner += *u.manner;
    }
  }
  return pooled;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::kText;
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

std::string percent(const EditStats& stats) {
  if (stats.ref_len == 0 && stats.errors() > 0) return "n/a";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", 100.0 * stats.rate());
  return buffer;
}

std::string render_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kText: return render_text(report);
    case ReportFormat::kJson: return render_json(report);
    case ReportFormat::kCsv: return render_csv(report);
  }
  return {};
}

void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  write_file(path, render_report(report, format));
}

std::string render_summary(const Report& report) {
  const TextTable table = make_table(report);
  return table.header() + pooled_rows(report, table);
}

}  // namespace mannerctc::io
