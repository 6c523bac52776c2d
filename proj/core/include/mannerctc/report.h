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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mannerctc/metrics.h"

namespace mannerctc::io {

struct MethodScores {
  std::string hypothesis;
  EditStats words;
  EditStats chars;

  friend bool operator==(const MethodScores&, const MethodScores&) = default;
};

struct UtteranceScores {
  std::string id;
  std::string reference;
  MethodScores baseline;  // best-path decoding
  MethodScores proposed;  // manner-guided decoding
  // Manner stream alone against the manner-mapped reference.
  std::optional<std::string> manner_hypothesis;
  std::optional<EditStats> manner;

  friend bool operator==(const UtteranceScores&, const UtteranceScores&) = default;
};

struct PooledScores {
  EditStats baseline_words;
  EditStats baseline_chars;
  EditStats proposed_words;
  EditStats proposed_chars;
  std::optional<EditStats> manner;
};

struct Report {
  std::vector<UtteranceScores> utterances;

  // Edit counts summed over utterances; rates are then total edits over
  // total reference length.
  PooledScores pooled() const;
};

enum class ReportFormat { kText, kJson, kCsv };

std::optional<ReportFormat> parse_report_format(std::string_view name);

// Rates are percentages with one decimal in text and CSV; JSON carries
// exact fractions and the underlying counts.
std::string render_report(const Report& report, ReportFormat format);
void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

// Pooled Baseline/Proposed lines only.
std::string render_summary(const Report& report);

// "8.9" for 0.089; "n/a" when the rate is undefined.
std::string percent(const EditStats& stats);

}  // namespace mannerctc::io
