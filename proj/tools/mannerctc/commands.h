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

// Subcommands of the mannerctc tool. Each returns the process exit status;
// results go to `out`, diagnostics to `err`.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "mannerctc/alphabet.h"
#include "mannerctc/io.h"
#include "mannerctc/report.h"
#include "mannerctc/synth.h"

namespace mannerctc::cli {

struct SynthOptions {
  std::optional<std::string> text;
  std::optional<std::filesystem::path> text_file;
  std::optional<std::filesystem::path> alphabet;
  std::optional<std::filesystem::path> manner_map;
  std::filesystem::path out;
  // Manner stream projected from the character matrix before suppression.
  std::optional<std::filesystem::path> manner_out;
  SynthSpec spec;
  // (peak occurrence, factor)
  std::optional<std::pair<std::size_t, double>> suppress;
};

struct DecodeOptions {
  std::string mode = "greedy";  // "greedy" or "manner"
  std::filesystem::path char_posteriors;
  std::optional<std::filesystem::path> manner_posteriors;
  bool derive_manner = false;
  bool split_on_class_change = false;
  bool human = false;
  std::optional<std::filesystem::path> alphabet;
  std::optional<std::filesystem::path> manner_map;
};

struct EvalOptions {
  std::filesystem::path manifest;
  io::ReportFormat format = io::ReportFormat::kText;
  std::optional<std::filesystem::path> report_out;
  std::size_t jobs = 1;
  bool split_on_class_change = false;
  bool derive_manner = false;
  bool with_mer = false;
  std::optional<std::filesystem::path> alphabet;
  std::optional<std::filesystem::path> manner_map;
};

struct LossOptions {
  std::filesystem::path posteriors;
  std::string target;
  std::optional<std::filesystem::path> grad_out;
};

struct MapOptions {
  std::string text;
  std::optional<std::filesystem::path> manner_map;
  bool human = false;
};

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);
int cmd_decode(const DecodeOptions& options, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);
int cmd_loss(const LossOptions& options, std::ostream& out, std::ostream& err);
int cmd_map(const MapOptions& options, std::ostream& out, std::ostream& err);

// Scores every manifest entry with both decoders, in manifest order.
// `jobs` worker threads share the work; the result does not depend on it.
// Throws std::runtime_error naming the first failing id.
io::Report evaluate_manifest(const EvalOptions& options);

// Parses argv and dispatches to one of the commands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mannerctc::cli
