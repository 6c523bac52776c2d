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

#include "mannerctc/commands.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mannerctc/ctc.h"
#include "mannerctc/decode.h"
#include "mannerctc/metrics.h"

namespace mannerctc::cli {
namespace {

Alphabet load_alphabet(const std::optional<std::filesystem::path>& path) {
  if (!path) return default_character_alphabet();
  return Alphabet::parse(io::read_file(*path));
}

MannerMap load_manner_map(const std::optional<std::filesystem::path>& path) {
  if (!path) return default_manner_map();
  return MannerMap::parse(io::read_file(*path));
}

// The posteriors must be over `expected` when an alphabet was given on the
// command line.
PosteriorMatrix load_posteriors(const std::filesystem::path& path, const std::optional<Alphabet>& expected) {
  PosteriorMatrix posteriors = io::read_posteriors(path);
  if (expected && !(posteriors.alphabet() == *expected)) {
    throw std::invalid_argument("'" + path.string() + "' is not over the registered alphabet");
  }
  return posteriors;
}

std::string trim_newlines(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

io::UtteranceScores evaluate_entry(const io::ManifestEntry& entry, const EvalOptions& options,
                                   const std::optional<Alphabet>& characters, const MannerMap& map) {
  const PosteriorMatrix char_posteriors = load_posteriors(entry.char_posteriors, characters);
  std::optional<PosteriorMatrix> manner_posteriors;
  if (entry.manner_posteriors) {
    manner_posteriors.emplace(load_posteriors(*entry.manner_posteriors, manner_alphabet()));
  } else if (options.derive_manner) {
    manner_posteriors.emplace(project_to_manner(char_posteriors, map));
  } else {
    throw std::invalid_argument("no manner posteriors (pass --derive-manner to project them)");
  }

  const Alphabet& alphabet = char_posteriors.alphabet();
  io::UtteranceScores scores;
  scores.id = entry.id;
  scores.reference = entry.reference;
  scores.baseline.hypothesis = alphabet.to_text(greedy_decode(char_posteriors));
  scores.proposed.hypothesis =
      alphabet.to_text(manner_guided_decode(*manner_posteriors, char_posteriors, options.split_on_class_change).final);
  for (io::MethodScores* method : {&scores.baseline, &scores.proposed}) {
    method->words = word_stats(entry.reference, method->hypothesis);
    method->chars = char_stats(entry.reference, method->hypothesis);
  }
  if (options.with_mer) {
    scores.manner_hypothesis = manner_alphabet().to_text(greedy_decode(*manner_posteriors));
    scores.manner = manner_stats(entry.reference, *scores.manner_hypothesis, map);
  }
  return scores;
}

std::pair<std::size_t, double> parse_suppress(const std::string& value) {
  const auto comma = value.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--suppress", "expected INDEX,FACTOR");
  try {
    return {std::stoul(value.substr(0, comma)), std::stod(value.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--suppress", "expected INDEX,FACTOR, got '" + value + "'");
  }
}

}  // namespace

int cmd_synth(const SynthOptions& options, std::ostream& /*out*/, std::ostream& err) {
  return guarded(err, [&] {
    const Alphabet alphabet = load_alphabet(options.alphabet);
    std::string text;
    if (options.text) {
      text = *options.text;
    } else if (options.text_file) {
      text = trim_newlines(io::read_file(*options.text_file));
    } else {
      throw std::invalid_argument("synth needs --text or --text-file");
    }
    const PosteriorMatrix clean = synth_posteriors(alphabet.encode(text), alphabet, options.spec);
    if (options.manner_out) {
      io::write_posteriors(project_to_manner(clean, load_manner_map(options.manner_map)), *options.manner_out);
    }
    if (options.suppress) {
      io::write_posteriors(suppress_symbol(clean, options.suppress->first, options.suppress->second), options.out);
    } else {
      io::write_posteriors(clean, options.out);
    }
    return 0;
  });
}

int cmd_decode(const DecodeOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<Alphabet> registered;
    if (options.alphabet) registered = load_alphabet(options.alphabet);
    const PosteriorMatrix chars = load_posteriors(options.char_posteriors, registered);

    Transcript result;
    if (options.mode == "greedy") {
      result = greedy_decode(chars);
    } else if (options.mode == "manner") {
      std::optional<PosteriorMatrix> manners;
      if (options.manner_posteriors) {
        manners.emplace(io::read_posteriors(*options.manner_posteriors));
      } else if (options.derive_manner) {
        manners.emplace(project_to_manner(chars, load_manner_map(options.manner_map)));
      } else {
        throw std::invalid_argument("manner decoding needs --manner FILE or --derive-manner");
      }
      result = manner_guided_decode(*manners, chars, options.split_on_class_change).final;
    } else {
      throw std::invalid_argument("unknown decode mode '" + options.mode + "'");
    }
    out << chars.alphabet().render(result, options.human) << '\n';
    return 0;
  });
}

io::Report evaluate_manifest(const EvalOptions& options) {
  const std::vector<io::ManifestEntry> entries = io::read_manifest(options.manifest);
  std::optional<Alphabet> characters;
  if (options.alphabet) characters = load_alphabet(options.alphabet);
  const MannerMap map = load_manner_map(options.manner_map);

  std::vector<std::optional<io::UtteranceScores>> results(entries.size());
  std::vector<std::string> failures(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        results[i] = evaluate_entry(entries[i], options, characters, map);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  {
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, entries.size()));
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  io::Report report;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!results[i]) throw std::runtime_error("utterance '" + entries[i].id + "': " + failures[i]);
    report.utterances.push_back(std::move(*results[i]));
  }
  return report;
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::Report report = evaluate_manifest(options);
    if (options.report_out) io::write_report(report, options.format, *options.report_out);
    out << io::render_summary(report);
    return 0;
  });
}

int cmd_loss(const LossOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PosteriorMatrix posteriors = io::read_posteriors(options.posteriors);
    const Transcript target = posteriors.alphabet().encode(options.target);
    const CtcResult forward = ctc_log_forward(posteriors, target);
    out << (std::isinf(forward.log_prob) ? std::string("-inf") : io::format_double(forward.log_prob)) << '\n';
    if (options.grad_out) {
      const CtcResult with_grad = ctc_grad(posteriors, target);
      io::write_gradient(*with_grad.gradient, posteriors.alphabet(), *options.grad_out);
    }
    return 0;
  });
}

int cmd_map(const MapOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MannerMap map = load_manner_map(options.manner_map);
    std::vector<std::string> labels{std::string(kBlankToken)};
    for (const auto& [token, manner] : map.entries()) labels.push_back(token);
    labels.emplace_back(kSpaceToken);
    const Alphabet characters(std::move(labels));
    const Transcript manners = map_transcript_to_manner(characters.encode(options.text), characters, map);
    out << manner_alphabet().render(manners, options.human) << '\n';
    return 0;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Manner-of-articulation guided CTC decoding toolkit", "mannerctc"};
  app.require_subcommand(1);

  SynthOptions synth;
  std::string suppress;
  auto* synth_cmd = app.add_subcommand("synth", "Write synthetic peaky posteriors for a transcript");
  synth_cmd->add_option("--text", synth.text, "Transcript text");
  synth_cmd->add_option("--text-file", synth.text_file, "File holding the transcript")->check(CLI::ExistingFile);
  synth_cmd->add_option("--out", synth.out, "Character posterior file to write")->required();
  synth_cmd->add_option("--manner-out", synth.manner_out, "Also write the projected manner posteriors");
  synth_cmd->add_option("--alphabet", synth.alphabet, "Character alphabet file")->check(CLI::ExistingFile);
  synth_cmd->add_option("--manner-map", synth.manner_map, "Character to manner map file")->check(CLI::ExistingFile);
  synth_cmd->add_option("--frames-per-symbol", synth.spec.frames_per_symbol)->capture_default_str();
  synth_cmd->add_option("--blank-gap", synth.spec.blank_gap)->capture_default_str();
  synth_cmd->add_option("--peak-prob", synth.spec.peak_prob)->capture_default_str();
  synth_cmd->add_option("--noise", synth.spec.noise_scale)->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed)->capture_default_str();
  synth_cmd->add_option("--suppress", suppress, "Weaken symbol peak INDEX by FACTOR, e.g. 1,0.1");

  DecodeOptions decode;
  auto* decode_cmd = app.add_subcommand("decode", "Decode a character posterior file");
  decode_cmd->add_option("mode", decode.mode, "greedy or manner")->required()->check(CLI::IsMember({"greedy", "manner"}));
  decode_cmd->add_option("posteriors", decode.char_posteriors, "Character posterior file")->required();
  decode_cmd->add_option("--manner", decode.manner_posteriors, "Manner posterior file");
  decode_cmd->add_flag("--derive-manner", decode.derive_manner, "Project the manner stream from the characters");
  decode_cmd->add_flag("--split-on-class-change", decode.split_on_class_change);
  decode_cmd->add_flag("--human", decode.human, "Print spaces literally instead of '>'");
  decode_cmd->add_option("--alphabet", decode.alphabet, "Expected character alphabet file")->check(CLI::ExistingFile);
  decode_cmd->add_option("--manner-map", decode.manner_map)->check(CLI::ExistingFile);

  EvalOptions eval;
  std::string format = "text";
  auto* eval_cmd = app.add_subcommand("eval", "Score baseline and manner-guided decoding over a manifest");
  eval_cmd->add_option("manifest", eval.manifest, "JSON-lines manifest")->required();
  eval_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
  eval_cmd->add_option("--out", eval.report_out, "Report file to write");
  eval_cmd->add_option("--jobs", eval.jobs)->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_flag("--split-on-class-change", eval.split_on_class_change);
  eval_cmd->add_flag("--derive-manner", eval.derive_manner);
  eval_cmd->add_flag("--mer", eval.with_mer, "Also score the manner stream against the mapped reference");
  eval_cmd->add_option("--alphabet", eval.alphabet)->check(CLI::ExistingFile);
  eval_cmd->add_option("--manner-map", eval.manner_map)->check(CLI::ExistingFile);

  LossOptions loss;
  auto* loss_cmd = app.add_subcommand("loss", "Print ln P(target) under a posterior file");
  loss_cmd->add_option("posteriors", loss.posteriors)->required();
  loss_cmd->add_option("--target", loss.target)->required();
  loss_cmd->add_option("--grad", loss.grad_out, "Write d(-ln P)/d(posterior) to this file");

  MapOptions map;
  auto* map_cmd = app.add_subcommand("map", "Map character text to manner symbols");
  map_cmd->add_option("--text", map.text)->required();
  map_cmd->add_option("--manner-map", map.manner_map)->check(CLI::ExistingFile);
  map_cmd->add_flag("--human", map.human);

  try {
    app.parse(argc, argv);
    if (!suppress.empty()) synth.suppress = parse_suppress(suppress);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*synth_cmd) return cmd_synth(synth, out, err);
  if (*decode_cmd) return cmd_decode(decode, out, err);
  if (*eval_cmd) {
    eval.format = *io::parse_report_format(format);
    return cmd_eval(eval, out, err);
  }
  if (*loss_cmd) return cmd_loss(loss, out, err);
  return cmd_map(map, out, err);
}

}  // namespace mannerctc::cli
