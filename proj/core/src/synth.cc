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

#include "mannerctc/synth.h"

#include <random>
#include <stdexcept>
#include <string>

namespace mannerctc {
namespace {

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void SynthSpec::validate() const {
  if (frames_per_symbol < 1) throw std::invalid_argument("frames_per_symbol must be >= 1");
  if (blank_gap < 1) throw std::invalid_argument("blank_gap must be >= 1");
  if (!(peak_prob > 0.5 && peak_prob < 1.0)) throw std::invalid_argument("peak_prob must be in (0.5, 1)");
  if (!(noise_scale >= 0.0 && noise_scale < 0.1)) throw std::invalid_argument("noise_scale must be in [0, 0.1)");
}

PosteriorMatrix synth_posteriors(const Transcript& transcript, const Alphabet& alphabet, const SynthSpec& spec) {
  spec.validate();
  for (LabelIndex symbol : transcript) {
    if (symbol == alphabet.blank() || symbol >= alphabet.size()) {
      throw std::invalid_argument("cannot synthesize label index " + std::to_string(symbol) +
                                  ": not a non-blank label of the alphabet");
    }
  }

  const std::size_t n = transcript.size();
  const std::size_t frames = spec.blank_gap * (n + 1) + spec.frames_per_symbol * n;
  const std::size_t labels = alphabet.size();
  const double floor = (1.0 - spec.peak_prob) / static_cast<double>(labels - 1);

  Matrix values(frames, labels, floor);
  std::size_t t = 0;
  auto fill = [&](LabelIndex dominant, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i, ++t) values(t, dominant) = spec.peak_prob;
  };
  fill(alphabet.blank(), spec.blank_gap);
  for (LabelIndex symbol : transcript) {
    fill(symbol, spec.frames_per_symbol);
    fill(alphabet.blank(), spec.blank_gap);
  }

  if (spec.noise_scale > 0.0) {
    std::mt19937_64 rng(spec.seed);
    for (std::size_t r = 0; r < frames; ++r) {
      double sum = 0.0;
      for (double& p : values.row(r)) {
        p *= 1.0 + spec.noise_scale * (2.0 * unit_uniform(rng) - 1.0);
        sum += p;
      }
      for (double& p : values.row(r)) p /= sum;
    }
  }
  return PosteriorMatrix(alphabet, std::move(values));
}

PosteriorMatrix suppress_symbol(const PosteriorMatrix& posteriors, std::size_t occurrence, double factor) {
  if (!(factor > 0.0 && factor < 1.0)) throw std::invalid_argument("suppression factor must be in (0, 1)");
  const LabelIndex blank = posteriors.alphabet().blank();

  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t seen = 0;
  bool found = false;
  for (std::size_t t = 0; t < posteriors.frames() && !found;) {
    if (argmax(posteriors.row(t)) == blank) {
      ++t;
      continue;
    }
    std::size_t run_end = t + 1;
    while (run_end < posteriors.frames() && argmax(posteriors.row(run_end)) != blank) ++run_end;
    if (seen++ == occurrence) {
      start = t;
      end = run_end;
      found = true;
    }
    t = run_end;
  }
  if (!found) {
    throw std::out_of_range("no symbol peak #" + std::to_string(occurrence) + " (matrix has " +
                            std::to_string(seen) + ")");
  }

  Matrix values = posteriors.values();
  for (std::size_t t = start; t < end; ++t) {
    auto row = values.row(t);
    const LabelIndex peak = argmax(row);
    const double moved = row[peak] * (1.0 - factor);
    row[peak] -= moved;
    row[blank] += moved;
  }
  return PosteriorMatrix(posteriors.alphabet(), std::move(values), posteriors.frame_shift_ms());
}

PosteriorMatrix project_to_manner(const PosteriorMatrix& char_posteriors, const MannerMap& map) {
  const Alphabet& characters = char_posteriors.alphabet();
  const Alphabet& manners = manner_alphabet();
  map.check_covers(characters);

  std::vector<LabelIndex> target(characters.size());
  for (LabelIndex k = 0; k < characters.size(); ++k) {
    if (k == characters.blank()) {
      target[k] = manners.blank();
    } else if (k == characters.space()) {
      target[k] = manners.space();
    } else {
      const MannerClass manner = *map.lookup(characters.label(k));
      target[k] = manner == MannerClass::kDelete ? manners.blank() : *manners.find(manner_token(manner));
    }
  }

  Matrix values(char_posteriors.frames(), manners.size(), 0.0);
  for (std::size_t t = 0; t < char_posteriors.frames(); ++t) {
    const auto row = char_posteriors.row(t);
    for (LabelIndex k = 0; k < row.size(); ++k) values(t, target[k]) += row[k];
  }
  return PosteriorMatrix(manners, std::move(values), char_posteriors.frame_shift_ms());
}

}  // namespace mannerctc
