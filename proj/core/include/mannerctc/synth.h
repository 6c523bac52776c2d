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

// Synthetic peaky posteriors for exercising the decoders without a trained
// network.
//
// Layout for a transcript of n symbols (g = blank_gap, f = frames_per_symbol):
//
//   [g blank frames] [f frames of s1] [g blank frames] ... [f frames of sn] [g blank frames]
//
// so T = g * (n + 1) + f * n. The dominant label of each frame carries
// peak_prob and the rest is spread evenly; multiplicative noise is then
// applied and rows renormalized.

#pragma once

#include <cstddef>
#include <cstdint>

#include "mannerctc/alphabet.h"
#include "mannerctc/matrix.h"

namespace mannerctc {

struct SynthSpec {
  std::size_t frames_per_symbol = 2;
  std::size_t blank_gap = 1;
  double peak_prob = 0.9;    // in (0.5, 1)
  double noise_scale = 0.0;  // in [0, 0.1)
  std::uint64_t seed = 0;

  // Throws std::invalid_argument for out-of-range fields.
  void validate() const;
};

// greedy_decode of the result reproduces `transcript`. Throws
// std::invalid_argument for blanks or indices outside `alphabet`.
PosteriorMatrix synth_posteriors(const Transcript& transcript, const Alphabet& alphabet, const SynthSpec& spec);

// Weakens one symbol peak: on each frame of the `occurrence`-th peak
// (0-based, counting runs of frames whose argmax is not blank), the peak
// label keeps `factor` of its mass and the remainder moves to blank.
// Throws std::out_of_range if there is no such peak and
// std::invalid_argument unless 0 < factor < 1.
PosteriorMatrix suppress_symbol(const PosteriorMatrix& posteriors, std::size_t occurrence, double factor);

// Sums character columns into manner columns. Blank stays blank, space
// stays space and DELETE-mapped characters are added to blank. Throws
// std::invalid_argument when `map` does not cover the alphabet.
PosteriorMatrix project_to_manner(const PosteriorMatrix& char_posteriors, const MannerMap& map);

}  // namespace mannerctc
