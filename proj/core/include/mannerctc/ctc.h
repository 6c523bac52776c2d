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

// Connectionist temporal classification: path collapse, the exact target
// probability by path enumeration and by the forward recursion, and the
// forward-backward gradient.
//
// A target z of length U is expanded to the blank-interleaved sequence
// l' = (<, z1, <, z2, ..., <, zU, <) of length 2U+1. A path of T labels maps
// to z iff it walks l' monotonically, moving 0 or 1 step per frame, or 2
// steps when skipping a blank between two different labels.
//
// The Matrix overloads take raw per-frame label weights with the blank in
// column 0 and do not require rows to be normalized; P(z) is then the same
// multilinear polynomial in the entries. This is what the gradient describes.

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "mannerctc/alphabet.h"
#include "mannerctc/matrix.h"

namespace mannerctc {

struct CtcResult {
  // Natural log of P(z|X); -infinity when z is unreachable.
  double log_prob = 0.0;
  // d(-log P)/d(entry), same shape as the input. Present only from ctc_grad.
  std::optional<Matrix> gradient;
};

// Merges runs of equal labels, then drops blanks. Throws std::out_of_range
// for indices >= label_count.
Transcript collapse(std::span<const LabelIndex> path, std::size_t label_count);
Transcript collapse(std::span<const LabelIndex> path, const Alphabet& alphabet);

// Largest K^T accepted by ctc_prob_bruteforce.
inline constexpr double kBruteForceMaxPaths = 1e7;

// Sums the product of entries over every one of the K^T paths that
// collapses to z. Throws std::length_error beyond kBruteForceMaxPaths.
double ctc_prob_bruteforce(const Matrix& probs, const Transcript& target);
double ctc_prob_bruteforce(const PosteriorMatrix& posteriors, const Transcript& target);

// Log-space forward recursion. Throws std::invalid_argument if the target
// contains the blank or an index outside the alphabet.
CtcResult ctc_log_forward(const Matrix& probs, const Transcript& target);
CtcResult ctc_log_forward(const PosteriorMatrix& posteriors, const Transcript& target);

// Forward-backward gradient of -log P(z) with respect to every entry.
// Entries no valid alignment passes through get exactly 0. Throws
// std::domain_error when P(z) = 0.
CtcResult ctc_grad(const Matrix& probs, const Transcript& target);
CtcResult ctc_grad(const PosteriorMatrix& posteriors, const Transcript& target);

// log(exp(a) + exp(b)) that is exact when either side is -infinity.
double log_add(double a, double b);

}  // namespace mannerctc
