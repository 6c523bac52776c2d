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

// Best-path decoding and manner-guided character decoding.
//
// The manner-guided decoder rewrites the character best path using a
// separately trained manner-of-articulation CTC stream. Wherever the manner
// stream's frame-wise argmax is non-blank, the character stream is forced to
// emit exactly one non-blank character for that stretch of frames, even if
// blank dominates the character posteriors there:
//
//   manner argmax     <  <  V  V  <  >  <  N  N  <
//   segments                [2,4)    [5,6)    [7,9)
//   modified path     <  <  c1 c1 <  c2 <  c3 c3 <
//
// Each ci is the most frequent per-frame non-blank character argmax inside
// the segment, skipping the character emitted for the previous segment so
// that consecutive emissions never merge under collapse.

#pragma once

#include <cstddef>
#include <vector>

#include "mannerctc/alphabet.h"
#include "mannerctc/matrix.h"

namespace mannerctc {

struct Segment {
  std::size_t start = 0;  // inclusive frame
  std::size_t end = 0;    // exclusive frame
  LabelIndex manner_class = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Emission {
  Segment segment;
  LabelIndex symbol = 0;

  friend bool operator==(const Emission&, const Emission&) = default;
};

struct DecodeTrace {
  std::vector<LabelIndex> modified_path;
  std::vector<Emission> emitted;
  Transcript final;

  friend bool operator==(const DecodeTrace&, const DecodeTrace&) = default;
};

// Frame-wise argmax path, lowest index on ties.
std::vector<LabelIndex> best_path(const PosteriorMatrix& posteriors);

// collapse(best_path(posteriors)).
Transcript greedy_decode(const PosteriorMatrix& posteriors);

// Maximal runs of frames whose manner argmax is not blank. With
// `split_on_class_change` runs are also cut wherever the argmax changes.
// A segment's class is its most frequent argmax, ties going to the class
// that occurs first.
std::vector<Segment> extract_segments(const PosteriorMatrix& manner_posteriors, bool split_on_class_change);

// Picks the character for one segment. Per frame, non-blank characters are
// ranked by posterior (lowest index on ties). Starting at rank 1, the rank-r
// choices of all frames are ordered by frequency, then by summed posterior
// over the segment, then by index, and the first one that is not `excluded`
// wins. If every rank-r choice equals `excluded`, rank r+1 is tried.
LabelIndex choose_segment_char(const PosteriorMatrix& char_posteriors, const Segment& segment,
                               LabelIndex excluded);

// Throws std::invalid_argument on a frame-count mismatch, or when the manner
// matrix is not over a manner alphabet (blank, space and a subset of
// V $ N F S).
DecodeTrace manner_guided_decode(const PosteriorMatrix& manner_posteriors,
                                 const PosteriorMatrix& char_posteriors, bool split_on_class_change);

}  // namespace mannerctc
