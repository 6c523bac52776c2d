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

#include "mannerctc/decode.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mannerctc/ctc.h"

namespace mannerctc {
namespace {

LabelIndex majority_class(std::span<const LabelIndex> frames) {
  // Ties resolve to the class seen first, so scan in frame order and only
  // replace on a strictly larger count.
  LabelIndex best = frames.front();
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (std::find(frames.begin(), frames.begin() + i, frames[i]) != frames.begin() + i) continue;
    const auto count = static_cast<std::size_t>(std::count(frames.begin(), frames.end(), frames[i]));
    if (count > best_count) {
      best = frames[i];
      best_count = count;
    }
  }
  return best;
}

void check_manner_alphabet(const Alphabet& alphabet) {
  const Alphabet& manners = manner_alphabet();
  for (const std::string& token : alphabet.labels()) {
    if (!manners.find(token)) {
      throw std::invalid_argument("manner posteriors use label '" + token +
                                  "', which is not a manner of articulation");
    }
  }
}

}  // namespace

std::vector<LabelIndex> best_path(const PosteriorMatrix& posteriors) {
  std::vector<LabelIndex> path(posteriors.frames());
  for (std::size_t t = 0; t < path.size(); ++t) path[t] = argmax(posteriors.row(t));
  return path;
}

Transcript greedy_decode(const PosteriorMatrix& posteriors) {
  return collapse(best_path(posteriors), posteriors.alphabet());
}

std::vector<Segment> extract_segments(const PosteriorMatrix& manner_posteriors, bool split_on_class_change) {
  const std::vector<LabelIndex> path = best_path(manner_posteriors);
  const LabelIndex blank = manner_posteriors.alphabet().blank();
  std::vector<Segment> segments;
  std::size_t t = 0;
  while (t < path.size()) {
    if (path[t] == blank) {
      ++t;
      continue;
    }
    std::size_t end = t + 1;
    while (end < path.size() && path[end] != blank && (!split_on_class_change || path[end] == path[t])) ++end;
    segments.push_back({t, end, majority_class(std::span(path).subspan(t, end - t))});
    t = end;
  }
  return segments;
}

LabelIndex choose_segment_char(const PosteriorMatrix& char_posteriors, const Segment& segment,
                               LabelIndex excluded) {
  const std::size_t labels = char_posteriors.labels();
  const LabelIndex blank = char_posteriors.alphabet().blank();
  if (labels < 3) throw std::invalid_argument("need at least 2 non-blank characters to honour an exclusion");
  if (segment.start >= segment.end || segment.end > char_posteriors.frames()) {
    throw std::out_of_range("segment [" + std::to_string(segment.start) + ", " + std::to_string(segment.end) +
                            ") is outside the " + std::to_string(char_posteriors.frames()) + "-frame matrix");
  }

  // Non-blank labels of each frame in decreasing posterior order.
  std::vector<std::vector<LabelIndex>> ranked;
  std::vector<double> mass(labels, 0.0);
  for (std::size_t t = segment.start; t < segment.end; ++t) {
    const auto row = char_posteriors.row(t);
    std::vector<LabelIndex> order;
    for (LabelIndex k = 0; k < labels; ++k) {
      if (k == blank) continue;
      order.push_back(k);
      mass[k] += row[k];
    }
    std::stable_sort(order.begin(), order.end(), [&](LabelIndex a, LabelIndex b) { return row[a] > row[b]; });
    ranked.push_back(std::move(order));
  }

  std::vector<std::size_t> frequency(labels);
  for (std::size_t rank = 0; rank + 1 < labels; ++rank) {
    std::fill(frequency.begin(), frequency.end(), 0);
    std::vector<LabelIndex> candidates;
    for (const auto& order : ranked) {
      if (frequency[order[rank]]++ == 0) candidates.push_back(order[rank]);
    }
    std::sort(candidates.begin(), candidates.end(), [&](LabelIndex a, LabelIndex b) {
      if (frequency[a] != frequency[b]) return frequency[a] > frequency[b];
      if (mass[a] != mass[b]) return mass[a] > mass[b];
      return a < b;
    });
    for (LabelIndex candidate : candidates) {
      if (candidate != excluded) return candidate;
    }
  }
  // Unreachable: rank-2 choices always differ from the rank-1 choice.
  throw std::logic_error("no admissible character in segment");
}

DecodeTrace manner_guided_decode(const PosteriorMatrix& manner_posteriors, const PosteriorMatrix& char_posteriors,
                                 bool split_on_class_change) {
  if (manner_posteriors.frames() != char_posteriors.frames()) {
    throw std::invalid_argument("manner stream has " + std::to_string(manner_posteriors.frames()) +
                                " frames but character stream has " + std::to_string(char_posteriors.frames()));
  }
  check_manner_alphabet(manner_posteriors.alphabet());

  const Alphabet& characters = char_posteriors.alphabet();
  DecodeTrace trace;
  trace.modified_path.assign(char_posteriors.frames(), characters.blank());
  LabelIndex previous = characters.space();
  for (const Segment& segment : extract_segments(manner_posteriors, split_on_class_change)) {
    const LabelIndex chosen = choose_segment_char(char_posteriors, segment, previous);
    std::fill(trace.modified_path.begin() + static_cast<std::ptrdiff_t>(segment.start),
              trace.modified_path.begin() + static_cast<std::ptrdiff_t>(segment.end), chosen);
    trace.emitted.push_back({segment, chosen});
    previous = chosen;
  }
  trace.final = collapse(trace.modified_path, characters);
  return trace;
}

}  // namespace mannerctc
