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

#include "mannerctc/matrix.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mannerctc {

PosteriorMatrix::PosteriorMatrix(Alphabet alphabet, Matrix values, std::optional<double> frame_shift_ms)
    : alphabet_(std::move(alphabet)), values_(std::move(values)), frame_shift_ms_(frame_shift_ms) {
  if (values_.rows() == 0) throw std::invalid_argument("posterior matrix has no frames");
  if (values_.cols() != alphabet_.size()) {
    throw std::invalid_argument("posterior matrix has " + std::to_string(values_.cols()) +
                                " columns but the alphabet has " + std::to_string(alphabet_.size()) +
                                " labels");
  }
  for (std::size_t t = 0; t < values_.rows(); ++t) {
    auto row = values_.row(t);
    double sum = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0) {
        throw std::invalid_argument("frame " + std::to_string(t) + " has a negative or non-finite entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("frame " + std::to_string(t) + " sums to " + std::to_string(sum) +
                                  ", outside 1 +/- 1e-4");
    }
    for (double& p : row) p /= sum;
  }
}

std::size_t argmax(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return best;
}

}  // namespace mannerctc
