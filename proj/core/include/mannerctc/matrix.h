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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mannerctc/alphabet.h"

namespace mannerctc {

// Dense row-major frames x labels grid with no probabilistic constraints.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Maximum deviation of a row sum from 1 that is silently renormalized.
inline constexpr double kRowSumTolerance = 1e-4;

// T x K row-stochastic frame posteriors bound to an Alphabet.
//
// Construction validates shape and entries and divides each row by its sum,
// so rows sum to 1 up to rounding. Rows deviating from 1 by more than
// kRowSumTolerance are rejected rather than repaired.
class PosteriorMatrix {
 public:
  PosteriorMatrix(Alphabet alphabet, Matrix values,
                  std::optional<double> frame_shift_ms = std::nullopt);

  std::size_t frames() const { return values_.rows(); }
  std::size_t labels() const { return values_.cols(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const Matrix& values() const { return values_; }
  std::optional<double> frame_shift_ms() const { return frame_shift_ms_; }

  double operator()(std::size_t t, std::size_t k) const { return values_(t, k); }
  std::span<const double> row(std::size_t t) const { return values_.row(t); }

  friend bool operator==(const PosteriorMatrix&, const PosteriorMatrix&) = default;

 private:
  Alphabet alphabet_;
  Matrix values_;
  std::optional<double> frame_shift_ms_;
};

// Index of the largest entry of `row`; ties go to the lowest index.
std::size_t argmax(std::span<const double> row);

}  // namespace mannerctc
