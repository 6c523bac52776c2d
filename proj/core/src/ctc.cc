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

#include "mannerctc/ctc.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mannerctc {
namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

void check_target(const Matrix& probs, const Transcript& target) {
  for (LabelIndex symbol : target) {
    if (symbol == kBlankIndex) throw std::invalid_argument("CTC target contains the blank label");
    if (symbol >= probs.cols()) {
      throw std::invalid_argument("CTC target label " + std::to_string(symbol) + " is outside the " +
                                  std::to_string(probs.cols()) + "-label alphabet");
    }
  }
}

void check_entries(const Matrix& probs) {
  if (probs.rows() == 0 || probs.cols() == 0) throw std::invalid_argument("empty CTC input");
  for (double p : probs.data()) {
    if (!(p >= 0.0)) throw std::invalid_argument("CTC input has a negative or NaN entry");
  }
}

// Forward and backward lattices over the blank-interleaved target.
//
// `pre(t, s)` is the log mass of all prefixes that reach state s at frame t,
// excluding frame t's own emission; alpha = pre + log y. `beta(t, s)` is the
// log mass of all completions from frame t+1 on, given state s at frame t.
// Keeping the emission out of both sides lets the gradient be read off as
// sum_s exp(pre + beta) without dividing by a possibly zero entry.
class Lattice {
 public:
  Lattice(const Matrix& probs, const Transcript& target)
      : frames_(probs.rows()), states_(2 * target.size() + 1), extended_(states_, kBlankIndex),
        log_emit_(frames_, states_), pre_(frames_, states_, kLogZero) {
    for (std::size_t u = 0; u < target.size(); ++u) extended_[2 * u + 1] = target[u];
    for (std::size_t t = 0; t < frames_; ++t) {
      for (std::size_t s = 0; s < states_; ++s) log_emit_(t, s) = std::log(probs(t, extended_[s]));
    }
  }

  LabelIndex label_at(std::size_t s) const { return extended_[s]; }
  std::size_t states() const { return states_; }

  // Runs the forward pass and returns log P(z).
  double forward() {
    Matrix alpha(frames_, states_, kLogZero);
    pre_(0, 0) = 0.0;
    if (states_ > 1) pre_(0, 1) = 0.0;
    for (std::size_t t = 0; t < frames_; ++t) {
      if (t > 0) {
        for (std::size_t s = 0; s < states_; ++s) {
          double acc = alpha(t - 1, s);
          if (s >= 1) acc = log_add(acc, alpha(t - 1, s - 1));
          if (can_skip_into(s)) acc = log_add(acc, alpha(t - 1, s - 2));
          pre_(t, s) = acc;
        }
      }
      for (std::size_t s = 0; s < states_; ++s) alpha(t, s) = pre_(t, s) + log_emit_(t, s);
    }
    double log_prob = alpha(frames_ - 1, states_ - 1);
    if (states_ > 1) log_prob = log_add(log_prob, alpha(frames_ - 1, states_ - 2));
    return log_prob;
  }

  Matrix backward() const {
    Matrix beta(frames_, states_, kLogZero);
    beta(frames_ - 1, states_ - 1) = 0.0;
    if (states_ > 1) beta(frames_ - 1, states_ - 2) = 0.0;
    for (std::size_t t = frames_ - 1; t-- > 0;) {
      for (std::size_t s = 0; s < states_; ++s) {
        double acc = log_emit_(t + 1, s) + beta(t + 1, s);
        if (s + 1 < states_) acc = log_add(acc, log_emit_(t + 1, s + 1) + beta(t + 1, s + 1));
        if (s + 2 < states_ && can_skip_into(s + 2)) {
          acc = log_add(acc, log_emit_(t + 1, s + 2) + beta(t + 1, s + 2));
        }
        beta(t, s) = acc;
      }
    }
    return beta;
  }

  const Matrix& pre() const { return pre_; }

 private:
  bool can_skip_into(std::size_t s) const {
    return s >= 2 && extended_[s] != kBlankIndex && extended_[s] != extended_[s - 2];
  }

  std::size_t frames_;
  std::size_t states_;
  std::vector<LabelIndex> extended_;
  Matrix log_emit_;
  Matrix pre_;
};

}  // namespace

double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

Transcript collapse(std::span<const LabelIndex> path, std::size_t label_count) {
  Transcript out;
  LabelIndex previous = kBlankIndex;
  for (std::size_t t = 0; t < path.size(); ++t) {
    const LabelIndex label = path[t];
    if (label >= label_count) {
      throw std::out_of_range("path label " + std::to_string(label) + " at frame " + std::to_string(t) +
                              " is outside the " + std::to_string(label_count) + "-label alphabet");
    }
    if (label != kBlankIndex && (t == 0 || label != previous)) out.push_back(label);
    previous = label;
  }
  return out;
}

Transcript collapse(std::span<const LabelIndex> path, const Alphabet& alphabet) {
  return collapse(path, alphabet.size());
}

double ctc_prob_bruteforce(const Matrix& probs, const Transcript& target) {
  check_entries(probs);
  check_target(probs, target);
  const std::size_t frames = probs.rows();
  const std::size_t labels = probs.cols();
  if (std::pow(static_cast<double>(labels), static_cast<double>(frames)) > kBruteForceMaxPaths) {
    throw std::length_error("brute-force CTC limited to 1e7 paths (K^T = " + std::to_string(labels) + "^" +
                            std::to_string(frames) + ")");
  }

  std::vector<LabelIndex> path(frames, 0);
  double total = 0.0;
  while (true) {
    if (collapse(path, labels) == target) {
      double product = 1.0;
      for (std::size_t t = 0; t < frames; ++t) product *= probs(t, path[t]);
      total += product;
    }
    std::size_t t = 0;
    while (t < frames && ++path[t] == labels) path[t++] = 0;
    if (t == frames) break;
  }
  return total;
}

double ctc_prob_bruteforce(const PosteriorMatrix& posteriors, const Transcript& target) {
  return ctc_prob_bruteforce(posteriors.values(), target);
}

CtcResult ctc_log_forward(const Matrix& probs, const Transcript& target) {
  check_entries(probs);
  check_target(probs, target);
  Lattice lattice(probs, target);
  return CtcResult{lattice.forward(), std::nullopt};
}

CtcResult ctc_log_forward(const PosteriorMatrix& posteriors, const Transcript& target) {
  return ctc_log_forward(posteriors.values(), target);
}

CtcResult ctc_grad(const Matrix& probs, const Transcript& target) {
  check_entries(probs);
  check_target(probs, target);
  Lattice lattice(probs, target);
  const double log_prob = lattice.forward();
  if (log_prob == kLogZero) {
    throw std::domain_error("target has zero probability; CTC gradient is undefined");
  }
  const Matrix beta = lattice.backward();

  Matrix log_partial(probs.rows(), probs.cols(), kLogZero);
  for (std::size_t t = 0; t < probs.rows(); ++t) {
    for (std::size_t s = 0; s < lattice.states(); ++s) {
      double& cell = log_partial(t, lattice.label_at(s));
      cell = log_add(cell, lattice.pre()(t, s) + beta(t, s));
    }
  }
  Matrix gradient(probs.rows(), probs.cols(), 0.0);
  for (std::size_t t = 0; t < probs.rows(); ++t) {
    for (std::size_t k = 0; k < probs.cols(); ++k) {
      if (log_partial(t, k) != kLogZero) gradient(t, k) = -std::exp(log_partial(t, k) - log_prob);
    }
  }
  return CtcResult{log_prob, std::move(gradient)};
}

CtcResult ctc_grad(const PosteriorMatrix& posteriors, const Transcript& target) {
  return ctc_grad(posteriors.values(), target);
}

}  // namespace mannerctc
