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

// Generators and independent oracles shared by the unit and acceptance
// tests. Nothing here calls the code paths it is used to check.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mannerctc/alphabet.h"
#include "mannerctc/matrix.h"

namespace mannerctc::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Alphabet <, A, B, ... with `labels` entries in total, the last being ">".
inline Alphabet letters_alphabet(std::size_t labels) {
  std::vector<std::string> tokens{"<"};
  for (std::size_t k = 1; k + 1 < labels; ++k) tokens.emplace_back(1, static_cast<char>('A' + k - 1));
  tokens.emplace_back(">");
  return Alphabet(std::move(tokens));
}

// Row-stochastic rows with every entry at least `floor` before
// normalization.
inline Matrix random_stochastic(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double floor = 0.0) {
  Matrix m(rows, cols);
  for (std::size_t t = 0; t < rows; ++t) {
    double sum = 0.0;
    for (double& p : m.row(t)) {
      p = uniform(rng, floor, 1.0);
      sum += p;
    }
    for (double& p : m.row(t)) p /= sum;
  }
  return m;
}

inline Transcript random_target(std::mt19937_64& rng, std::size_t labels, std::size_t max_len) {
  Transcript z(uniform_index(rng, 0, max_len));
  for (auto& s : z) s = uniform_index(rng, 1, labels - 1);
  return z;
}

// Collapse written independently of the library: merge runs, then drop
// blanks.
inline Transcript collapse_oracle(const std::vector<LabelIndex>& path) {
  std::vector<LabelIndex> merged;
  for (LabelIndex l : path) {
    if (merged.empty() || merged.back() != l) merged.push_back(l);
  }
  Transcript out;
  for (LabelIndex l : merged) {
    if (l != 0) out.push_back(l);
  }
  return out;
}

// All transcripts any path of `frames` labels over `labels` collapses to.
inline std::set<Transcript> reachable_transcripts(std::size_t frames, std::size_t labels) {
  std::set<Transcript> out;
  std::vector<LabelIndex> path(frames, 0);
  while (true) {
    out.insert(collapse_oracle(path));
    std::size_t t = 0;
    while (t < frames && ++path[t] == labels) path[t++] = 0;
    if (t == frames) break;
  }
  return out;
}

// Central difference of f at every entry of m with step h. When
// `renormalize` is set, the perturbed row is divided by its new sum.
template <typename Fn>
Matrix central_differences(const Matrix& m, double h, bool renormalize, Fn&& f) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t t = 0; t < m.rows(); ++t) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      auto eval = [&](double delta) {
        Matrix p = m;
        p(t, k) += delta;
        if (renormalize) {
          double sum = 0.0;
          for (double v : p.row(t)) sum += v;
          for (double& v : p.row(t)) v /= sum;
        }
        return f(p);
      };
      out(t, k) = (eval(h) - eval(-h)) / (2.0 * h);
    }
  }
  return out;
}

inline std::vector<std::vector<int>> all_sequences(std::size_t tokens, std::size_t max_len) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& s : frontier) {
      for (int tok = 0; tok < static_cast<int>(tokens); ++tok) {
        auto e = s;
        e.push_back(tok);
        next.push_back(e);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Shortest edit path by breadth-first search over the graph of all token
// sequences of length <= max_len, where edges are single insertions,
// deletions and substitutions. Some shortest path always stays within the
// longer of the two endpoint lengths, so the bound loses nothing.
class EditDistanceBfs {
 public:
  EditDistanceBfs(std::size_t tokens, std::size_t max_len) : sequences_(all_sequences(tokens, max_len)) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < sequences_.size(); ++i) index[sequences_[i]] = i;
    neighbours_.resize(sequences_.size());
    for (std::size_t i = 0; i < sequences_.size(); ++i) {
      const auto& cur = sequences_[i];
      auto link = [&](const std::vector<int>& next) { neighbours_[i].push_back(index.at(next)); };
      for (std::size_t p = 0; p < cur.size(); ++p) {
        auto del = cur;
        del.erase(del.begin() + static_cast<std::ptrdiff_t>(p));
        link(del);
        for (int tok = 0; tok < static_cast<int>(tokens); ++tok) {
          if (tok == cur[p]) continue;
          auto sub = cur;
          sub[p] = tok;
          link(sub);
        }
      }
      if (cur.size() < max_len) {
        for (std::size_t p = 0; p <= cur.size(); ++p) {
          for (int tok = 0; tok < static_cast<int>(tokens); ++tok) {
            auto ins = cur;
            ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(p), tok);
            link(ins);
          }
        }
      }
    }
  }

  const std::vector<std::vector<int>>& sequences() const { return sequences_; }

  // Distance from sequences()[source] to every sequence.
  std::vector<std::size_t> distances_from(std::size_t source) const {
    std::vector<std::size_t> dist(sequences_.size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t cur = queue[head];
      for (std::size_t next : neighbours_[cur]) {
        if (dist[next] == static_cast<std::size_t>(-1)) {
          dist[next] = dist[cur] + 1;
          queue.push_back(next);
        }
      }
    }
    return dist;
  }

 private:
  std::vector<std::vector<int>> sequences_;
  std::vector<std::vector<std::size_t>> neighbours_;
};

inline std::vector<std::string> to_tokens(const std::vector<int>& seq) {
  std::vector<std::string> out;
  for (int v : seq) out.emplace_back(1, static_cast<char>('a' + v));
  return out;
}

// Builds a row with the given dominant entries and the remaining mass spread
// evenly over the other labels.
inline std::vector<double> peaked_row(std::size_t labels, const std::vector<std::pair<LabelIndex, double>>& peaks) {
  std::vector<double> row(labels, 0.0);
  double used = 0.0;
  for (auto [k, p] : peaks) {
    row[k] = p;
    used += p;
  }
  const double rest = (1.0 - used) / static_cast<double>(labels - peaks.size());
  for (std::size_t k = 0; k < labels; ++k) {
    bool dominant = false;
    for (auto [j, p] : peaks) dominant = dominant || j == k;
    if (!dominant) row[k] = rest;
  }
  return row;
}

inline Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t k = 0; k < rows[t].size(); ++k) m(t, k) = rows[t][k];
  }
  return m;
}

// Character inventory C1..C29 where C1 is blank and C29 is space, so label
// Cn sits at index n-1.
inline Alphabet numbered_alphabet() {
  std::vector<std::string> tokens{"<"};
  for (int n = 2; n <= 28; ++n) tokens.push_back("C" + std::to_string(n));
  tokens.emplace_back(">");
  return Alphabet(std::move(tokens));
}

inline constexpr LabelIndex C(int n) { return static_cast<LabelIndex>(n - 1); }

struct StreamPair {
  PosteriorMatrix manner;
  PosteriorMatrix chars;
};

// Five manner peaks over 14 frames. The character stream's best path only
// surfaces C4, C29 and C10; the first and last manner peaks sit on frames
// where blank dominates the characters. In the last one the top non-blank
// character repeats the previous emission (C10), so the runner-up C9 must be
// taken instead.
inline StreamPair worked_example_streams() {
  const Alphabet chars = numbered_alphabet();
  const Alphabet& manners = manner_alphabet();
  const std::size_t K = chars.size();
  const std::size_t M = manners.size();
  const LabelIndex blank = 0;
  const LabelIndex V = *manners.find("V"), S = *manners.find("S"), N = *manners.find("N"), F = *manners.find("F"),
                   space = manners.space();

  std::vector<std::vector<double>> c;
  std::vector<std::vector<double>> m;
  auto frame = [&](std::vector<std::pair<LabelIndex, double>> cp, LabelIndex manner) {
    c.push_back(peaked_row(K, cp));
    m.push_back(peaked_row(M, {{manner, 0.9}}));
  };
  frame({{blank, 0.9}}, blank);
  frame({{blank, 0.6}, {C(3), 0.3}}, S);
  frame({{blank, 0.55}, {C(3), 0.25}, {C(5), 0.15}}, S);
  frame({{blank, 0.9}}, blank);
  frame({{C(4), 0.7}, {blank, 0.2}}, V);
  frame({{C(4), 0.6}, {blank, 0.3}}, V);
  frame({{blank, 0.9}}, blank);
  frame({{C(29), 0.8}, {blank, 0.1}}, space);
  frame({{blank, 0.9}}, blank);
  frame({{C(10), 0.7}, {blank, 0.2}}, N);
  frame({{C(10), 0.65}, {blank, 0.25}}, N);
  frame({{blank, 0.9}}, blank);
  frame({{blank, 0.6}, {C(10), 0.25}, {C(9), 0.1}}, F);
  frame({{blank, 0.7}, {C(10), 0.15}, {C(9), 0.1}}, F);
  return {PosteriorMatrix(manners, rows_to_matrix(m)), PosteriorMatrix(chars, rows_to_matrix(c))};
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("mannerctc-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace mannerctc::testing
