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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mannerctc/ctc.h"
#include "mannerctc/io.h"
#include "test_util.h"

namespace mannerctc::cli {
namespace {

using mannerctc::testing::TempDir;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_tool(std::vector<std::string> args) {
  args.insert(args.begin(), "mannerctc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string path_of(const TempDir& dir, const std::string& name) { return (dir / name).string(); }

TEST(CliTest, SynthThenGreedyRoundTrip) {
  TempDir dir;
  const std::string c = path_of(dir, "c.post");
  ASSERT_EQ(run_tool({"synth", "--text", "AB", "--out", c}).status, 0);
  EXPECT_EQ(io::read_posteriors(c).frames(), 7u);
  const Result r = run_tool({"decode", "greedy", c});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "AB\n");
  EXPECT_EQ(r.err, "");
}

TEST(CliTest, SuppressedPeakIsLostByGreedyAndRestoredByMannerMode) {
  TempDir dir;
  const std::string c = path_of(dir, "c.post"), m = path_of(dir, "m.post");
  ASSERT_EQ(run_tool({"synth", "--text", "AB", "--suppress", "1,0.1", "--out", c, "--manner-out", m}).status, 0);
  EXPECT_EQ(run_tool({"decode", "greedy", c}).out, "A\n");
  EXPECT_EQ(run_tool({"decode", "manner", c, "--manner", m}).out, "AB\n");
  // Deriving the manner stream from the damaged characters cannot help.
  EXPECT_EQ(run_tool({"decode", "manner", c, "--derive-manner"}).out, "A\n");
}

TEST(CliTest, HumanAndMachineSpaces) {
  TempDir dir;
  const std::string c = path_of(dir, "c.post");
  ASSERT_EQ(run_tool({"synth", "--text", "HI THERE", "--out", c}).status, 0);
  EXPECT_EQ(run_tool({"decode", "greedy", c}).out, "HI>THERE\n");
  EXPECT_EQ(run_tool({"decode", "greedy", c, "--human"}).out, "HI THERE\n");
}

TEST(CliTest, SynthRejectsUnknownSymbol) {
  TempDir dir;
  const Result r = run_tool({"synth", "--text", "A7", "--out", path_of(dir, "c.post")});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("'7'"), std::string::npos);
  EXPECT_EQ(r.out, "");
}

TEST(CliTest, SynthIsDeterministicGivenSeed) {
  TempDir dir;
  for (const char* name : {"a.post", "b.post"}) {
    ASSERT_EQ(run_tool({"synth", "--text", "SEVEN", "--noise", "0.05", "--seed", "9", "--out", path_of(dir, name)})
                  .status,
              0);
  }
  EXPECT_EQ(io::read_file(dir / "a.post"), io::read_file(dir / "b.post"));
}

TEST(CliTest, SynthFromTextFileAndCustomAlphabet) {
  TempDir dir;
  io::write_file(dir / "t.txt", "C3 C2 > C3\n");
  io::write_file(dir / "alphabet.txt", "C2\nC3\n>\n");
  const std::string c = path_of(dir, "c.post");
  ASSERT_EQ(run_tool({"synth", "--text-file", path_of(dir, "t.txt"), "--alphabet", path_of(dir, "alphabet.txt"),
                      "--out", c})
                .status,
            0);
  EXPECT_EQ(run_tool({"decode", "greedy", c}).out, "C3 C2 > C3\n");
  EXPECT_EQ(run_tool({"decode", "greedy", c, "--alphabet", path_of(dir, "alphabet.txt")}).status, 0);
  EXPECT_NE(run_tool({"decode", "greedy", c, "--alphabet", path_of(dir, "missing.txt")}).status, 0);
}

TEST(CliTest, WorkedExampleStreams) {
  TempDir dir;
  const auto streams = mannerctc::testing::worked_example_streams();
  const std::string c = path_of(dir, "c.post"), m = path_of(dir, "m.post");
  io::write_posteriors(streams.chars, c);
  io::write_posteriors(streams.manner, m);
  EXPECT_EQ(run_tool({"decode", "greedy", c}).out, "C4 > C10\n");
  EXPECT_EQ(run_tool({"decode", "manner", c, "--manner", m}).out, "C3 C4 > C10 C9\n");
}

TEST(CliTest, DecodeErrors) {
  TempDir dir;
  const std::string c = path_of(dir, "c.post"), m = path_of(dir, "m.post"), m2 = path_of(dir, "m2.post");
  ASSERT_EQ(run_tool({"synth", "--text", "AB", "--out", c, "--manner-out", m}).status, 0);
  ASSERT_EQ(run_tool({"synth", "--text", "ABC", "--out", path_of(dir, "x.post"), "--manner-out", m2}).status, 0);
  const Result mismatch = run_tool({"decode", "manner", c, "--manner", m2});
  EXPECT_NE(mismatch.status, 0);
  EXPECT_NE(mismatch.err.find("error:"), std::string::npos);
  EXPECT_EQ(mismatch.out, "");
  EXPECT_NE(run_tool({"decode", "manner", c}).status, 0);
  EXPECT_NE(run_tool({"decode", "greedy", path_of(dir, "absent.post")}).status, 0);
  EXPECT_NE(run_tool({"decode", "beam", c}).status, 0);
  // A manner file in place of characters and vice versa.
  EXPECT_NE(run_tool({"decode", "manner", c, "--manner", c}).status, 0);
}

TEST(CliTest, LossPrintsLogProbability) {
  TempDir dir;
  const std::string p = path_of(dir, "p.post");
  io::write_file(p, "#labels:<,A,>\n#frames:1\n0.2,0.8,0\n");
  const Result r = run_tool({"loss", p, "--target", "A"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(std::stod(r.out), std::log(0.8));
  const Result unreachable = run_tool({"loss", p, "--target", "AA"});
  EXPECT_EQ(unreachable.status, 0);
  EXPECT_EQ(unreachable.out, "-inf\n");
  EXPECT_NE(run_tool({"loss", p, "--target", "A<"}).status, 0);
  EXPECT_NE(run_tool({"loss", p, "--target", "AA", "--grad", path_of(dir, "g.post")}).status, 0);
}

TEST(CliTest, GradientFileMatchesFiniteDifferences) {
  TempDir dir;
  std::mt19937_64 rng(3);
  const Alphabet a = mannerctc::testing::letters_alphabet(4);
  const PosteriorMatrix p(a, mannerctc::testing::random_stochastic(rng, 6, 4, 0.05));
  const std::string path = path_of(dir, "p.post"), grad = path_of(dir, "g.post");
  io::write_posteriors(p, path);
  ASSERT_EQ(run_tool({"loss", path, "--target", "AB", "--grad", grad}).status, 0);

  // The file is the posterior layout with a gradient marker and free rows.
  const std::string text = io::read_file(grad);
  ASSERT_TRUE(text.starts_with("#labels:<,A,B,>\n#frames:6\n#kind:gradient\n"));
  std::istringstream lines(text);
  std::string line;
  for (int i = 0; i < 3; ++i) std::getline(lines, line);
  Matrix g(6, 4);
  for (std::size_t t = 0; t < 6; ++t) {
    std::getline(lines, line);
    std::istringstream row(line);
    std::string cell;
    for (std::size_t k = 0; k < 4; ++k) {
      std::getline(row, cell, ',');
      g(t, k) = std::stod(cell);
    }
  }
  const Transcript z{1, 2};
  const Matrix fd = mannerctc::testing::central_differences(
      p.values(), 1e-6, false, [&](const Matrix& q) { return -ctc_log_forward(q, z).log_prob; });
  for (std::size_t t = 0; t < 6; ++t) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (std::abs(g(t, k)) > 1e-8) {
        EXPECT_LE(std::abs(fd(t, k) - g(t, k)) / std::abs(g(t, k)), 1e-4);
      }
    }
  }
}

TEST(CliTest, MapExamples) {
  EXPECT_EQ(run_tool({"map", "--text", "ONE"}).out, "VNV\n");
  EXPECT_EQ(run_tool({"map", "--text", "A N"}).out, "V>N\n");
  EXPECT_EQ(run_tool({"map", "--text", "A N", "--human"}).out, "V N\n");
  const Result bad = run_tool({"map", "--text", "Ω"});
  EXPECT_NE(bad.status, 0);
  EXPECT_NE(bad.err.find("Ω"), std::string::npos);
}

TEST(CliTest, CustomMannerMap) {
  TempDir dir;
  io::write_file(dir / "map.tsv", "A\tS\nB\tV\n");
  EXPECT_EQ(run_tool({"map", "--text", "AB", "--manner-map", path_of(dir, "map.tsv")}).out, "SV\n");
  EXPECT_NE(run_tool({"map", "--text", "AC", "--manner-map", path_of(dir, "map.tsv")}).status, 0);
}

TEST(CliTest, UsageErrors) {
  EXPECT_NE(run_tool({}).status, 0);
  EXPECT_NE(run_tool({"frobnicate"}).status, 0);
  EXPECT_NE(run_tool({"synth", "--text", "AB"}).status, 0);
  EXPECT_NE(run_tool({"synth", "--text", "AB", "--out", "x", "--suppress", "one"}).status, 0);
  EXPECT_EQ(run_tool({"--help"}).status, 0);
}

class EvalTest : public ::testing::Test {
 protected:
  // Writes synth pairs for each transcript; peak `suppress` (if any) is
  // weakened in the character stream only.
  std::string write_manifest(const std::vector<std::string>& texts, std::optional<std::size_t> suppress,
                             bool with_manner = true) {
    std::string manifest;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const std::string id = "utt" + std::to_string(i);
      std::vector<std::string> args{"synth", "--text", texts[i], "--out", path_of(dir_, id + ".c.post")};
      if (with_manner) {
        args.push_back("--manner-out");
        args.push_back(path_of(dir_, id + ".m.post"));
      }
      if (suppress) {
        args.push_back("--suppress");
        args.push_back(std::to_string(*suppress) + ",0.1");
      }
      EXPECT_EQ(run_tool(args).status, 0);
      io::ManifestEntry entry{id, id + ".c.post", std::nullopt, texts[i]};
      if (with_manner) entry.manner_posteriors = id + ".m.post";
      manifest += io::serialize_manifest_entry(entry) + "\n";
    }
    io::write_file(dir_ / "list.jsonl", manifest);
    return path_of(dir_, "list.jsonl");
  }

  nlohmann::json eval_json(const std::string& manifest, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"eval", manifest, "--format", "json", "--out", path_of(dir_, "r.json")};
    args.insert(args.end(), extra.begin(), extra.end());
    const Result r = run_tool(args);
    EXPECT_EQ(r.status, 0) << r.err;
    return nlohmann::json::parse(io::read_file(dir_ / "r.json"));
  }

  TempDir dir_;
};

TEST_F(EvalTest, CleanPairsScoreZero) {
  const auto j = eval_json(write_manifest({"ONE TWO", "SEVEN"}, std::nullopt));
  EXPECT_EQ(j["aggregate"]["baseline"]["wer"].get<double>(), 0.0);
  EXPECT_EQ(j["aggregate"]["proposed"]["wer"].get<double>(), 0.0);
  EXPECT_EQ(j["utterances"][0]["proposed"]["hypothesis"], "ONE TWO");
}

TEST_F(EvalTest, SuppressedPairsAreRecovered) {
  const auto j = eval_json(write_manifest({"CAT", "DOG", "ONE TWO"}, 1), {"--mer"});
  EXPECT_GT(j["aggregate"]["baseline"]["cer"].get<double>(), 0.0);
  EXPECT_EQ(j["aggregate"]["proposed"]["cer"].get<double>(), 0.0);
  EXPECT_EQ(j["utterances"][0]["baseline"]["hypothesis"], "CT");
  EXPECT_EQ(j["aggregate"]["manner"]["mer"].get<double>(), 0.0);
}

TEST_F(EvalTest, SummaryAndTextReport) {
  const std::string manifest = write_manifest({"CAT"}, 1);
  const Result r = run_tool({"eval", manifest});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "Utterance  Method    %WER    %CER\n"
            "ALL        Baseline  100.0   33.3\n"
            "ALL        Proposed  0.0     0.0\n");
  ASSERT_EQ(run_tool({"eval", manifest, "--out", path_of(dir_, "r.txt")}).status, 0);
  EXPECT_EQ(io::read_file(dir_ / "r.txt"),
            "Utterance  Method    %WER    %CER\n"
            "utt0       Baseline  100.0   33.3\n"
            "utt0       Proposed  0.0     0.0\n"
            "ALL        Baseline  100.0   33.3\n"
            "ALL        Proposed  0.0     0.0\n");
}

TEST_F(EvalTest, EmptyManifest) {
  io::write_file(dir_ / "empty.jsonl", "");
  const Result r = run_tool({"eval", path_of(dir_, "empty.jsonl"), "--out", path_of(dir_, "r.csv"), "--format", "csv"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "Utterance  Method    %WER    %CER\n");
  EXPECT_EQ(io::read_file(dir_ / "r.csv"),
            "id,method,wer_percent,cer_percent,mer_percent,word_errors,words,char_errors,chars,hypothesis\n");
}

TEST_F(EvalTest, MissingMannerStreamNeedsDerive) {
  const std::string manifest = write_manifest({"CAT"}, std::nullopt, false);
  const Result r = run_tool({"eval", manifest});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("utt0"), std::string::npos);
  const auto j = eval_json(manifest, {"--derive-manner"});
  EXPECT_EQ(j["aggregate"]["proposed"]["cer"].get<double>(), 0.0);
}

TEST_F(EvalTest, FailureNamesFirstBadUtterance) {
  write_manifest({"CAT", "DOG", "EMU"}, std::nullopt);
  io::write_file(dir_ / "utt1.c.post", "#labels:<,A,>\n#frames:1\n0.5,0.5\n");
  io::write_file(dir_ / "utt2.c.post", "garbage");
  const Result r = run_tool({"eval", path_of(dir_, "list.jsonl"), "--jobs", "3"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("'utt1'"), std::string::npos);
  EXPECT_EQ(r.err.find("'utt2'"), std::string::npos);
}

TEST_F(EvalTest, ReportsIndependentOfJobs) {
  std::vector<std::string> texts;
  for (int i = 0; i < 12; ++i) texts.push_back(std::string(1, static_cast<char>('A' + i)) + "RM " + "NOSE");
  const std::string manifest = write_manifest(texts, 2);
  std::string reference;
  for (const char* jobs : {"1", "2", "5", "16"}) {
    ASSERT_EQ(run_tool({"eval", manifest, "--jobs", jobs, "--mer", "--format", "csv", "--out",
                        path_of(dir_, "r.csv")})
                  .status,
              0);
    const std::string bytes = io::read_file(dir_ / "r.csv");
    if (reference.empty()) reference = bytes;
    EXPECT_EQ(bytes, reference) << jobs;
  }
}

}  // namespace
}  // namespace mannerctc::cli
