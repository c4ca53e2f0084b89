// Copyright 2026 The UniFormer Attention Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uniformer/bench.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "uniformer/cost_model.h"
#include "uniformer/errors.h"

namespace uniformer {
namespace {

namespace fs = std::filesystem;

BenchShape Shape(size_t n) { return BenchShape{1, 2, n, 64, 8}; }

TEST(CostModelTest, VanillaClosedForm) {
  const ModeledCost c =
      ComputeModeledCost(BenchMode::Vanilla(), BenchShape{1, 1, 8, 64, 8});
  EXPECT_EQ(c.mults, 8192u);
  EXPECT_EQ(c.exps, 64u);
}

TEST(CostModelTest, MixClosedForm) {
  // H_l = H_g = 1: local 2*N*N_w*D, global 2*N*D^2.
  const ModeledCost c =
      ComputeModeledCost(BenchMode::Layer(Mode::kMixStreaming), Shape(64));
  EXPECT_EQ(c.mults, 2u * 64 * 8 * 64 + 2u * 64 * 64 * 64);
  EXPECT_EQ(c.exps, 64u * 8 + 2u * 64 * 64);
}

TEST(CostModelTest, StreamingAndReferenceShareCounts) {
  for (Mode m : kAllModes) {
    EXPECT_EQ(ComputeModeledCost(BenchMode::Layer(m), Shape(128)),
              ComputeModeledCost(BenchMode::Layer(ReferenceCounterpart(m)),
                                 Shape(128)));
  }
}

TEST(CostModelTest, MixIsLinearInSequenceLength) {
  const BenchMode mix = BenchMode::Layer(Mode::kMixStreaming);
  for (size_t n : {8, 64, 512}) {
    EXPECT_EQ(ComputeModeledCost(mix, Shape(2 * n)).mults,
              2 * ComputeModeledCost(mix, Shape(n)).mults);
  }
}

TEST(CostModelTest, RatioGrowsMonotonicallyOnPowerGrid) {
  const BenchMode mix = BenchMode::Layer(Mode::kMixStreaming);
  double prev = 0;
  for (size_t n : {8, 16, 64, 128, 256, 512, 1024}) {
    const double ratio =
        static_cast<double>(ComputeModeledCost(BenchMode::Vanilla(), Shape(n)).mults) /
        static_cast<double>(ComputeModeledCost(mix, Shape(n)).mults);
    EXPECT_GT(ratio, prev) << n;
    // Asymptotically linear: ratio / N is constant for this closed form.
    EXPECT_NEAR(ratio / static_cast<double>(n), 2.0 / (8 + 64), 1e-15);
    prev = ratio;
  }
}

TEST(CostModelTest, Errors) {
  EXPECT_THROW(
      ComputeModeledCost(BenchMode::Layer(Mode::kMixReference), Shape(12)),
      ConfigError);
  // Global-only and vanilla need no window divisibility.
  EXPECT_NO_THROW(ComputeModeledCost(BenchMode::Layer(Mode::kGlobalOnlyStreaming),
                                     Shape(12)));
  EXPECT_NO_THROW(ComputeModeledCost(BenchMode::Vanilla(), Shape(12)));
  EXPECT_THROW(BenchMode::Parse("flash"), UsageError);
  try {
    BenchMode::Parse("flash");
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("global_only_reference"),
              std::string::npos);
  }
  EXPECT_EQ(BenchMode::Parse("vanilla"), BenchMode::Vanilla());
  EXPECT_EQ(BenchMode::Parse("mix_reference").Name(), "mix_reference");
}

SweepSpec SmallSweep() {
  SweepSpec spec;
  spec.modes = {BenchMode::Layer(Mode::kGlobalOnlyStreaming)};
  spec.seq_lens = {64, 128, 256};
  spec.feat = 16;
  spec.window_len = 16;
  spec.tile_len = 4;
  spec.seq_tile = 16;
  spec.warmups = 1;
  spec.repeats = 3;
  return spec;
}

TEST(RunSweepTest, OneRecordPerLength) {
  const auto records = RunSweep(SmallSweep());
  ASSERT_EQ(records.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(records[i].mode, "global_only_streaming");
    EXPECT_EQ(records[i].seq, SmallSweep().seq_lens[i]);
    EXPECT_GT(records[i].wall_ns, 0u);
  }
  // Trend, not strict monotonicity: the largest length is not the fastest.
  EXPECT_GT(records[2].wall_ns, records[0].wall_ns);
}

TEST(RunSweepTest, RepeatsChangeOnlyTiming) {
  SweepSpec one = SmallSweep();
  one.repeats = 1;
  SweepSpec nine = SmallSweep();
  nine.repeats = 9;
  const auto a = RunSweep(one);
  const auto b = RunSweep(nine);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].modeled_mults, b[i].modeled_mults);
    EXPECT_EQ(a[i].modeled_exps, b[i].modeled_exps);
  }
}

TEST(RunSweepTest, AllModesInDeterministicOrder) {
  SweepSpec spec = SmallSweep();
  spec.modes = {BenchMode::Vanilla()};
  for (Mode m : kAllModes) spec.modes.push_back(BenchMode::Layer(m));
  spec.seq_lens = {32, 64};
  spec.repeats = 1;
  spec.warmups = 0;
  const auto records = RunSweep(spec);
  ASSERT_EQ(records.size(), 12u);
  EXPECT_EQ(records[0].mode, "vanilla");
  EXPECT_EQ(records[1].seq, 64u);
  EXPECT_EQ(records[2].mode, "mix_streaming");
  EXPECT_EQ(records[11].mode, "global_only_reference");
}

TEST(RunSweepTest, InvalidSpecsAreRejectedBeforeTiming) {
  SweepSpec spec = SmallSweep();
  spec.modes.push_back(BenchMode::Layer(Mode::kMixStreaming));
  spec.seq_lens = {64, 72};  // 72 is not a multiple of window 16
  EXPECT_THROW(RunSweep(spec), ConfigError);
  spec = SmallSweep();
  spec.modes.clear();
  EXPECT_THROW(RunSweep(spec), UsageError);
  spec = SmallSweep();
  spec.repeats = 0;
  EXPECT_THROW(RunSweep(spec), UsageError);
  spec = SmallSweep();
  spec.seq_tile = 100;
  EXPECT_THROW(RunSweep(spec), ConfigError);
}

TEST(CsvTest, SingleRecordGivesTwoLines) {
  const BenchRecord r{"mix_streaming", 1, 2, 64, 16, 8, 12345, 100, 7};
  const fs::path path = fs::temp_directory_path() / "uniformer_csv_one.csv";
  EmitCsv(std::vector<BenchRecord>{r}, path.string());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(),
            "mode,B,H,N,D,window_len,wall_ns,modeled_mults,modeled_exps\n"
            "mix_streaming,1,2,64,16,8,12345,100,7\n");
  fs::remove(path);
}

TEST(CsvTest, ParseRoundTrip) {
  const std::vector<BenchRecord> records = {
      {"vanilla", 1, 16, 1024, 64, 49, 987654321, 2147483648ull, 16777216},
      {"global_only_reference", 4, 8, 256, 32, 16, 1, 3, 5}};
  std::stringstream ss;
  WriteCsv(ss, records);
  EXPECT_EQ(ParseCsv(ss), records);
}

TEST(CsvTest, EmptyRecordsCreateNoFile) {
  const fs::path path = fs::temp_directory_path() / "uniformer_csv_empty.csv";
  fs::remove(path);
  EXPECT_THROW(EmitCsv({}, path.string()), UsageError);
  EXPECT_FALSE(fs::exists(path));
}

TEST(CsvTest, UnwritablePathIsIoError) {
  const BenchRecord r{"vanilla", 1, 1, 8, 8, 8, 1, 1, 1};
  try {
    EmitCsv(std::vector<BenchRecord>{r}, "/nonexistent/dir/out.csv");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/out.csv"),
              std::string::npos);
  }
}

TEST(CsvTest, MalformedInputIsIoError) {
  std::stringstream bad_header("mode,B\nx\n");
  EXPECT_THROW(ParseCsv(bad_header), IoError);
  std::stringstream bad_row(std::string(kBenchCsvHeader) + "\nvanilla,1,2\n");
  EXPECT_THROW(ParseCsv(bad_row), IoError);
}

TEST(GrowthExponentTest, RecoversPowerLaws) {
  const std::vector<double> x = {256, 512, 1024, 2048, 4096};
  std::vector<double> quad, lin;
  for (double n : x) {
    quad.push_back(3.0 * n * n);
    lin.push_back(5.0 * n);
  }
  EXPECT_NEAR(GrowthExponent(x, quad), 2.0, 1e-12);
  EXPECT_NEAR(GrowthExponent(x, lin), 1.0, 1e-12);
  EXPECT_THROW(GrowthExponent(std::vector<double>{1.0}, std::vector<double>{1.0}),
               UsageError);
}

}  // namespace
}  // namespace uniformer
