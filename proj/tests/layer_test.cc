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

#include "uniformer/layer.h"

#include <gtest/gtest.h>

#include <sstream>

#include "uniformer/errors.h"
#include "uniformer/global_attention.h"
#include "uniformer/local_attention.h"

namespace uniformer {
namespace {

AttentionConfig MixConfig(Mode mode) {
  AttentionConfig cfg;
  cfg.mode = mode;
  cfg.window_len = 8;
  cfg.tile_len = 3;
  cfg.seq_tile = 5;
  return cfg;
}

TEST(ModeTest, NamesRoundTrip) {
  for (Mode m : kAllModes) EXPECT_EQ(ParseMode(ModeName(m)), m);
  EXPECT_FALSE(ParseMode("flash_mix").has_value());
  EXPECT_EQ(ReferenceCounterpart(Mode::kMixStreaming), Mode::kMixReference);
  EXPECT_EQ(ReferenceCounterpart(Mode::kLocalRefGlobalStreaming),
            Mode::kMixReference);
  EXPECT_EQ(ReferenceCounterpart(Mode::kGlobalOnlyStreaming),
            Mode::kGlobalOnlyReference);
}

TEST(HeadSplitTest, HalfOfSixteen) {
  const HeadSplit s = ComputeHeadSplit(16, MixConfig(Mode::kMixStreaming));
  EXPECT_EQ(s.local_heads, 8u);
  EXPECT_EQ(s.global_heads, 8u);
}

TEST(HeadSplitTest, RoundsHalfUp) {
  const HeadSplit s = ComputeHeadSplit(3, MixConfig(Mode::kMixReference));
  EXPECT_EQ(s.local_heads, 2u);
  EXPECT_EQ(s.global_heads, 1u);
}

TEST(HeadSplitTest, GlobalOnlyRoutesEverythingGlobal) {
  for (Mode m : {Mode::kGlobalOnlyStreaming, Mode::kGlobalOnlyReference}) {
    const HeadSplit s = ComputeHeadSplit(5, MixConfig(m));
    EXPECT_EQ(s.local_heads, 0u);
    EXPECT_EQ(s.global_heads, 5u);
  }
}

TEST(HeadSplitTest, MixWithOneHeadIsConfigError) {
  EXPECT_THROW(ComputeHeadSplit(1, MixConfig(Mode::kMixStreaming)), ConfigError);
  AttentionConfig cfg = MixConfig(Mode::kMixStreaming);
  cfg.local_fraction = 1.0;
  EXPECT_THROW(ComputeHeadSplit(4, cfg), ConfigError);
  cfg.local_fraction = -0.1;
  EXPECT_THROW(ComputeHeadSplit(4, cfg), ConfigError);
}

TEST(SplitStreamsTest, FoldsHeadRangesIntoBatch) {
  const Qkv4 in = SeededQkv4({2, 5, 8, 3}, 1);
  const SplitResult parts =
      SplitStreams(in.q, in.k, in.v, MixConfig(Mode::kMixStreaming));
  ASSERT_TRUE(parts.local.has_value());
  EXPECT_EQ(parts.split.local_heads, 3u);
  EXPECT_EQ(parts.local->q.dims(), (Dims3{6, 8, 3}));
  EXPECT_EQ(parts.global.v.dims(), (Dims3{4, 8, 3}));
  // Full sequence reaches both branches.
  EXPECT_EQ(parts.global.k(1 * 2 + 1, 7, 2), in.k(1, 4, 7, 2));
  EXPECT_EQ(parts.local->q(1 * 3 + 2, 0, 0), in.q(1, 2, 0, 0));
}

TEST(UniformerAttentionTest, MixStreamingMatchesReferenceSeed23) {
  const Qkv4 in = SeededQkv4({2, 4, 32, 16}, 23);
  const Tensor4 a = UniformerAttention(in.q, in.k, in.v, MixConfig(Mode::kMixStreaming));
  const Tensor4 b = UniformerAttention(in.q, in.k, in.v, MixConfig(Mode::kMixReference));
  EXPECT_LE(RelativeError(a.data(), b.data()), 1e-10);
}

TEST(UniformerAttentionTest, EveryStreamingModeMatchesItsReference) {
  const Qkv4 in = SeededQkv4({3, 6, 40, 12}, 24);
  for (Mode m : {Mode::kMixStreaming, Mode::kLocalRefGlobalStreaming,
                 Mode::kGlobalOnlyStreaming}) {
    const Tensor4 a = UniformerAttention(in.q, in.k, in.v, MixConfig(m));
    const Tensor4 b = UniformerAttention(in.q, in.k, in.v,
                                         MixConfig(ReferenceCounterpart(m)));
    EXPECT_LE(RelativeError(a.data(), b.data()), 1e-10) << ModeName(m);
  }
}

TEST(UniformerAttentionTest, GlobalOnlySingleHeadIsGlobalBranch) {
  const Qkv4 in = SeededQkv4({2, 1, 16, 8}, 25);
  const Tensor4 out = UniformerAttention(in.q, in.k, in.v,
                                         MixConfig(Mode::kGlobalOnlyStreaming));
  const Tensor3 direct = GlobalLinearAttention(
      in.q.FoldHeads(0, 1), in.k.FoldHeads(0, 1), in.v.FoldHeads(0, 1), 5);
  EXPECT_EQ(out.FoldHeads(0, 1), direct);
}

TEST(UniformerAttentionTest, BranchOutputsLandInOriginalHeadOrder) {
  const Qkv4 in = SeededQkv4({1, 4, 16, 4}, 26);
  const AttentionConfig cfg = MixConfig(Mode::kMixStreaming);
  const Tensor4 out = UniformerAttention(in.q, in.k, in.v, cfg);
  const Tensor3 local = LocalBlockAttention(
      in.q.FoldHeads(0, 2), in.k.FoldHeads(0, 2), in.v.FoldHeads(0, 2), 8, 3);
  const Tensor3 global = GlobalLinearAttention(
      in.q.FoldHeads(2, 2), in.k.FoldHeads(2, 2), in.v.FoldHeads(2, 2), 5);
  EXPECT_EQ(out.FoldHeads(0, 2), local);
  EXPECT_EQ(out.FoldHeads(2, 2), global);
}

TEST(UniformerAttentionTest, PermutingHeadsWithinABranchPermutesOutputs) {
  const Qkv4 in = SeededQkv4({2, 4, 16, 4}, 27);
  const AttentionConfig cfg = MixConfig(Mode::kMixStreaming);
  // Swap heads 0<->1 (both local) and 2<->3 (both global).
  const size_t perm[] = {1, 0, 3, 2};
  Qkv4 swapped = in;
  for (Tensor4* t : {&swapped.q, &swapped.k, &swapped.v}) {
    const Tensor4& src = t == &swapped.q ? in.q : t == &swapped.k ? in.k : in.v;
    for (size_t h = 0; h < 4; ++h) t->UnfoldHeads(src.FoldHeads(perm[h], 1), h, 1);
  }
  const Tensor4 out = UniformerAttention(in.q, in.k, in.v, cfg);
  const Tensor4 out_swapped =
      UniformerAttention(swapped.q, swapped.k, swapped.v, cfg);
  for (size_t h = 0; h < 4; ++h) {
    EXPECT_EQ(out_swapped.FoldHeads(h, 1), out.FoldHeads(perm[h], 1));
  }
}

TEST(UniformerAttentionTest, HeadsAreIndependent) {
  Qkv4 in = SeededQkv4({1, 4, 16, 4}, 28);
  const AttentionConfig cfg = MixConfig(Mode::kMixStreaming);
  const Tensor4 before = UniformerAttention(in.q, in.k, in.v, cfg);
  for (size_t n = 0; n < 16; ++n) {
    for (size_t d = 0; d < 4; ++d) {
      in.q(0, 2, n, d) = 0;
      in.k(0, 2, n, d) = 0;
      in.v(0, 2, n, d) = 0;
    }
  }
  const Tensor4 after = UniformerAttention(in.q, in.k, in.v, cfg);
  for (size_t h = 0; h < 4; ++h) {
    if (h == 2) {
      EXPECT_NE(after.FoldHeads(h, 1), before.FoldHeads(h, 1));
    } else {
      EXPECT_EQ(after.FoldHeads(h, 1), before.FoldHeads(h, 1));
    }
  }
}

TEST(UniformerAttentionTest, BranchLocality) {
  // Perturbing tokens outside window 0 leaves window 0 of local heads
  // untouched but moves every global-head row.
  Qkv4 in = SeededQkv4({1, 2, 24, 4}, 29);
  const AttentionConfig cfg = MixConfig(Mode::kMixStreaming);
  const Tensor4 before = UniformerAttention(in.q, in.k, in.v, cfg);
  for (size_t h = 0; h < 2; ++h) {
    for (size_t n = 8; n < 24; ++n) {
      for (size_t d = 0; d < 4; ++d) {
        in.k(0, h, n, d) += 0.5;
        in.v(0, h, n, d) -= 0.5;
      }
    }
  }
  const Tensor4 after = UniformerAttention(in.q, in.k, in.v, cfg);
  for (size_t n = 0; n < 8; ++n) {
    for (size_t d = 0; d < 4; ++d) {
      EXPECT_EQ(after(0, 0, n, d), before(0, 0, n, d));
      EXPECT_NE(after(0, 1, n, d), before(0, 1, n, d));
    }
  }
}

TEST(UniformerAttentionTest, BranchErrorsNameTheBranch) {
  const Qkv4 in = SeededQkv4({1, 2, 12, 4}, 30);
  AttentionConfig cfg = MixConfig(Mode::kMixStreaming);  // window 8 !| 12
  try {
    UniformerAttention(in.q, in.k, in.v, cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("local branch"), std::string::npos);
  }
  cfg.window_len = 4;
  cfg.tile_len = 2;
  cfg.seq_tile = 13;
  try {
    UniformerAttention(in.q, in.k, in.v, cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("global branch"), std::string::npos);
  }
}

TEST(UniformerAttentionTest, SinglePrecisionWithinLooseTolerance) {
  const Qkv4 in = SeededQkv4({2, 4, 32, 16}, 31);
  AttentionConfig cfg = MixConfig(Mode::kMixStreaming);
  cfg.precision = Precision::kSingle;
  const Tensor4 a = UniformerAttention(in.q, in.k, in.v, cfg);
  const Tensor4 b =
      UniformerAttention(in.q, in.k, in.v, MixConfig(Mode::kMixReference));
  EXPECT_LE(RelativeError(a.data(), b.data()), 1e-4);
}

TEST(ConfigFileTest, ParsesAllKeys) {
  std::istringstream in(
      "# benchmark setup\n"
      "mode=local_ref_global_streaming\n"
      "window_len = 49\n"
      "tile_len=7   # ragged last tile\n"
      "seq_tile=32\n"
      "local_fraction=0.25\n"
      "precision=fixed\n"
      "format=Q3.12\n"
      "threads=4\n");
  const AttentionConfig cfg = ParseConfig(in);
  EXPECT_EQ(cfg.mode, Mode::kLocalRefGlobalStreaming);
  EXPECT_EQ(cfg.window_len, 49u);
  EXPECT_EQ(cfg.tile_len, 7u);
  EXPECT_EQ(cfg.seq_tile, 32u);
  EXPECT_EQ(cfg.local_fraction, 0.25);
  EXPECT_EQ(cfg.precision, Precision::kFixed);
  EXPECT_EQ(cfg.fixed_format, FixedPointFormat(16, 12));
  EXPECT_EQ(cfg.threads, 4);

  std::istringstream again(FormatConfig(cfg));
  const AttentionConfig round = ParseConfig(again);
  EXPECT_EQ(FormatConfig(round), FormatConfig(cfg));
}

TEST(ConfigFileTest, RejectsBadLines) {
  for (const char* text : {"mode=fast\n", "window_len=abc\n", "colour=red\n",
                           "window_len\n", "precision=half\n", "format=3.12\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(ParseConfig(in), ConfigError) << text;
  }
  EXPECT_THROW(LoadConfigFile("/nonexistent/cfg.txt"), IoError);
}

}  // namespace
}  // namespace uniformer
