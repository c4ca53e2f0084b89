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

#ifndef UNIFORMER_LAYER_H_
#define UNIFORMER_LAYER_H_

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "uniformer/fixed_point.h"
#include "uniformer/numerics.h"
#include "uniformer/tensor.h"

namespace uniformer {

// The five benchmarked branch configurations.
enum class Mode {
  kMixStreaming,             // streaming local + streaming global
  kMixReference,             // oracle local + oracle global
  kLocalRefGlobalStreaming,  // oracle local + streaming global
  kGlobalOnlyStreaming,
  kGlobalOnlyReference,
};

inline constexpr std::array<Mode, 5> kAllModes = {
    Mode::kMixStreaming, Mode::kMixReference, Mode::kLocalRefGlobalStreaming,
    Mode::kGlobalOnlyStreaming, Mode::kGlobalOnlyReference};

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);
// Comma-separated list of every mode name, for error messages.
std::string ValidModeNames();

bool HasLocalBranch(Mode mode);
bool LocalIsStreaming(Mode mode);
bool GlobalIsStreaming(Mode mode);
// The all-oracle mode computing the same function as `mode`.
Mode ReferenceCounterpart(Mode mode);

struct AttentionConfig {
  size_t window_len = 64;
  size_t tile_len = 16;
  size_t seq_tile = 64;
  Mode mode = Mode::kMixStreaming;
  // Fraction of heads routed to the local branch in mix modes.
  double local_fraction = 0.5;
  Precision precision = Precision::kDouble;
  // Used only when precision is kFixed.
  FixedPointFormat fixed_format{16, 12};
  int threads = 1;
};

struct HeadSplit {
  size_t local_heads;
  size_t global_heads;
};

// Local head count is round-half-up(local_fraction * heads) in mix modes and
// zero in global-only modes. Throws ConfigError when a mix mode would leave
// either branch empty or the fraction lies outside [0, 1].
HeadSplit ComputeHeadSplit(size_t heads, const AttentionConfig& cfg);

struct BranchInputs {
  Tensor3 q, k, v;
};

struct SplitResult {
  HeadSplit split;
  // Heads [0, local_heads) folded into the batch axis; empty in global-only
  // modes.
  std::optional<BranchInputs> local;
  // Heads [local_heads, H) folded into the batch axis. Both branches see the
  // full sequence.
  BranchInputs global;
};

SplitResult SplitStreams(const Tensor4& q, const Tensor4& k, const Tensor4& v,
                         const AttentionConfig& cfg);

// Runs both branches on their head subsets and concatenates the outputs
// back along the head axis in original head order. Branch failures are
// rethrown with the branch name prefixed.
//
// Reference branches always evaluate the double-precision oracles; the
// configured precision applies to the streaming branches.
Tensor4 UniformerAttention(const Tensor4& q, const Tensor4& k,
                           const Tensor4& v, const AttentionConfig& cfg);

// Same as above with the fixed-point rounding supplied by the caller, so
// saturations can be counted. `quantizer` is used only when cfg.precision is
// kFixed.
Tensor4 UniformerAttention(const Tensor4& q, const Tensor4& k,
                           const Tensor4& v, const AttentionConfig& cfg,
                           const Quantizer* quantizer);

// Flat key=value configuration, one entry per line; '#' starts a comment.
// Keys: mode, window_len, tile_len, seq_tile, local_fraction, precision
// (double|single|fixed), format (Qm.n), threads. Unknown keys and malformed
// values raise ConfigError naming the line.
AttentionConfig ParseConfig(std::istream& in, AttentionConfig base = {});
AttentionConfig LoadConfigFile(const std::string& path,
                               AttentionConfig base = {});
std::string FormatConfig(const AttentionConfig& cfg);

}  // namespace uniformer

#endif  // UNIFORMER_LAYER_H_
