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

#include "uniformer/cost_model.h"

#include "uniformer/errors.h"

namespace uniformer {

BenchMode BenchMode::Parse(std::string_view name) {
  if (name == "vanilla") return Vanilla();
  if (auto mode = ParseMode(name)) return Layer(*mode);
  throw UsageError("unknown mode '" + std::string(name) +
                   "' (valid: " + ValidBenchModeNames() + ")");
}

std::string BenchMode::Name() const {
  return vanilla_ ? std::string("vanilla") : std::string(ModeName(mode_));
}

std::string ValidBenchModeNames() { return "vanilla, " + ValidModeNames(); }

ModeledCost ComputeModeledCost(const BenchMode& mode, const BenchShape& s) {
  if (s.batch == 0 || s.heads == 0 || s.seq == 0 || s.feat == 0) {
    throw ShapeError("cost model: zero extent in shape");
  }
  const uint64_t b = s.batch;
  const uint64_t n = s.seq;
  const uint64_t d = s.feat;
  if (mode.is_vanilla()) {
    const uint64_t bh = b * s.heads;
    return {bh * 2 * n * n * d, bh * n * n};
  }

  AttentionConfig cfg;
  cfg.mode = mode.mode();
  cfg.local_fraction = s.local_fraction;
  const HeadSplit split = ComputeHeadSplit(s.heads, cfg);

  ModeledCost cost{0, 0};
  if (split.local_heads > 0) {
    if (s.window_len == 0 || s.seq % s.window_len != 0) {
      throw ConfigError("cost model: N=" + std::to_string(s.seq) +
                        " is not divisible by window_len " +
                        std::to_string(s.window_len));
    }
    const uint64_t w = s.window_len;
    const uint64_t windows = n / w;
    cost.mults += b * split.local_heads * windows * 2 * w * w * d;
    cost.exps += b * split.local_heads * windows * w * w;
  }
  cost.mults += b * split.global_heads * 2 * n * d * d;
  cost.exps += b * split.global_heads * 2 * n * d;
  return cost;
}

}  // namespace uniformer
