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

#include "uniformer/verify.h"

#include <algorithm>
#include <random>
#include <set>

#include "uniformer/errors.h"
#include "uniformer/global_attention.h"
#include "uniformer/layer.h"
#include "uniformer/local_attention.h"
#include "uniformer/reference.h"

namespace uniformer {

namespace {

constexpr double kModeTolerance = 1e-10;
constexpr double kTileTolerance = 1e-12;

size_t Draw(std::mt19937_64& gen, size_t lo, size_t hi) {
  return lo + static_cast<size_t>(gen() % (hi - lo + 1));
}

std::string ShapeLabel(size_t b, size_t h, size_t n, size_t d, size_t w) {
  return "B=" + std::to_string(b) + " H=" + std::to_string(h) +
         " N=" + std::to_string(n) + " D=" + std::to_string(d) +
         " Nw=" + std::to_string(w);
}

void Record(std::vector<CheckResult>& out, std::string name, double err,
            double tol) {
  out.push_back({std::move(name), err, tol, err <= tol});
}

}  // namespace

std::vector<CheckResult> RunVerifySuite(uint64_t seed, size_t max_n,
                                        size_t trials) {
  if (max_n < 2) throw UsageError("verify needs max_n >= 2");
  std::mt19937_64 gen(seed);
  std::vector<CheckResult> results;

  for (size_t t = 0; t < trials; ++t) {
    const size_t batch = Draw(gen, 1, 4);
    const size_t heads = Draw(gen, 2, 8);
    const size_t feat = Draw(gen, 1, 64);
    const size_t window = Draw(gen, 1, std::min<size_t>(max_n, 32));
    const size_t windows = Draw(gen, 1, std::max<size_t>(1, max_n / window));
    const size_t seq = window * windows;
    const std::string label = ShapeLabel(batch, heads, seq, feat, window);

    const Qkv4 qkv = SeededQkv4({batch, heads, seq, feat}, gen());
    AttentionConfig cfg;
    cfg.window_len = window;
    cfg.tile_len = Draw(gen, 1, window);
    cfg.seq_tile = Draw(gen, 1, seq);

    for (Mode mode : {Mode::kMixStreaming, Mode::kLocalRefGlobalStreaming,
                      Mode::kGlobalOnlyStreaming}) {
      cfg.mode = mode;
      AttentionConfig ref = cfg;
      ref.mode = ReferenceCounterpart(mode);
      const Tensor4 a = UniformerAttention(qkv.q, qkv.k, qkv.v, cfg);
      const Tensor4 b = UniformerAttention(qkv.q, qkv.k, qkv.v, ref);
      Record(results,
             std::string(ModeName(mode)) + " vs " +
                 std::string(ModeName(ref.mode)) + " " + label,
             RelativeError(a.data(), b.data()), kModeTolerance);
    }

    const Tensor3 q = qkv.q.FoldHeads(0, heads);
    const Tensor3 k = qkv.k.FoldHeads(0, heads);
    const Tensor3 v = qkv.v.FoldHeads(0, heads);

    const Tensor3 one_tile = LocalBlockAttention(q, k, v, window, window);
    std::set<size_t> tiles = {1, 2, window / 2, window - 1, window};
    for (size_t tile : tiles) {
      if (tile == 0 || tile > window) continue;
      const Tensor3 out = LocalBlockAttention(q, k, v, window, tile);
      Record(results, "local tile " + std::to_string(tile) + " " + label,
             RelativeError(out.data(), one_tile.data()), kTileTolerance);
    }

    const Tensor3 one_block = GlobalLinearAttention(q, k, v, seq);
    for (size_t block : std::set<size_t>{1, 3, seq}) {
      if (block > seq) continue;
      const Tensor3 out = GlobalLinearAttention(q, k, v, block);
      Record(results, "global seq_tile " + std::to_string(block) + " " + label,
             RelativeError(out.data(), one_block.data()), kTileTolerance);
    }

    if (seq <= 128) {
      const Tensor3 right = LinearAttentionDirect(q, k, v);
      const Tensor3 left = LinearAttentionLeftGrouped(q, k, v);
      Record(results, "associativity " + label,
             RelativeError(right.data(), left.data()), kModeTolerance);
    }
  }
  return results;
}

}  // namespace uniformer
