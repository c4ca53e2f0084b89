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

#include <cmath>

#include "uniformer/errors.h"
#include "uniformer/global_attention.h"
#include "uniformer/local_attention.h"
#include "uniformer/reference.h"

namespace uniformer {

namespace {

struct ModeInfo {
  Mode mode;
  std::string_view name;
  bool has_local;
  bool local_streaming;
  bool global_streaming;
};

constexpr std::array<ModeInfo, 5> kModeTable = {{
    {Mode::kMixStreaming, "mix_streaming", true, true, true},
    {Mode::kMixReference, "mix_reference", true, false, false},
    {Mode::kLocalRefGlobalStreaming, "local_ref_global_streaming", true, false,
     true},
    {Mode::kGlobalOnlyStreaming, "global_only_streaming", false, false, true},
    {Mode::kGlobalOnlyReference, "global_only_reference", false, false, false},
}};

const ModeInfo& Info(Mode mode) {
  for (const auto& info : kModeTable) {
    if (info.mode == mode) return info;
  }
  throw UsageError("unknown mode value");
}

template <typename Fn>
Tensor3 RunBranch(const char* branch, Fn&& fn) {
  try {
    return fn();
  } catch (const ShapeError& e) {
    throw ShapeError(std::string(branch) + " branch: " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(branch) + " branch: " + e.what());
  }
}

}  // namespace

std::string_view ModeName(Mode mode) { return Info(mode).name; }

std::optional<Mode> ParseMode(std::string_view name) {
  for (const auto& info : kModeTable) {
    if (info.name == name) return info.mode;
  }
  return std::nullopt;
}

std::string ValidModeNames() {
  std::string out;
  for (const auto& info : kModeTable) {
    if (!out.empty()) out += ", ";
    out += info.name;
  }
  return out;
}

bool HasLocalBranch(Mode mode) { return Info(mode).has_local; }
bool LocalIsStreaming(Mode mode) { return Info(mode).local_streaming; }
bool GlobalIsStreaming(Mode mode) { return Info(mode).global_streaming; }

Mode ReferenceCounterpart(Mode mode) {
  return HasLocalBranch(mode) ? Mode::kMixReference
                              : Mode::kGlobalOnlyReference;
}

HeadSplit ComputeHeadSplit(size_t heads, const AttentionConfig& cfg) {
  if (heads == 0) throw ConfigError("head count must be positive");
  if (!HasLocalBranch(cfg.mode)) return {0, heads};
  if (!(cfg.local_fraction >= 0.0 && cfg.local_fraction <= 1.0)) {
    throw ConfigError("local_fraction " + std::to_string(cfg.local_fraction) +
                      " outside [0, 1]");
  }
  const auto local = static_cast<size_t>(
      std::floor(cfg.local_fraction * static_cast<double>(heads) + 0.5));
  if (local == 0 || local == heads) {
    throw ConfigError("mode " + std::string(ModeName(cfg.mode)) + " with " +
                      std::to_string(heads) + " head(s) and local_fraction " +
                      std::to_string(cfg.local_fraction) +
                      " leaves a branch without heads");
  }
  return {local, heads - local};
}

SplitResult SplitStreams(const Tensor4& q, const Tensor4& k, const Tensor4& v,
                         const AttentionConfig& cfg) {
  if (q.dims() != k.dims() || q.dims() != v.dims()) {
    throw ShapeError("SplitStreams: q " + q.ShapeString() + ", k " +
                     k.ShapeString() + ", v " + v.ShapeString() +
                     " must share dims");
  }
  const HeadSplit split = ComputeHeadSplit(q.dims().heads, cfg);
  const size_t first_global = split.local_heads;
  SplitResult out{split, std::nullopt,
                  BranchInputs{q.FoldHeads(first_global, split.global_heads),
                               k.FoldHeads(first_global, split.global_heads),
                               v.FoldHeads(first_global, split.global_heads)}};
  if (split.local_heads > 0) {
    out.local = BranchInputs{q.FoldHeads(0, split.local_heads),
                             k.FoldHeads(0, split.local_heads),
                             v.FoldHeads(0, split.local_heads)};
  }
  return out;
}

Tensor4 UniformerAttention(const Tensor4& q, const Tensor4& k,
                           const Tensor4& v, const AttentionConfig& cfg) {
  if (cfg.precision == Precision::kFixed) {
    Quantizer quantizer(cfg.fixed_format);
    return UniformerAttention(q, k, v, cfg, &quantizer);
  }
  return UniformerAttention(q, k, v, cfg, nullptr);
}

Tensor4 UniformerAttention(const Tensor4& q, const Tensor4& k,
                           const Tensor4& v, const AttentionConfig& cfg,
                           const Quantizer* quantizer) {
  SplitResult parts = SplitStreams(q, k, v, cfg);
  const KernelOptions opts{cfg.precision, quantizer, cfg.threads};
  Tensor4 out(q.dims());

  if (parts.local) {
    const BranchInputs& in = *parts.local;
    Tensor3 local = RunBranch("local", [&] {
      return LocalIsStreaming(cfg.mode)
                 ? LocalBlockAttention(in.q, in.k, in.v, cfg.window_len,
                                       cfg.tile_len, opts)
                 : LocalBlockAttentionReference(in.q, in.k, in.v,
                                                cfg.window_len);
    });
    out.UnfoldHeads(local, 0, parts.split.local_heads);
  }

  const BranchInputs& in = parts.global;
  Tensor3 global = RunBranch("global", [&] {
    return GlobalIsStreaming(cfg.mode)
               ? GlobalLinearAttention(in.q, in.k, in.v, cfg.seq_tile, opts)
               : LinearAttentionDirect(in.q, in.k, in.v);
  });
  out.UnfoldHeads(global, parts.split.local_heads, parts.split.global_heads);
  return out;
}

}  // namespace uniformer
