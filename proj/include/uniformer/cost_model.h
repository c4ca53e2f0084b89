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

#ifndef UNIFORMER_COST_MODEL_H_
#define UNIFORMER_COST_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "uniformer/layer.h"

namespace uniformer {

// A benchmarked configuration: one of the five layer modes, or the full
// quadratic attention baseline over all heads.
class BenchMode {
 public:
  static BenchMode Vanilla() { return BenchMode(true, Mode::kMixReference); }
  static BenchMode Layer(Mode mode) { return BenchMode(false, mode); }

  // Accepts "vanilla" or any layer mode name. Throws UsageError listing the
  // valid names otherwise.
  static BenchMode Parse(std::string_view name);

  bool is_vanilla() const { return vanilla_; }
  // Meaningful only when !is_vanilla().
  Mode mode() const { return mode_; }
  std::string Name() const;

  friend bool operator==(const BenchMode&, const BenchMode&) = default;

 private:
  BenchMode(bool vanilla, Mode mode) : vanilla_(vanilla), mode_(mode) {}
  bool vanilla_;
  Mode mode_;
};

std::string ValidBenchModeNames();

struct BenchShape {
  size_t batch;
  size_t heads;
  size_t seq;
  size_t feat;
  size_t window_len;
  double local_fraction = 0.5;
};

// Multiplies and exponentials only; additions are not counted.
struct ModeledCost {
  uint64_t mults;
  uint64_t exps;
  friend bool operator==(const ModeledCost&, const ModeledCost&) = default;
};

// Closed forms, with H_l / H_g the head split of the mode and T = N / N_w:
//   vanilla:  mults = B*H*2*N^2*D         exps = B*H*N^2
//   local:    mults = B*H_l*T*2*N_w^2*D   exps = B*H_l*T*N_w^2
//   global:   mults = B*H_g*2*N*D^2       exps = B*H_g*2*N*D
// Global exps count softmax_feat(Q) and the sequence softmax of K. Streaming
// and reference variants of a mode share the same counts. Throws ConfigError
// when a local branch exists and N_w does not divide N.
ModeledCost ComputeModeledCost(const BenchMode& mode, const BenchShape& shape);

}  // namespace uniformer

#endif  // UNIFORMER_COST_MODEL_H_
