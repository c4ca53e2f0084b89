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

#ifndef UNIFORMER_NUMERICS_H_
#define UNIFORMER_NUMERICS_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string_view>

#include "uniformer/fixed_point.h"

namespace uniformer {

// Arithmetic used by the streaming kernels. Reference oracles ignore this and
// always run in double.
enum class Precision { kDouble, kSingle, kFixed };

std::string_view PrecisionName(Precision p);
std::optional<Precision> ParsePrecision(std::string_view name);

// Rounds values onto a fixed-point grid and counts saturations. Safe to share
// across worker threads.
class Quantizer {
 public:
  explicit Quantizer(FixedPointFormat fmt) : fmt_(fmt) {}
  Quantizer(const Quantizer&) = delete;
  Quantizer& operator=(const Quantizer&) = delete;

  double operator()(double x) const {
    bool sat = false;
    const double y = QuantizeValue(x, fmt_, &sat);
    if (sat) saturations_.fetch_add(1, std::memory_order_relaxed);
    return y;
  }

  const FixedPointFormat& format() const { return fmt_; }
  uint64_t saturation_count() const {
    return saturations_.load(std::memory_order_relaxed);
  }

 private:
  FixedPointFormat fmt_;
  mutable std::atomic<uint64_t> saturations_{0};
};

// Execution options shared by the streaming kernels.
//
// kSingle runs the recurrences (running max, normalizer, accumulator) in
// float; dot products still accumulate in double. kFixed keeps double
// arithmetic but rounds every GEMM operand (inputs, probabilities, softmax
// outputs, content matrix) and every accumulator exit (scores, outputs) with
// `quantizer`; the running accumulators themselves stay wide.
struct KernelOptions {
  Precision precision = Precision::kDouble;
  const Quantizer* quantizer = nullptr;  // required for kFixed
  int threads = 1;
};

}  // namespace uniformer

#endif  // UNIFORMER_NUMERICS_H_
