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

#ifndef UNIFORMER_QUANTSIM_H_
#define UNIFORMER_QUANTSIM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "uniformer/fixed_point.h"
#include "uniformer/layer.h"
#include "uniformer/tensor.h"

namespace uniformer {

struct QuantizedTensor {
  Tensor3 values;
  uint64_t saturation_count;
};

// Rounds every element to the nearest grid point of fmt (ties to even),
// saturating at the range ends. Never throws; saturations are counted.
QuantizedTensor Quantize(const Tensor3& x, const FixedPointFormat& fmt);

struct ErrorReport {
  int total_bits;
  int frac_bits;
  double max_abs;
  double mean_abs;
  uint64_t sat_count;
};

// Evaluates the layer in fixed-point mode and compares it against the
// double-precision reference counterpart of cfg.mode.
//
// Policy: q, k, v are quantized once up front. The streaming kernels then
// round every GEMM operand (softmax probabilities, softmax_feat(Q), the
// content matrix) and every accumulator exit (scores, outputs) to fmt, while
// the running accumulators stay in double. Exponentials and softmax run in
// floating point; only their inputs and outputs are quantized.
// sat_count covers every rounding in the run.
ErrorReport FixedAttentionError(const Tensor4& q, const Tensor4& k,
                                const Tensor4& v, const AttentionConfig& cfg,
                                const FixedPointFormat& fmt);

inline constexpr const char* kErrorReportCsvHeader =
    "total_bits,frac_bits,max_abs,mean_abs,sat_count";
// One CSV row (no trailing newline); doubles carry 17 significant digits.
std::string FormatErrorReportCsv(const ErrorReport& report);

// The fixed workload every quantization comparison runs on: seed 23,
// (B=2, H=4, N=32, D=16), window 8, tile 4, seq_tile 8, mix_streaming.
struct QuantFixture {
  Qkv4 qkv;
  AttentionConfig cfg;
};
QuantFixture StandardQuantFixture();

// FixedAttentionError on the standard fixture for each format in turn.
std::vector<ErrorReport> QuantErrorSweep(
    const std::vector<FixedPointFormat>& formats);

}  // namespace uniformer

#endif  // UNIFORMER_QUANTSIM_H_
