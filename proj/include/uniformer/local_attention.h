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

#ifndef UNIFORMER_LOCAL_ATTENTION_H_
#define UNIFORMER_LOCAL_ATTENTION_H_

#include <cstddef>

#include "uniformer/numerics.h"
#include "uniformer/tensor.h"

namespace uniformer {

// q, k, v partitioned into T = N / window_len independent windows. Window i
// of original batch entry b sits at blocked batch index b * T + i.
struct BlockedTensors {
  Tensor3 q_b;
  Tensor3 k_b;
  Tensor3 v_b;
  size_t window_count;
  size_t window_len;
};

// Throws ShapeError if q, k, v disagree and ConfigError if window_len is zero
// or does not divide N. Partial windows are rejected, never padded.
BlockedTensors Blockify(const Tensor3& q, const Tensor3& k, const Tensor3& v,
                        size_t window_len);
// Single-tensor form used for outputs and round trips.
Tensor3 BlockifyOne(const Tensor3& x, size_t window_len);

// Exact inverse of Blockify for one tensor. Throws ShapeError when the
// blocked batch count is not a multiple of original_batch.
Tensor3 Deblockify(const Tensor3& x_b, size_t original_batch);

// Windowed softmax(Q K^T / sqrt(D)) V evaluated with the tiled online-softmax
// recurrence. Each query row keeps a running max m, normalizer l and
// accumulator acc; every key/value tile of tile_len rows (the last tile may be
// short) rescales the running state by exp(m_old - m) before adding its own
// contribution, and the row finishes with acc / l.
//
// Windows are independent and run on opts.threads workers; tiles inside a
// window are sequential.
Tensor3 LocalBlockAttention(const Tensor3& q, const Tensor3& k,
                            const Tensor3& v, size_t window_len,
                            size_t tile_len, const KernelOptions& opts = {});

// Windowed attention via the brute-force oracle: blockify, full softmax per
// window, deblockify. Always double precision.
Tensor3 LocalBlockAttentionReference(const Tensor3& q, const Tensor3& k,
                                     const Tensor3& v, size_t window_len);

}  // namespace uniformer

#endif  // UNIFORMER_LOCAL_ATTENTION_H_
