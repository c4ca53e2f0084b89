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

#ifndef UNIFORMER_GLOBAL_ATTENTION_H_
#define UNIFORMER_GLOBAL_ATTENTION_H_

#include <cstddef>
#include <vector>

#include "uniformer/numerics.h"
#include "uniformer/tensor.h"

namespace uniformer {

// One D x D content matrix per batch entry. Row f is the softmax over the
// sequence of K's column f, used as weights over the rows of V.
using ContentMatrices = std::vector<Matrix>;

// Builds every content matrix with a per-feature streaming softmax over
// sequence blocks of seq_tile rows (the last block may be short). For each
// (batch, feature) pair the running max is taken over K's column f only and
// the accumulator is a length-D vector, so memory is O(D^2) per batch entry
// independent of N.
//
// (batch, feature) pairs run on opts.threads workers; sequence blocks within
// a pair are sequential. Throws ShapeError on mismatched dims and ConfigError
// unless 1 <= seq_tile <= N.
ContentMatrices GlobalContentMatrixStreaming(const Tensor3& k,
                                             const Tensor3& v,
                                             size_t seq_tile,
                                             const KernelOptions& opts = {});

// softmax_feat(Q) times the streamed content matrix. No 1/sqrt(D) scaling.
Tensor3 GlobalLinearAttention(const Tensor3& q, const Tensor3& k,
                              const Tensor3& v, size_t seq_tile,
                              const KernelOptions& opts = {});

}  // namespace uniformer

#endif  // UNIFORMER_GLOBAL_ATTENTION_H_
