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

#ifndef UNIFORMER_REFERENCE_H_
#define UNIFORMER_REFERENCE_H_

#include "uniformer/tensor.h"

namespace uniformer {

// Brute-force ground truth for the streaming paths. Always double precision.

// Per batch entry: softmax(Q K^T / sqrt(D)) V with the full N x N score
// matrix materialized.
Tensor3 VanillaAttention(const Tensor3& q, const Tensor3& k, const Tensor3& v);

// Per batch entry: softmax_feat(Q) * C with C = softmax_seq(K)^T V formed
// explicitly. No 1/sqrt(D) temperature.
Tensor3 LinearAttentionDirect(const Tensor3& q, const Tensor3& k,
                              const Tensor3& v);

// The D x D content matrix softmax_seq(K)^T V of batch entry b.
Matrix ContentMatrixDirect(const Tensor3& k, const Tensor3& v, size_t b);

// Same product as LinearAttentionDirect but grouped left to right:
// (softmax_feat(Q) softmax_seq(K)^T) V, which builds an N x N intermediate.
Tensor3 LinearAttentionLeftGrouped(const Tensor3& q, const Tensor3& k,
                                   const Tensor3& v);

}  // namespace uniformer

#endif  // UNIFORMER_REFERENCE_H_
