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

#include "uniformer/reference.h"

#include <cmath>

#include "uniformer/errors.h"

namespace uniformer {

namespace {

void RequireSameDims(const Tensor3& q, const Tensor3& k, const Tensor3& v,
                     const char* op) {
  if (q.dims() != k.dims() || q.dims() != v.dims()) {
    throw ShapeError(std::string(op) + ": q " + q.ShapeString() + ", k " +
                     k.ShapeString() + ", v " + v.ShapeString() +
                     " must share dims");
  }
}

}  // namespace

Tensor3 VanillaAttention(const Tensor3& q, const Tensor3& k, const Tensor3& v) {
  RequireSameDims(q, k, v, "VanillaAttention");
  const double scale = std::sqrt(static_cast<double>(q.feat()));
  Tensor3 out(q.dims());
  for (size_t b = 0; b < q.batch(); ++b) {
    Matrix scores = Gemm(q.Slice(b), k.Slice(b), /*transpose_b=*/true);
    for (double& s : scores.data()) s /= scale;
    out.SetSlice(b, Gemm(SoftmaxFeat(scores), v.Slice(b)));
  }
  return out;
}

Matrix ContentMatrixDirect(const Tensor3& k, const Tensor3& v, size_t b) {
  if (k.dims() != v.dims()) {
    throw ShapeError("ContentMatrixDirect: k " + k.ShapeString() + ", v " +
                     v.ShapeString());
  }
  return Gemm(Transpose(SoftmaxSeq(k.Slice(b))), v.Slice(b));
}

Tensor3 LinearAttentionDirect(const Tensor3& q, const Tensor3& k,
                              const Tensor3& v) {
  RequireSameDims(q, k, v, "LinearAttentionDirect");
  Tensor3 out(q.dims());
  for (size_t b = 0; b < q.batch(); ++b) {
    out.SetSlice(b, Gemm(SoftmaxFeat(q.Slice(b)), ContentMatrixDirect(k, v, b)));
  }
  return out;
}

Tensor3 LinearAttentionLeftGrouped(const Tensor3& q, const Tensor3& k,
                                   const Tensor3& v) {
  RequireSameDims(q, k, v, "LinearAttentionLeftGrouped");
  Tensor3 out(q.dims());
  for (size_t b = 0; b < q.batch(); ++b) {
    Matrix weights = Gemm(SoftmaxFeat(q.Slice(b)), SoftmaxSeq(k.Slice(b)),
                          /*transpose_b=*/true);
    out.SetSlice(b, Gemm(weights, v.Slice(b)));
  }
  return out;
}

}  // namespace uniformer
