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

#include "uniformer/global_attention.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dispatch.h"
#include "uniformer/errors.h"
#include "uniformer/parallel.h"

namespace uniformer {

namespace {

void CheckShapes(const Tensor3& k, const Tensor3& v, size_t seq_tile) {
  if (k.dims() != v.dims()) {
    throw ShapeError("global branch: k " + k.ShapeString() + ", v " +
                     v.ShapeString() + " must share dims");
  }
  if (seq_tile == 0 || seq_tile > k.seq()) {
    throw ConfigError("seq_tile " + std::to_string(seq_tile) +
                      " must lie in [1, N=" + std::to_string(k.seq()) + "]");
  }
}

// Content matrices in the kernel's own arithmetic, before any widening.
template <typename Scalar, typename Round>
std::vector<std::vector<Scalar>> StreamContent(const Tensor3& k,
                                               const Tensor3& v,
                                               size_t seq_tile,
                                               const Round& round,
                                               int threads) {
  constexpr Scalar kNegInf = std::numeric_limits<Scalar>::lowest();
  const size_t batch = k.batch();
  const size_t seq = k.seq();
  const size_t dim = k.feat();
  const auto ks = internal::ConvertOperand<Scalar>(k.data(), round);
  const auto vs = internal::ConvertOperand<Scalar>(v.data(), round);
  std::vector<std::vector<Scalar>> content(batch,
                                           std::vector<Scalar>(dim * dim));

  ParallelFor(batch * dim, threads, [&](size_t item) {
    const size_t b = item / dim;
    const size_t f = item % dim;
    const Scalar* kb = ks.data() + b * seq * dim;
    const Scalar* vb = vs.data() + b * seq * dim;
    Scalar m = kNegInf;
    Scalar norm = 0;
    std::vector<Scalar> cv(dim, Scalar(0));
    std::vector<double> pv(dim);

    for (size_t start = 0; start < seq; start += seq_tile) {
      const size_t len = std::min(seq_tile, seq - start);
      Scalar block_max = kNegInf;
      for (size_t n = start; n < start + len; ++n) {
        block_max = std::max(block_max, kb[n * dim + f]);
      }
      const Scalar m_old = m;
      m = std::max(m, block_max);
      const Scalar rescale =
          m_old == kNegInf ? Scalar(0) : std::exp(m_old - m);

      std::fill(pv.begin(), pv.end(), 0.0);
      double p_sum = 0.0;
      for (size_t n = start; n < start + len; ++n) {
        const Scalar p =
            static_cast<Scalar>(round(std::exp(kb[n * dim + f] - m)));
        p_sum += p;
        const Scalar* v_row = vb + n * dim;
        for (size_t d = 0; d < dim; ++d) {
          pv[d] += static_cast<double>(p) * static_cast<double>(v_row[d]);
        }
      }
      for (size_t d = 0; d < dim; ++d) {
        cv[d] = static_cast<Scalar>(cv[d] * rescale + pv[d]);
      }
      norm = static_cast<Scalar>(norm * rescale + p_sum);
    }

    Scalar* row = content[b].data() + f * dim;
    for (size_t d = 0; d < dim; ++d) {
      row[d] = static_cast<Scalar>(
          round(static_cast<double>(cv[d]) / static_cast<double>(norm)));
    }
  });
  return content;
}

}  // namespace

ContentMatrices GlobalContentMatrixStreaming(const Tensor3& k,
                                             const Tensor3& v,
                                             size_t seq_tile,
                                             const KernelOptions& opts) {
  CheckShapes(k, v, seq_tile);
  const size_t dim = k.feat();
  return internal::DispatchPrecision(opts, [&]<typename Scalar>(auto round) {
    ContentMatrices out;
    for (const auto& c : StreamContent<Scalar>(k, v, seq_tile, round,
                                               opts.threads)) {
      out.emplace_back(dim, dim, std::vector<double>(c.begin(), c.end()));
    }
    return out;
  });
}

Tensor3 GlobalLinearAttention(const Tensor3& q, const Tensor3& k,
                              const Tensor3& v, size_t seq_tile,
                              const KernelOptions& opts) {
  if (q.dims() != k.dims()) {
    throw ShapeError("global branch: q " + q.ShapeString() + ", k " +
                     k.ShapeString() + " must share dims");
  }
  CheckShapes(k, v, seq_tile);
  const size_t batch = q.batch();
  const size_t seq = q.seq();
  const size_t dim = q.feat();
  Tensor3 out(q.dims());

  internal::DispatchPrecision(opts, [&]<typename Scalar>(auto round) {
    const auto content =
        StreamContent<Scalar>(k, v, seq_tile, round, opts.threads);
    const auto qs = internal::ConvertOperand<Scalar>(q.data(), round);

    // Row-wise softmax_feat(Q) followed by the projection onto C.
    ParallelFor(batch * seq, opts.threads, [&](size_t item) {
      const size_t b = item / seq;
      const Scalar* q_row = qs.data() + item * dim;
      std::vector<Scalar> weights(dim);
      Scalar max = q_row[0];
      for (size_t f = 1; f < dim; ++f) max = std::max(max, q_row[f]);
      double sum = 0.0;
      for (size_t f = 0; f < dim; ++f) {
        weights[f] = std::exp(q_row[f] - max);
        sum += weights[f];
      }
      for (size_t f = 0; f < dim; ++f) {
        weights[f] = static_cast<Scalar>(round(weights[f] / sum));
      }

      std::vector<double> acc(dim, 0.0);
      const Scalar* c = content[b].data();
      for (size_t f = 0; f < dim; ++f) {
        const double w = weights[f];
        for (size_t d = 0; d < dim; ++d) {
          acc[d] += w * static_cast<double>(c[f * dim + d]);
        }
      }
      double* out_row = out.data().data() + item * dim;
      for (size_t d = 0; d < dim; ++d) {
        out_row[d] = static_cast<Scalar>(round(acc[d]));
      }
    });
  });
  return out;
}

}  // namespace uniformer
