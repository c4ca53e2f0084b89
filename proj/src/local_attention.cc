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

#include "uniformer/local_attention.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dispatch.h"
#include "uniformer/errors.h"
#include "uniformer/parallel.h"
#include "uniformer/reference.h"

namespace uniformer {

namespace {

void CheckWindow(const Tensor3& x, size_t window_len) {
  if (window_len == 0 || x.seq() % window_len != 0) {
    throw ConfigError("sequence length " + std::to_string(x.seq()) +
                      " is not divisible by window_len " +
                      std::to_string(window_len));
  }
}

// One query row against one window, tile by tile.
template <typename Scalar, typename Round>
void StreamRow(const Scalar* q_row, const Scalar* k, const Scalar* v,
               size_t window_len, size_t dim, size_t tile_len, double scale,
               const Round& round, std::vector<Scalar>& scores,
               std::vector<Scalar>& acc, std::vector<double>& pv,
               double* out_row) {
  constexpr Scalar kNegInf = std::numeric_limits<Scalar>::lowest();
  Scalar m = kNegInf;
  Scalar l = 0;
  std::fill(acc.begin(), acc.end(), Scalar(0));

  for (size_t start = 0; start < window_len; start += tile_len) {
    const size_t len = std::min(tile_len, window_len - start);
    Scalar tile_max = kNegInf;
    for (size_t j = 0; j < len; ++j) {
      const Scalar* k_row = k + (start + j) * dim;
      double dot = 0.0;
      for (size_t d = 0; d < dim; ++d) {
        dot += static_cast<double>(q_row[d]) * static_cast<double>(k_row[d]);
      }
      scores[j] = static_cast<Scalar>(round(dot / scale));
      tile_max = std::max(tile_max, scores[j]);
    }

    const Scalar m_old = m;
    m = std::max(m, tile_max);
    // First tile: the sentinel stands for -inf, so the old state carries no
    // weight.
    const Scalar rescale = m_old == kNegInf ? Scalar(0) : std::exp(m_old - m);

    std::fill(pv.begin(), pv.end(), 0.0);
    double p_sum = 0.0;
    for (size_t j = 0; j < len; ++j) {
      const Scalar p = static_cast<Scalar>(round(std::exp(scores[j] - m)));
      p_sum += p;
      const Scalar* v_row = v + (start + j) * dim;
      for (size_t d = 0; d < dim; ++d) {
        pv[d] += static_cast<double>(p) * static_cast<double>(v_row[d]);
      }
    }
    for (size_t d = 0; d < dim; ++d) {
      acc[d] = static_cast<Scalar>(acc[d] * rescale + pv[d]);
    }
    l = static_cast<Scalar>(l * rescale + p_sum);
  }

  for (size_t d = 0; d < dim; ++d) {
    out_row[d] = static_cast<Scalar>(
        round(static_cast<double>(acc[d]) / static_cast<double>(l)));
  }
}

}  // namespace

BlockedTensors Blockify(const Tensor3& q, const Tensor3& k, const Tensor3& v,
                        size_t window_len) {
  if (q.dims() != k.dims() || q.dims() != v.dims()) {
    throw ShapeError("Blockify: q " + q.ShapeString() + ", k " +
                     k.ShapeString() + ", v " + v.ShapeString() +
                     " must share dims");
  }
  CheckWindow(q, window_len);
  return BlockedTensors{BlockifyOne(q, window_len), BlockifyOne(k, window_len),
                        BlockifyOne(v, window_len), q.seq() / window_len,
                        window_len};
}

Tensor3 BlockifyOne(const Tensor3& x, size_t window_len) {
  CheckWindow(x, window_len);
  // Windows are contiguous row ranges, so the row-major buffer is unchanged;
  // only the dims are reinterpreted.
  const size_t windows = x.seq() / window_len;
  return Tensor3({x.batch() * windows, window_len, x.feat()},
                 std::vector<double>(x.data().begin(), x.data().end()));
}

Tensor3 Deblockify(const Tensor3& x_b, size_t original_batch) {
  if (original_batch == 0 || x_b.batch() % original_batch != 0) {
    throw ShapeError("Deblockify: blocked batch " +
                     std::to_string(x_b.batch()) +
                     " is not a multiple of original batch " +
                     std::to_string(original_batch));
  }
  const size_t windows = x_b.batch() / original_batch;
  return Tensor3({original_batch, windows * x_b.seq(), x_b.feat()},
                 std::vector<double>(x_b.data().begin(), x_b.data().end()));
}

Tensor3 LocalBlockAttention(const Tensor3& q, const Tensor3& k,
                            const Tensor3& v, size_t window_len,
                            size_t tile_len, const KernelOptions& opts) {
  BlockedTensors blocked = Blockify(q, k, v, window_len);
  if (tile_len == 0 || tile_len > window_len) {
    throw ConfigError("tile_len " + std::to_string(tile_len) +
                      " must lie in [1, window_len=" +
                      std::to_string(window_len) + "]");
  }
  const size_t dim = q.feat();
  const double scale = std::sqrt(static_cast<double>(dim));
  Tensor3 out_b(blocked.q_b.dims());

  internal::DispatchPrecision(opts, [&]<typename Scalar>(auto round) {
    const auto qs = internal::ConvertOperand<Scalar>(blocked.q_b.data(), round);
    const auto ks = internal::ConvertOperand<Scalar>(blocked.k_b.data(), round);
    const auto vs = internal::ConvertOperand<Scalar>(blocked.v_b.data(), round);
    const size_t window_size = window_len * dim;

    ParallelFor(out_b.batch(), opts.threads, [&](size_t w) {
      std::vector<Scalar> scores(tile_len);
      std::vector<Scalar> acc(dim);
      std::vector<double> pv(dim);
      const Scalar* qw = qs.data() + w * window_size;
      const Scalar* kw = ks.data() + w * window_size;
      const Scalar* vw = vs.data() + w * window_size;
      double* ow = out_b.batch_data(w).data();
      for (size_t r = 0; r < window_len; ++r) {
        StreamRow<Scalar>(qw + r * dim, kw, vw, window_len, dim, tile_len,
                          scale, round, scores, acc, pv, ow + r * dim);
      }
    });
  });
  return Deblockify(out_b, q.batch());
}

Tensor3 LocalBlockAttentionReference(const Tensor3& q, const Tensor3& k,
                                     const Tensor3& v, size_t window_len) {
  BlockedTensors blocked = Blockify(q, k, v, window_len);
  return Deblockify(VanillaAttention(blocked.q_b, blocked.k_b, blocked.v_b),
                    q.batch());
}

}  // namespace uniformer
