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

#include "uniformer/quantsim.h"

#include <cmath>
#include <cstdio>

#include "uniformer/numerics.h"

namespace uniformer {

namespace {

Tensor4 QuantizeWith(const Tensor4& x, const Quantizer& quantizer) {
  Tensor4 out(x.dims());
  auto src = x.data();
  auto dst = out.data();
  for (size_t i = 0; i < src.size(); ++i) dst[i] = quantizer(src[i]);
  return out;
}

}  // namespace

QuantizedTensor Quantize(const Tensor3& x, const FixedPointFormat& fmt) {
  QuantizedTensor out{Tensor3(x.dims()), 0};
  auto src = x.data();
  auto dst = out.values.data();
  for (size_t i = 0; i < src.size(); ++i) {
    bool sat = false;
    dst[i] = QuantizeValue(src[i], fmt, &sat);
    out.saturation_count += sat ? 1 : 0;
  }
  return out;
}

ErrorReport FixedAttentionError(const Tensor4& q, const Tensor4& k,
                                const Tensor4& v, const AttentionConfig& cfg,
                                const FixedPointFormat& fmt) {
  AttentionConfig fixed_cfg = cfg;
  fixed_cfg.precision = Precision::kFixed;
  fixed_cfg.fixed_format = fmt;
  AttentionConfig ref_cfg = cfg;
  ref_cfg.precision = Precision::kDouble;
  ref_cfg.mode = ReferenceCounterpart(cfg.mode);

  const Tensor4 reference = UniformerAttention(q, k, v, ref_cfg);

  Quantizer quantizer(fmt);
  const Tensor4 fixed =
      UniformerAttention(QuantizeWith(q, quantizer), QuantizeWith(k, quantizer),
                         QuantizeWith(v, quantizer), fixed_cfg, &quantizer);

  double max_abs = 0.0;
  double sum_abs = 0.0;
  auto a = fixed.data();
  auto b = reference.data();
  for (size_t i = 0; i < a.size(); ++i) {
    const double err = std::abs(a[i] - b[i]);
    max_abs = std::max(max_abs, err);
    sum_abs += err;
  }
  return ErrorReport{fmt.total_bits(), fmt.frac_bits(), max_abs,
                     sum_abs / static_cast<double>(a.size()),
                     quantizer.saturation_count()};
}

std::string FormatErrorReportCsv(const ErrorReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%llu", r.total_bits,
                r.frac_bits, r.max_abs, r.mean_abs,
                static_cast<unsigned long long>(r.sat_count));
  return buf;
}

QuantFixture StandardQuantFixture() {
  AttentionConfig cfg;
  cfg.mode = Mode::kMixStreaming;
  cfg.window_len = 8;
  cfg.tile_len = 4;
  cfg.seq_tile = 8;
  return QuantFixture{SeededQkv4({2, 4, 32, 16}, 23), cfg};
}

std::vector<ErrorReport> QuantErrorSweep(
    const std::vector<FixedPointFormat>& formats) {
  const QuantFixture fixture = StandardQuantFixture();
  std::vector<ErrorReport> out;
  out.reserve(formats.size());
  for (const auto& fmt : formats) {
    out.push_back(FixedAttentionError(fixture.qkv.q, fixture.qkv.k,
                                      fixture.qkv.v, fixture.cfg, fmt));
  }
  return out;
}

}  // namespace uniformer
