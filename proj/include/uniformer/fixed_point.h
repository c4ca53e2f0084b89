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

#ifndef UNIFORMER_FIXED_POINT_H_
#define UNIFORMER_FIXED_POINT_H_

#include <string>
#include <string_view>

namespace uniformer {

// Signed two's-complement Qm.n format: m integer bits, n = frac_bits
// fractional bits, one sign bit, so total_bits = m + n + 1. Rounding is
// round-to-nearest-even; out-of-range values saturate.
class FixedPointFormat {
 public:
  // Throws ConfigError unless 0 <= frac_bits < total_bits <= 53.
  FixedPointFormat(int total_bits, int frac_bits);

  // Parses "Qm.n", e.g. "Q3.12" (16 bits) or "Q1.6" (8 bits).
  static FixedPointFormat Parse(std::string_view text);

  int total_bits() const { return total_bits_; }
  int frac_bits() const { return frac_bits_; }
  int int_bits() const { return total_bits_ - frac_bits_ - 1; }

  double step() const;
  double max_value() const;
  double min_value() const;
  std::string Name() const;

  friend bool operator==(const FixedPointFormat&,
                         const FixedPointFormat&) = default;

 private:
  int total_bits_;
  int frac_bits_;
};

// Nearest grid point of `fmt`; sets *saturated when x lies beyond the range.
double QuantizeValue(double x, const FixedPointFormat& fmt, bool* saturated);

}  // namespace uniformer

#endif  // UNIFORMER_FIXED_POINT_H_
