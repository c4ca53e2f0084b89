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

#include "uniformer/fixed_point.h"

#include <charconv>
#include <cmath>

#include "uniformer/errors.h"

namespace uniformer {

FixedPointFormat::FixedPointFormat(int total_bits, int frac_bits)
    : total_bits_(total_bits), frac_bits_(frac_bits) {
  if (total_bits < 2 || total_bits > 53 || frac_bits < 0 ||
      frac_bits >= total_bits) {
    throw ConfigError("fixed-point format needs 0 <= frac_bits < total_bits "
                      "<= 53, got total_bits=" +
                      std::to_string(total_bits) +
                      " frac_bits=" + std::to_string(frac_bits));
  }
}

FixedPointFormat FixedPointFormat::Parse(std::string_view text) {
  auto fail = [&] {
    return ConfigError("expected a format like Q3.12, got '" +
                       std::string(text) + "'");
  };
  if (text.size() < 4 || (text[0] != 'Q' && text[0] != 'q')) throw fail();
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) throw fail();
  int int_bits = -1;
  int frac_bits = -1;
  const char* begin = text.data() + 1;
  const char* mid = text.data() + dot;
  const char* end = text.data() + text.size();
  auto r1 = std::from_chars(begin, mid, int_bits);
  auto r2 = std::from_chars(mid + 1, end, frac_bits);
  if (r1.ec != std::errc() || r1.ptr != mid || r2.ec != std::errc() ||
      r2.ptr != end || int_bits < 0) {
    throw fail();
  }
  return FixedPointFormat(int_bits + frac_bits + 1, frac_bits);
}

double FixedPointFormat::step() const { return std::ldexp(1.0, -frac_bits_); }

double FixedPointFormat::max_value() const {
  return std::ldexp(std::ldexp(1.0, total_bits_ - 1) - 1.0, -frac_bits_);
}

double FixedPointFormat::min_value() const {
  return -std::ldexp(1.0, total_bits_ - 1 - frac_bits_);
}

std::string FixedPointFormat::Name() const {
  return "Q" + std::to_string(int_bits()) + "." + std::to_string(frac_bits_);
}

double QuantizeValue(double x, const FixedPointFormat& fmt, bool* saturated) {
  const double hi = std::ldexp(1.0, fmt.total_bits() - 1) - 1.0;
  const double lo = -std::ldexp(1.0, fmt.total_bits() - 1);
  // Scaling by a power of two is exact; nearbyint rounds half to even under
  // the default rounding mode.
  double code = std::nearbyint(std::ldexp(x, fmt.frac_bits()));
  bool sat = false;
  if (code > hi) {
    code = hi;
    sat = true;
  } else if (code < lo) {
    code = lo;
    sat = true;
  }
  if (saturated != nullptr) *saturated = sat;
  return std::ldexp(code, -fmt.frac_bits());
}

}  // namespace uniformer
