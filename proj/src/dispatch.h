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

#ifndef UNIFORMER_SRC_DISPATCH_H_
#define UNIFORMER_SRC_DISPATCH_H_

#include <string>
#include <vector>

#include "uniformer/errors.h"
#include "uniformer/numerics.h"

namespace uniformer::internal {

struct NoRounding {
  double operator()(double x) const { return x; }
};

struct QuantizerRounding {
  const Quantizer* quantizer;
  double operator()(double x) const { return (*quantizer)(x); }
};

// Calls fn.template operator()<Scalar>(round) for the arithmetic selected by
// `opts`.
template <typename Fn>
decltype(auto) DispatchPrecision(const KernelOptions& opts, Fn&& fn) {
  switch (opts.precision) {
    case Precision::kSingle:
      return fn.template operator()<float>(NoRounding{});
    case Precision::kFixed:
      if (opts.quantizer == nullptr) {
        throw ConfigError("fixed precision requires a quantizer");
      }
      return fn.template operator()<double>(QuantizerRounding{opts.quantizer});
    case Precision::kDouble:
      break;
  }
  return fn.template operator()<double>(NoRounding{});
}

template <typename Scalar, typename Round>
std::vector<Scalar> ConvertOperand(std::span<const double> src,
                                   const Round& round) {
  std::vector<Scalar> out(src.size());
  for (size_t i = 0; i < src.size(); ++i) {
    out[i] = static_cast<Scalar>(round(src[i]));
  }
  return out;
}

}  // namespace uniformer::internal

#endif  // UNIFORMER_SRC_DISPATCH_H_
