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

#include "uniformer/numerics.h"

namespace uniformer {

std::string_view PrecisionName(Precision p) {
  switch (p) {
    case Precision::kSingle:
      return "single";
    case Precision::kFixed:
      return "fixed";
    case Precision::kDouble:
      break;
  }
  return "double";
}

std::optional<Precision> ParsePrecision(std::string_view name) {
  if (name == "double") return Precision::kDouble;
  if (name == "single") return Precision::kSingle;
  if (name == "fixed") return Precision::kFixed;
  return std::nullopt;
}

}  // namespace uniformer
