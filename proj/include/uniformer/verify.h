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

#ifndef UNIFORMER_VERIFY_H_
#define UNIFORMER_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace uniformer {

struct CheckResult {
  std::string name;
  double error;
  double tolerance;
  bool passed;
};

// Oracle-equivalence self-check over `trials` random shapes with N <= max_n
// (B <= 4, H <= 8, D <= 64), derived deterministically from `seed`:
//   - every streaming mode against its reference counterpart (1e-10),
//   - local tile invariance over {1, 2, N_w/2, N_w - 1, N_w} (1e-12),
//   - global sequence-tile invariance over {1, 3, N} (1e-12),
//   - right- vs left-grouped linear attention for N <= 128 (1e-10).
// Errors are relative Frobenius norms. Throws UsageError if max_n < 2.
std::vector<CheckResult> RunVerifySuite(uint64_t seed, size_t max_n,
                                        size_t trials = 20);

}  // namespace uniformer

#endif  // UNIFORMER_VERIFY_H_
