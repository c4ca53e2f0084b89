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

#ifndef UNIFORMER_BENCH_H_
#define UNIFORMER_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uniformer/cost_model.h"

namespace uniformer {

struct BenchRecord {
  std::string mode;
  size_t batch;
  size_t heads;
  size_t seq;
  size_t feat;
  size_t window_len;
  uint64_t wall_ns;  // median over the timed repeats, always >= 1
  uint64_t modeled_mults;
  uint64_t modeled_exps;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct SweepSpec {
  std::vector<BenchMode> modes;
  std::vector<size_t> seq_lens;
  size_t batch = 1;
  size_t heads = 2;
  size_t feat = 64;
  size_t window_len = 64;
  size_t tile_len = 16;
  size_t seq_tile = 64;
  double local_fraction = 0.5;
  int warmups = 3;
  int repeats = 9;
  int threads = 1;
  uint64_t seed = 0;
};

// Rejects empty mode or length lists, non-positive repeats, and shapes that
// some requested mode cannot run, before anything is timed.
void ValidateSweep(const SweepSpec& spec);

// Times every (mode, N) pair in mode-major order. Inputs for length N come
// from SeededQkv4 with spec.seed + N. Before a layer mode is timed its output
// is checked against its reference counterpart (relative Frobenius error
// <= 1e-10 for double kernels); a mismatch throws CheckFailure. Warm-up runs
// are discarded and the median of the timed repeats is recorded.
std::vector<BenchRecord> RunSweep(const SweepSpec& spec);

inline constexpr const char* kBenchCsvHeader =
    "mode,B,H,N,D,window_len,wall_ns,modeled_mults,modeled_exps";

void WriteCsv(std::ostream& out, std::span<const BenchRecord> records);
// Throws UsageError (creating no file) for an empty record list and IoError
// when the path cannot be written.
void EmitCsv(std::span<const BenchRecord> records, const std::string& path);
std::vector<BenchRecord> ParseCsv(std::istream& in);

// Least-squares slope of log(y) against log(x).
double GrowthExponent(std::span<const double> x, std::span<const double> y);

}  // namespace uniformer

#endif  // UNIFORMER_BENCH_H_
