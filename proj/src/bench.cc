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

#include "uniformer/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uniformer/errors.h"
#include "uniformer/layer.h"
#include "uniformer/reference.h"

namespace uniformer {

namespace {

constexpr double kPrecheckTolerance = 1e-10;

AttentionConfig LayerConfig(const SweepSpec& spec, Mode mode) {
  AttentionConfig cfg;
  cfg.mode = mode;
  cfg.window_len = spec.window_len;
  cfg.tile_len = spec.tile_len;
  cfg.seq_tile = spec.seq_tile;
  cfg.local_fraction = spec.local_fraction;
  cfg.threads = spec.threads;
  return cfg;
}

template <typename Fn>
uint64_t MedianWallNs(int warmups, int repeats, Fn&& fn) {
  for (int i = 0; i < warmups; ++i) fn();
  std::vector<uint64_t> samples;
  samples.reserve(repeats);
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    const auto ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
            .count();
    samples.push_back(static_cast<uint64_t>(std::max<int64_t>(ns, 1)));
  }
  std::sort(samples.begin(), samples.end());
  const size_t mid = samples.size() / 2;
  // Even counts average the middle pair.
  return samples.size() % 2 == 1 ? samples[mid]
                                 : (samples[mid - 1] + samples[mid]) / 2;
}

uint64_t ParseUnsigned(const std::string& field, int line_no) {
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw IoError("csv line " + std::to_string(line_no) +
                  ": expected an integer, got '" + field + "'");
  }
}

}  // namespace

void ValidateSweep(const SweepSpec& spec) {
  if (spec.modes.empty()) throw UsageError("no modes requested");
  if (spec.seq_lens.empty()) throw UsageError("no sequence lengths requested");
  if (spec.repeats < 1) throw UsageError("repeats must be at least 1");
  if (spec.warmups < 0) throw UsageError("warmups must be non-negative");
  for (const BenchMode& mode : spec.modes) {
    for (size_t n : spec.seq_lens) {
      const BenchShape shape{spec.batch, spec.heads, n, spec.feat,
                             spec.window_len, spec.local_fraction};
      ComputeModeledCost(mode, shape);
      if (mode.is_vanilla()) continue;
      if (HasLocalBranch(mode.mode()) &&
          (spec.tile_len == 0 || spec.tile_len > spec.window_len)) {
        throw ConfigError("tile_len " + std::to_string(spec.tile_len) +
                          " must lie in [1, window_len]");
      }
      if (GlobalIsStreaming(mode.mode()) &&
          (spec.seq_tile == 0 || spec.seq_tile > n)) {
        throw ConfigError("seq_tile " + std::to_string(spec.seq_tile) +
                          " must lie in [1, N=" + std::to_string(n) + "]");
      }
    }
  }
}

std::vector<BenchRecord> RunSweep(const SweepSpec& spec) {
  ValidateSweep(spec);
  std::vector<BenchRecord> records;
  for (const BenchMode& mode : spec.modes) {
    for (size_t n : spec.seq_lens) {
      const Dims4 dims{spec.batch, spec.heads, n, spec.feat};
      const Qkv4 qkv = SeededQkv4(dims, spec.seed + n);
      const BenchShape shape{spec.batch, spec.heads, n, spec.feat,
                             spec.window_len, spec.local_fraction};
      const ModeledCost cost = ComputeModeledCost(mode, shape);

      uint64_t wall_ns = 0;
      if (mode.is_vanilla()) {
        const Tensor3 q = qkv.q.FoldHeads(0, spec.heads);
        const Tensor3 k = qkv.k.FoldHeads(0, spec.heads);
        const Tensor3 v = qkv.v.FoldHeads(0, spec.heads);
        wall_ns = MedianWallNs(spec.warmups, spec.repeats,
                               [&] { return VanillaAttention(q, k, v); });
      } else {
        const AttentionConfig cfg = LayerConfig(spec, mode.mode());
        AttentionConfig ref_cfg = cfg;
        ref_cfg.mode = ReferenceCounterpart(cfg.mode);
        const Tensor4 out = UniformerAttention(qkv.q, qkv.k, qkv.v, cfg);
        const Tensor4 ref = UniformerAttention(qkv.q, qkv.k, qkv.v, ref_cfg);
        const double err = RelativeError(out.data(), ref.data());
        if (!(err <= kPrecheckTolerance)) {
          throw CheckFailure("pre-check failed for " + mode.Name() + " at N=" +
                             std::to_string(n) + ": relative error " +
                             std::to_string(err));
        }
        wall_ns = MedianWallNs(spec.warmups, spec.repeats, [&] {
          return UniformerAttention(qkv.q, qkv.k, qkv.v, cfg);
        });
      }
      records.push_back(BenchRecord{mode.Name(), spec.batch, spec.heads, n,
                                    spec.feat, spec.window_len, wall_ns,
                                    cost.mults, cost.exps});
    }
  }
  return records;
}

void WriteCsv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.mode << ',' << r.batch << ',' << r.heads << ',' << r.seq << ','
        << r.feat << ',' << r.window_len << ',' << r.wall_ns << ','
        << r.modeled_mults << ',' << r.modeled_exps << '\n';
  }
}

void EmitCsv(std::span<const BenchRecord> records, const std::string& path) {
  if (records.empty()) throw UsageError("no benchmark records to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteCsv(out, records);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<BenchRecord> ParseCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchCsvHeader) {
    throw IoError("csv: missing or unexpected header");
  }
  std::vector<BenchRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      throw IoError("csv line " + std::to_string(line_no) + ": expected 9 fields");
    }
    records.push_back(BenchRecord{
        fields[0], ParseUnsigned(fields[1], line_no),
        ParseUnsigned(fields[2], line_no), ParseUnsigned(fields[3], line_no),
        ParseUnsigned(fields[4], line_no), ParseUnsigned(fields[5], line_no),
        ParseUnsigned(fields[6], line_no), ParseUnsigned(fields[7], line_no),
        ParseUnsigned(fields[8], line_no)});
  }
  return records;
}

double GrowthExponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw UsageError("growth exponent needs at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace uniformer
