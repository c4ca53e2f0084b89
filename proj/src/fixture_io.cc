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

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "uniformer/errors.h"
#include "uniformer/tensor.h"

namespace uniformer {

namespace {

std::string FormatValue(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void WriteTensorFixture(std::ostream& out, const Tensor3& t) {
  const Dims3& d = t.dims();
  out << d.batch << ' ' << d.seq << ' ' << d.feat << '\n';
  for (size_t b = 0; b < d.batch; ++b) {
    for (size_t n = 0; n < d.seq; ++n) {
      for (size_t f = 0; f < d.feat; ++f) {
        if (f > 0) out << ' ';
        out << FormatValue(t(b, n, f));
      }
      out << '\n';
    }
  }
}

Tensor3 ReadTensorFixture(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError(source_name + ": missing header line");
  }
  std::istringstream header(line);
  long long batch = 0, seq = 0, feat = 0;
  if (!(header >> batch >> seq >> feat) || batch <= 0 || seq <= 0 ||
      feat <= 0) {
    throw IoError(source_name + ": header must be three positive counts, got '" +
                  line + "'");
  }
  Dims3 dims{static_cast<size_t>(batch), static_cast<size_t>(seq),
             static_cast<size_t>(feat)};
  std::vector<double> data;
  data.reserve(dims.size());
  for (size_t row = 0; row < dims.batch * dims.seq; ++row) {
    if (!std::getline(in, line)) {
      throw IoError(source_name + ": expected " +
                    std::to_string(dims.batch * dims.seq) + " rows, got " +
                    std::to_string(row));
    }
    std::istringstream fields(line);
    for (size_t f = 0; f < dims.feat; ++f) {
      double x;
      if (!(fields >> x)) {
        throw IoError(source_name + ": row " + std::to_string(row + 1) +
                      " has fewer than " + std::to_string(dims.feat) +
                      " values");
      }
      data.push_back(x);
    }
    std::string extra;
    if (fields >> extra) {
      throw IoError(source_name + ": row " + std::to_string(row + 1) +
                    " has more than " + std::to_string(dims.feat) + " values");
    }
  }
  return Tensor3(dims, std::move(data));
}

void SaveTensorFixture(const std::string& path, const Tensor3& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteTensorFixture(out, t);
  if (!out) throw IoError("write to '" + path + "' failed");
}

Tensor3 LoadTensorFixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return ReadTensorFixture(in, path);
}

}  // namespace uniformer
