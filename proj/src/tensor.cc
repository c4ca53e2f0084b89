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

#include "uniformer/tensor.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "uniformer/errors.h"

namespace uniformer {

namespace {

void RequirePositive(std::initializer_list<size_t> extents,
                     const std::string& what) {
  for (size_t e : extents) {
    if (e == 0) throw ShapeError(what + ": zero extent");
  }
}

double UniformSymmetric(std::mt19937_64& gen) {
  const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

void FillUniform(std::span<double> out, std::mt19937_64& gen) {
  for (double& x : out) x = UniformSymmetric(gen);
}

// Row softmax of a rows x cols block laid out with the given strides.
void SoftmaxLines(const double* in, double* out, size_t lines, size_t len,
                  size_t line_stride, size_t elem_stride) {
  for (size_t l = 0; l < lines; ++l) {
    const double* x = in + l * line_stride;
    double* y = out + l * line_stride;
    double max = x[0];
    for (size_t i = 1; i < len; ++i) max = std::max(max, x[i * elem_stride]);
    double sum = 0.0;
    for (size_t i = 0; i < len; ++i) {
      const double e = std::exp(x[i * elem_stride] - max);
      y[i * elem_stride] = e;
      sum += e;
    }
    for (size_t i = 0; i < len; ++i) y[i * elem_stride] /= sum;
  }
}

}  // namespace

Matrix::Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  RequirePositive({rows, cols}, "Matrix");
}

Matrix::Matrix(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  RequirePositive({rows, cols}, "Matrix");
  if (data_.size() != rows * cols) {
    throw ShapeError("Matrix " + ShapeString() + ": data length " +
                     std::to_string(data_.size()));
  }
}

Matrix Matrix::Identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string Matrix::ShapeString() const {
  return "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + "]";
}

Tensor3::Tensor3(Dims3 dims) : dims_(dims), data_(dims.size(), 0.0) {
  RequirePositive({dims.batch, dims.seq, dims.feat}, "Tensor3");
}

Tensor3::Tensor3(Dims3 dims, std::vector<double> data)
    : dims_(dims), data_(std::move(data)) {
  RequirePositive({dims.batch, dims.seq, dims.feat}, "Tensor3");
  if (data_.size() != dims_.size()) {
    throw ShapeError("Tensor3 " + ShapeString() + ": data length " +
                     std::to_string(data_.size()));
  }
}

Matrix Tensor3::Slice(size_t b) const {
  auto src = batch_data(b);
  return Matrix(dims_.seq, dims_.feat, std::vector<double>(src.begin(), src.end()));
}

void Tensor3::SetSlice(size_t b, const Matrix& m) {
  if (m.rows() != dims_.seq || m.cols() != dims_.feat) {
    throw ShapeError("SetSlice: " + m.ShapeString() + " into " + ShapeString());
  }
  std::ranges::copy(m.data(), batch_data(b).begin());
}

std::string Tensor3::ShapeString() const {
  return "[" + std::to_string(dims_.batch) + "x" + std::to_string(dims_.seq) +
         "x" + std::to_string(dims_.feat) + "]";
}

Tensor4::Tensor4(Dims4 dims) : dims_(dims), data_(dims.size(), 0.0) {
  RequirePositive({dims.batch, dims.heads, dims.seq, dims.feat}, "Tensor4");
}

Tensor4::Tensor4(Dims4 dims, std::vector<double> data)
    : dims_(dims), data_(std::move(data)) {
  RequirePositive({dims.batch, dims.heads, dims.seq, dims.feat}, "Tensor4");
  if (data_.size() != dims_.size()) {
    throw ShapeError("Tensor4 " + ShapeString() + ": data length " +
                     std::to_string(data_.size()));
  }
}

Tensor3 Tensor4::FoldHeads(size_t first, size_t count) const {
  if (count == 0 || first + count > dims_.heads) {
    throw ShapeError("FoldHeads: heads [" + std::to_string(first) + ", " +
                     std::to_string(first + count) + ") of " + ShapeString());
  }
  const size_t block = dims_.seq * dims_.feat;
  Tensor3 out({dims_.batch * count, dims_.seq, dims_.feat});
  for (size_t b = 0; b < dims_.batch; ++b) {
    for (size_t h = 0; h < count; ++h) {
      const double* src = data_.data() + (b * dims_.heads + first + h) * block;
      std::copy(src, src + block, out.batch_data(b * count + h).begin());
    }
  }
  return out;
}

void Tensor4::UnfoldHeads(const Tensor3& folded, size_t first, size_t count) {
  if (count == 0 || first + count > dims_.heads ||
      folded.dims() != Dims3{dims_.batch * count, dims_.seq, dims_.feat}) {
    throw ShapeError("UnfoldHeads: " + folded.ShapeString() + " into " +
                     ShapeString());
  }
  const size_t block = dims_.seq * dims_.feat;
  for (size_t b = 0; b < dims_.batch; ++b) {
    for (size_t h = 0; h < count; ++h) {
      auto src = folded.batch_data(b * count + h);
      std::ranges::copy(src,
                        data_.begin() + (b * dims_.heads + first + h) * block);
    }
  }
}

std::string Tensor4::ShapeString() const {
  return "[" + std::to_string(dims_.batch) + "x" + std::to_string(dims_.heads) +
         "x" + std::to_string(dims_.seq) + "x" + std::to_string(dims_.feat) +
         "]";
}

Matrix Gemm(const Matrix& a, const Matrix& b, bool transpose_b) {
  const Matrix* rhs = &b;
  Matrix bt(1, 1);
  if (transpose_b) {
    bt = Transpose(b);
    rhs = &bt;
  }
  if (a.cols() != rhs->rows()) {
    throw ShapeError("Gemm: inner dimensions disagree for " + a.ShapeString() +
                     " x " + b.ShapeString() +
                     (transpose_b ? " (transposed)" : ""));
  }
  const size_t m = a.rows();
  const size_t k_dim = a.cols();
  const size_t n = rhs->cols();
  Matrix c(m, n);
  // i-k-j: every c(i, j) sees its k terms in ascending order.
  for (size_t i = 0; i < m; ++i) {
    double* c_row = c.row(i).data();
    const double* a_row = a.row(i).data();
    for (size_t k = 0; k < k_dim; ++k) {
      const double a_ik = a_row[k];
      const double* b_row = rhs->row(k).data();
      for (size_t j = 0; j < n; ++j) c_row[j] += a_ik * b_row[j];
    }
  }
  return c;
}

Matrix Transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

Matrix SoftmaxFeat(const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  SoftmaxLines(x.data().data(), y.data().data(), x.rows(), x.cols(), x.cols(),
               1);
  return y;
}

Matrix SoftmaxSeq(const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  SoftmaxLines(x.data().data(), y.data().data(), x.cols(), x.rows(), 1,
               x.cols());
  return y;
}

Tensor3 SeededRandomTensor(Dims3 dims, uint64_t seed) {
  Tensor3 t(dims);
  std::mt19937_64 gen(seed);
  FillUniform(t.data(), gen);
  return t;
}

Tensor4 SeededRandomTensor4(Dims4 dims, uint64_t seed) {
  Tensor4 t(dims);
  std::mt19937_64 gen(seed);
  FillUniform(t.data(), gen);
  return t;
}

Qkv3 SeededQkv(Dims3 dims, uint64_t seed) {
  Qkv3 out{Tensor3(dims), Tensor3(dims), Tensor3(dims)};
  std::mt19937_64 gen(seed);
  FillUniform(out.q.data(), gen);
  FillUniform(out.k.data(), gen);
  FillUniform(out.v.data(), gen);
  return out;
}

Qkv4 SeededQkv4(Dims4 dims, uint64_t seed) {
  Qkv4 out{Tensor4(dims), Tensor4(dims), Tensor4(dims)};
  std::mt19937_64 gen(seed);
  FillUniform(out.q.data(), gen);
  FillUniform(out.k.data(), gen);
  FillUniform(out.v.data(), gen);
  return out;
}

double RelativeError(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("RelativeError: lengths " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  }
  double diff = 0.0;
  double ref = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    diff += d * d;
    ref += b[i] * b[i];
  }
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

}  // namespace uniformer
