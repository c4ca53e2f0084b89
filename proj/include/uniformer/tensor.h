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

#ifndef UNIFORMER_TENSOR_H_
#define UNIFORMER_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace uniformer {

// Dense row-major 2-D array. Both extents are positive.
class Matrix {
 public:
  // Zero-filled. Throws ShapeError if either extent is zero.
  Matrix(size_t rows, size_t cols);
  // Takes ownership of `data`; its length must be rows * cols.
  Matrix(size_t rows, size_t cols, std::vector<double> data);

  static Matrix Identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::string ShapeString() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  size_t rows_;
  size_t cols_;
  std::vector<double> data_;
};

struct Dims3 {
  size_t batch;
  size_t seq;
  size_t feat;

  size_t size() const { return batch * seq * feat; }
  friend bool operator==(const Dims3&, const Dims3&) = default;
};

// Dense (batch x sequence x feature) array carrying Q, K, V and outputs.
class Tensor3 {
 public:
  // Zero-filled. Throws ShapeError on a zero extent.
  explicit Tensor3(Dims3 dims);
  Tensor3(Dims3 dims, std::vector<double> data);

  const Dims3& dims() const { return dims_; }
  size_t batch() const { return dims_.batch; }
  size_t seq() const { return dims_.seq; }
  size_t feat() const { return dims_.feat; }

  double& operator()(size_t b, size_t n, size_t d) {
    return data_[(b * dims_.seq + n) * dims_.feat + d];
  }
  double operator()(size_t b, size_t n, size_t d) const {
    return data_[(b * dims_.seq + n) * dims_.feat + d];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  // Contiguous seq x feat block of batch entry b.
  std::span<double> batch_data(size_t b) {
    return {data_.data() + b * dims_.seq * dims_.feat, dims_.seq * dims_.feat};
  }
  std::span<const double> batch_data(size_t b) const {
    return {data_.data() + b * dims_.seq * dims_.feat, dims_.seq * dims_.feat};
  }

  // Copies batch entry b out as a seq x feat matrix.
  Matrix Slice(size_t b) const;
  void SetSlice(size_t b, const Matrix& m);

  std::string ShapeString() const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims3 dims_;
  std::vector<double> data_;
};

struct Dims4 {
  size_t batch;
  size_t heads;
  size_t seq;
  size_t feat;

  size_t size() const { return batch * heads * seq * feat; }
  friend bool operator==(const Dims4&, const Dims4&) = default;
};

// (batch x heads x sequence x feature) input of the attention layer.
class Tensor4 {
 public:
  explicit Tensor4(Dims4 dims);
  Tensor4(Dims4 dims, std::vector<double> data);

  const Dims4& dims() const { return dims_; }

  double& operator()(size_t b, size_t h, size_t n, size_t d) {
    return data_[((b * dims_.heads + h) * dims_.seq + n) * dims_.feat + d];
  }
  double operator()(size_t b, size_t h, size_t n, size_t d) const {
    return data_[((b * dims_.heads + h) * dims_.seq + n) * dims_.feat + d];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  // Folds heads [first, first + count) into the batch axis: head h of batch b
  // lands at batch index b * count + (h - first).
  Tensor3 FoldHeads(size_t first, size_t count) const;
  // Inverse of FoldHeads: writes `folded` back into heads [first, first+count).
  void UnfoldHeads(const Tensor3& folded, size_t first, size_t count);

  std::string ShapeString() const;

  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  Dims4 dims_;
  std::vector<double> data_;
};

// Exact product a * b (or a * b^T). Each output element accumulates over the
// inner index in ascending order starting from 0.0, so results are
// bit-reproducible.
Matrix Gemm(const Matrix& a, const Matrix& b, bool transpose_b = false);

Matrix Transpose(const Matrix& m);

// Softmax of each row (normalizes along the feature axis).
Matrix SoftmaxFeat(const Matrix& x);
// Softmax of each column (normalizes along the sequence axis).
Matrix SoftmaxSeq(const Matrix& x);

// Values uniform in [-1, 1) drawn from std::mt19937_64 seeded with `seed`:
// each 64-bit draw x maps to 2 * (x >> 11) * 2^-53 - 1. mt19937_64 output is
// fixed by the C++ standard, so tensors are identical across platforms.
Tensor3 SeededRandomTensor(Dims3 dims, uint64_t seed);
Tensor4 SeededRandomTensor4(Dims4 dims, uint64_t seed);

struct Qkv3 {
  Tensor3 q, k, v;
};
struct Qkv4 {
  Tensor4 q, k, v;
};
// q, k, v drawn consecutively from one generator stream.
Qkv3 SeededQkv(Dims3 dims, uint64_t seed);
Qkv4 SeededQkv4(Dims4 dims, uint64_t seed);

// ||a - b||_F / ||b||_F; falls back to the absolute norm when b is zero.
double RelativeError(std::span<const double> a, std::span<const double> b);

// Text fixture: header line "B N D", then B*N lines of D values each.
// Values are written with 17 significant digits so reading is lossless.
void WriteTensorFixture(std::ostream& out, const Tensor3& t);
Tensor3 ReadTensorFixture(std::istream& in, const std::string& source_name);
void SaveTensorFixture(const std::string& path, const Tensor3& t);
Tensor3 LoadTensorFixture(const std::string& path);

}  // namespace uniformer

#endif  // UNIFORMER_TENSOR_H_
