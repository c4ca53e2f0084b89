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

#ifndef UNIFORMER_ERRORS_H_
#define UNIFORMER_ERRORS_H_

#include <stdexcept>
#include <string>

namespace uniformer {

// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorCategory {
  kCheck = 1,
  kUsage = 2,
  kShape = 3,
  kConfig = 4,
  kIo = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Operand dimensions disagree, or a tensor has a zero extent.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what)
      : Error(ErrorCategory::kShape, what) {}
};

// Attention parameters are invalid for the given shapes (window/tile
// divisibility, tile ranges, head split).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCategory::kConfig, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what)
      : Error(ErrorCategory::kUsage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what)
      : Error(ErrorCategory::kIo, what) {}
};

// A numerical self-check (oracle comparison) failed.
class CheckFailure : public Error {
 public:
  explicit CheckFailure(const std::string& what)
      : Error(ErrorCategory::kCheck, what) {}
};

}  // namespace uniformer

#endif  // UNIFORMER_ERRORS_H_
