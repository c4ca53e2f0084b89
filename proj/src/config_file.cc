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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uniformer/errors.h"
#include "uniformer/layer.h"

namespace uniformer {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view text, const std::string& where) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(where + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

AttentionConfig ParseConfig(std::istream& in, AttentionConfig base) {
  AttentionConfig cfg = base;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected key=value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));

    if (key == "mode") {
      const auto mode = ParseMode(value);
      if (!mode) {
        throw ConfigError(where + ": unknown mode '" + std::string(value) +
                          "' (valid: " + ValidModeNames() + ")");
      }
      cfg.mode = *mode;
    } else if (key == "window_len") {
      cfg.window_len = ParseNumber<size_t>(value, where);
    } else if (key == "tile_len") {
      cfg.tile_len = ParseNumber<size_t>(value, where);
    } else if (key == "seq_tile") {
      cfg.seq_tile = ParseNumber<size_t>(value, where);
    } else if (key == "local_fraction") {
      cfg.local_fraction = ParseNumber<double>(value, where);
    } else if (key == "threads") {
      cfg.threads = ParseNumber<int>(value, where);
    } else if (key == "precision") {
      const auto p = ParsePrecision(value);
      if (!p) {
        throw ConfigError(where + ": precision must be double, single or fixed");
      }
      cfg.precision = *p;
    } else if (key == "format") {
      cfg.fixed_format = FixedPointFormat::Parse(value);
    } else {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

AttentionConfig LoadConfigFile(const std::string& path, AttentionConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return ParseConfig(in, base);
}

std::string FormatConfig(const AttentionConfig& cfg) {
  char fraction[32];
  std::snprintf(fraction, sizeof(fraction), "%.17g", cfg.local_fraction);
  std::ostringstream out;
  out << "mode=" << ModeName(cfg.mode) << '\n'
      << "window_len=" << cfg.window_len << '\n'
      << "tile_len=" << cfg.tile_len << '\n'
      << "seq_tile=" << cfg.seq_tile << '\n'
      << "local_fraction=" << fraction << '\n'
      << "precision=" << PrecisionName(cfg.precision) << '\n'
      << "format=" << cfg.fixed_format.Name() << '\n'
      << "threads=" << cfg.threads << '\n';
  return out.str();
}

}  // namespace uniformer
