// Copyright 2026 The zsact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the file readers and writers.

#ifndef ZSACT_TEXT_IO_HPP_
#define ZSACT_TEXT_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace zsact {

// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_fields(std::string_view line);

// Splits on single tabs; empty fields are kept.
std::vector<std::string_view> split_tabs(std::string_view line);

std::string_view trim(std::string_view text);

bool parse_size(std::string_view text, std::size_t& out);
bool parse_int(std::string_view text, std::int64_t& out);
bool parse_double(std::string_view text, double& out);

// "%.17g": enough digits to round-trip any double.
std::string format_double(double value);

// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);

// Writes atomically enough for our purposes: the full buffer in one go.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace zsact

#endif  // ZSACT_TEXT_IO_HPP_
