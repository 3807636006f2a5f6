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

#include "zsact/embedding_store.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zsact/error.hpp"
#include "zsact/text_io.hpp"

namespace zsact {

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InputError("embedding dimension must be positive");
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embedding file '" + path.string() + "'");
  return parse(in, path.string());
}

EmbeddingTable EmbeddingTable::parse(std::istream& in, std::string_view source) {
  const auto where = [&](std::size_t line_no) {
    return std::string(source) + ":" + std::to_string(line_no) + ": ";
  };

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError(where(1) + "missing header");
  ++line_no;
  const auto header = split_fields(line);
  std::size_t vocab = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_size(header[0], vocab) ||
      !parse_size(header[1], dim) || dim == 0) {
    throw InputError(where(line_no) +
                     "malformed header, expected '<vocab_size> <dim>'");
  }

  EmbeddingTable table(dim);
  table.tokens_.reserve(vocab);
  table.data_.reserve(vocab * dim);
  std::vector<double> row(dim);
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw InputError(where(line_no) + "expected " + std::to_string(dim) +
                       " components for token '" + std::string(fields[0]) +
                       "', found " + std::to_string(fields.size() - 1));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_double(fields[i + 1], row[i])) {
        throw InputError(where(line_no) + "bad number '" +
                         std::string(fields[i + 1]) + "'");
      }
    }
    try {
      table.insert(fields[0], row);
    } catch (const InputError& e) {
      throw InputError(where(line_no) + e.what());
    }
  }
  if (table.size() != vocab) {
    throw InputError(where(line_no) + "header declares " + std::to_string(vocab) +
                     " rows, found " + std::to_string(table.size()));
  }
  return table;
}

void EmbeddingTable::insert(std::string_view token, std::span<const double> vector) {
  if (vector.size() != dim_) {
    throw InputError("vector for '" + std::string(token) + "' has " +
                     std::to_string(vector.size()) + " components, expected " +
                     std::to_string(dim_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) {
      throw InputError("non-finite component for '" + std::string(token) + "'");
    }
  }
  std::string key = fold_case(token);
  if (key.empty()) throw InputError("empty token");
  if (index_.contains(key)) throw InputError("duplicate token '" + key + "'");
  index_.emplace(key, tokens_.size());
  tokens_.push_back(std::move(key));
  data_.insert(data_.end(), vector.begin(), vector.end());
}

std::optional<std::span<const double>> EmbeddingTable::lookup(
    std::string_view token) const {
  const auto it = index_.find(fold_case(token));
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dim_, dim_);
}

void EmbeddingTable::write(std::ostream& out) const {
  out << tokens_.size() << ' ' << dim_ << '\n';
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i];
    for (std::size_t j = 0; j < dim_; ++j) out << ' ' << format_double(data_[i * dim_ + j]);
    out << '\n';
  }
}

void EmbeddingTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write(out);
}

std::string fold_case(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_label(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u) || c == '_' || c == '-' || c == ',') {
      flush();
    } else {
      current.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  flush();
  if (tokens.empty()) throw InputError("empty label '" + std::string(raw) + "'");
  return tokens;
}

LabelDescription tokenize_label(std::string_view raw, const EmbeddingTable& table) {
  LabelDescription label;
  label.raw = std::string(raw);
  label.tokens = split_label(raw);
  for (const auto& t : label.tokens) {
    if (table.contains(t)) label.resolved.push_back(t);
  }
  return label;
}

std::vector<LabelDescription> tokenize_labels(std::span<const std::string> raws,
                                              const EmbeddingTable& table) {
  std::vector<LabelDescription> out;
  out.reserve(raws.size());
  for (const auto& r : raws) out.push_back(tokenize_label(r, table));
  return out;
}

}  // namespace zsact
