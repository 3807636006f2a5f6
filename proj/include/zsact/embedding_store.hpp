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

#ifndef ZSACT_EMBEDDING_STORE_HPP_
#define ZSACT_EMBEDDING_STORE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zsact {

// Word -> dense vector lookup table. Tokens are stored case-folded; the
// table is immutable once loaded and safe to share between threads.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);

  // Reads the plain-text interchange format: a "<vocab_size> <dim>" header
  // followed by one "<token> <v1> ... <v_dim>" line per word. Errors name
  // the offending line.
  static EmbeddingTable load(const std::filesystem::path& path);
  static EmbeddingTable parse(std::istream& in, std::string_view source);

  // Throws InputError on a duplicate token (after case folding), a wrong
  // vector length or a non-finite component.
  void insert(std::string_view token, std::span<const double> vector);

  // Returns the stored vector, or nullopt for out-of-vocabulary tokens.
  // Lookup folds case.
  std::optional<std::span<const double>> lookup(std::string_view token) const;
  bool contains(std::string_view token) const { return lookup(token).has_value(); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Writes the same format load() reads, with 17 significant digits.
  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// A class name split into embeddable words.
struct LabelDescription {
  std::string raw;
  std::vector<std::string> tokens;
  // Subsequence of `tokens` found in the embedding table.
  std::vector<std::string> resolved;

  bool encodable() const { return !resolved.empty(); }
};

std::string fold_case(std::string_view text);

// Lowercases and splits on whitespace, '_', '-' and ','. Empty pieces are
// dropped. Throws InputError when nothing remains.
std::vector<std::string> split_label(std::string_view raw);

LabelDescription tokenize_label(std::string_view raw,
                                const EmbeddingTable& table);

std::vector<LabelDescription> tokenize_labels(
    std::span<const std::string> raws, const EmbeddingTable& table);

}  // namespace zsact

#endif  // ZSACT_EMBEDDING_STORE_HPP_
