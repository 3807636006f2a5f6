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

#ifndef ZSACT_SEMANTIC_ENCODING_HPP_
#define ZSACT_SEMANTIC_ENCODING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "zsact/embedding_store.hpp"
#include "zsact/gmm.hpp"
#include "zsact/pca.hpp"

namespace zsact {

enum class Encoder { kAwv, kFwv };
enum class FisherBlocks { kMeanOnly, kMeanAndVariance };

std::string_view to_string(Encoder encoder);
std::string_view to_string(FisherBlocks blocks);
Encoder parse_encoder(std::string_view text);
FisherBlocks parse_fisher_blocks(std::string_view text);

struct SemanticVector {
  Encoder encoder = Encoder::kAwv;
  Eigen::VectorXd values;
};

// PCA followed by the mixture fitted in PCA space.
struct FisherModel {
  PcaTransform pca;
  GmmModel gmm;
};

struct EncoderConfig {
  Encoder encoder = Encoder::kFwv;
  FisherBlocks blocks = FisherBlocks::kMeanOnly;
  // Final l2 normalisation (preceded by signed power normalisation for
  // FWV). Off leaves the raw average / raw Fisher vector.
  bool normalize = true;
  double power_alpha = 0.5;
};

// Mean of the resolved word vectors, then l2-normalised.
SemanticVector encode_awv(const LabelDescription& label, const EmbeddingTable& table,
                          bool normalize = true);

// Unnormalised Fisher vector of a set of points (rows) already in model
// space. Per component c, in component order:
//   mean block      1/sqrt(w_c)   sum_i g_i(c) (x_i - mu_c) / s_c
//   variance block  1/sqrt(2 w_c) sum_i g_i(c) ((x_i - mu_c)^2 / s_c^2 - 1)
// where g_i is the responsibility of point i.
Eigen::VectorXd fisher_vector(const Eigen::MatrixXd& points, const GmmModel& model,
                              FisherBlocks blocks);

std::size_t fisher_dim(const GmmModel& model, FisherBlocks blocks);

SemanticVector encode_fwv(const LabelDescription& label, const EmbeddingTable& table,
                          const FisherModel& model, FisherBlocks blocks,
                          bool normalize = true, double power_alpha = 0.5);

// Encoded rows for a label list, one row per label in input order.
struct EncodedLabels {
  Encoder encoder = Encoder::kAwv;
  std::vector<std::string> names;
  Eigen::MatrixXd rows;

  std::size_t size() const { return names.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }
};

// `model` is required for FWV and ignored for AWV.
EncodedLabels encode_all(std::span<const LabelDescription> labels,
                         const EmbeddingTable& table, const EncoderConfig& config,
                         const FisherModel* model = nullptr);

// Stacks the resolved word vectors of every encodable label, duplicates
// kept. This is the training set for the PCA and the mixture.
Eigen::MatrixXd resolved_word_matrix(std::span<const LabelDescription> labels,
                                     const EmbeddingTable& table);

}  // namespace zsact

#endif  // ZSACT_SEMANTIC_ENCODING_HPP_
