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

#ifndef ZSACT_CONFIG_HPP_
#define ZSACT_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "zsact/semantic_encoding.hpp"
#include "zsact/translation.hpp"

namespace zsact {

// Everything a pipeline command needs. Defaults are the reference operating
// point: FWV with k = 2 on PCA-halved vectors, T_z = 10, T_v = 100, power
// normalisation with alpha = 0.5.
struct RunConfig {
  // Inputs.
  std::string embeddings;
  std::string object_labels;
  std::string action_labels;
  std::string labels;  // label list for the encode command
  std::string scores;
  std::string tubes;
  std::string ground_truth;
  std::string truth_tubes;
  std::string predictions;
  // Artifacts handed between commands.
  std::string model;
  std::string affinity;
  std::string output;

  Encoder encoder = Encoder::kFwv;
  std::size_t k = 2;
  std::size_t pca_factor = 2;
  std::size_t t_z = 10;
  std::size_t t_v = 100;
  double alpha = 0.5;
  bool normalize_labels = true;
  FisherBlocks fwv_blocks = FisherBlocks::kMeanOnly;
  std::uint64_t seed = 0;
  bool action_sparsity = true;
  bool power_normalize = true;
  bool normalize_tubes = true;
  bool sparsify_before_normalize = false;
  double nms_overlap = 0.3;
  std::size_t detection_limit = 5;
  std::string metric = "accuracy";  // accuracy | map | auc
  std::vector<double> thresholds{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  std::string action;  // restricts retrieve to one action when set
  std::string format = "tsv";  // tsv | json

  // Throws InputError on out-of-range parameters.
  void validate() const;

  EncoderConfig encoder_config() const;
  ScorePipeline score_pipeline() const;
  ScorePipeline tube_pipeline() const;

  // Hash of the numerical parameters (paths excluded), 16 hex digits.
  std::string hash() const;

  nlohmann::json to_json() const;
  // Unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& doc);
  static RunConfig load(const std::filesystem::path& path);

  // Sets one field from its textual form; `key` is the JSON key name.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;
};

}  // namespace zsact

#endif  // ZSACT_CONFIG_HPP_
