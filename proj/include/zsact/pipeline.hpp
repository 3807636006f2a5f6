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

// File-to-file pipeline stages. Each command reads its inputs, computes
// everything in memory, and only then writes its single output file.

#ifndef ZSACT_PIPELINE_HPP_
#define ZSACT_PIPELINE_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsact/config.hpp"
#include "zsact/embedding_store.hpp"
#include "zsact/engine.hpp"
#include "zsact/evaluation.hpp"
#include "zsact/formats.hpp"
#include "zsact/semantic_encoding.hpp"
#include "zsact/translation.hpp"

namespace zsact {

struct CommandResult {
  std::string output;
  std::vector<std::string> warnings;
};

// PCA to floor(dim / pca_factor) dimensions and a k-component mixture, both
// fitted on the resolved words of every encodable object label.
FisherModel fit_encoder_model(const EmbeddingTable& table,
                              std::span<const LabelDescription> object_labels,
                              const RunConfig& config);

// Encodes both label lists and builds the (optionally T_z-sparsified)
// affinity matrix. Throws InputError listing every unencodable label.
AffinityMatrix translate_labels(const EmbeddingTable& table,
                                std::span<const std::string> object_labels,
                                std::span<const std::string> action_labels,
                                const RunConfig& config, const FisherModel* model);

// Normalises, sparsifies and classifies every video.
std::vector<Prediction> classify_videos(std::span<const VideoScores> videos,
                                        const AffinityMatrix& affinity,
                                        const RunConfig& config);

std::vector<RetrievalRanking> retrieve_videos(std::span<const VideoScores> videos,
                                              const AffinityMatrix& affinity,
                                              const RunConfig& config);

// Top detections of every video; rank 1 of each video is its joint
// (action, tube) argmax.
std::vector<DetectionRow> localize_videos(const TubeFile& tubes, const AffinityMatrix& affinity,
                                          const RunConfig& config);

CommandResult cmd_fit_gmm(const RunConfig& config);
CommandResult cmd_encode(const RunConfig& config);
CommandResult cmd_translate(const RunConfig& config);
CommandResult cmd_classify(const RunConfig& config);
CommandResult cmd_retrieve(const RunConfig& config);
CommandResult cmd_localize(const RunConfig& config);
CommandResult cmd_eval(const RunConfig& config);
CommandResult cmd_plot_data(const RunConfig& config);

// Dispatches by subcommand name ("fit-gmm", "encode", ...).
CommandResult run_command(std::string_view name, const RunConfig& config);

const std::vector<std::string>& command_names();

}  // namespace zsact

#endif  // ZSACT_PIPELINE_HPP_
