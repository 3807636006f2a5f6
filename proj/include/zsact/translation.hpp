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

#ifndef ZSACT_TRANSLATION_HPP_
#define ZSACT_TRANSLATION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsact/semantic_encoding.hpp"

namespace zsact {

enum class ScoreSource { kVideo, kTube, kFrameAverage };
enum class ScoreNormalization { kRaw, kPowerL2 };

// Object classifier responses p(y|v) for one video, tube or frame.
struct ObjectScores {
  std::vector<double> values;
  ScoreSource source = ScoreSource::kVideo;
  ScoreNormalization normalization = ScoreNormalization::kRaw;

  std::size_t size() const { return values.size(); }
  // Finite entries; nonnegative while raw.
  void validate() const;
};

enum class Sparsity { kDense, kActionTopT, kVideoSideDeferred };
std::string_view to_string(Sparsity sparsity);

// m x n object-to-action affinities, stored row-major (object rows).
class AffinityMatrix {
 public:
  AffinityMatrix() = default;
  AffinityMatrix(std::vector<std::string> objects, std::vector<std::string> actions,
                 std::vector<double> values, Sparsity sparsity = Sparsity::kDense,
                 std::size_t top_t = 0);

  std::size_t objects_count() const { return objects_.size(); }
  std::size_t actions_count() const { return actions_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<double>& values() const { return values_; }
  Sparsity sparsity() const { return sparsity_; }
  // T_z when sparsity() == kActionTopT, otherwise 0.
  std::size_t top_t() const { return top_t_; }

  double at(std::size_t object, std::size_t action) const {
    return values_[object * actions_.size() + action];
  }
  std::vector<double> column(std::size_t action) const;
  // Index of an action name; throws InputError when unknown.
  std::size_t action_index(std::string_view name) const;

  void set_sparsity(Sparsity sparsity, std::size_t top_t = 0);

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> actions_;
  std::vector<double> values_;
  Sparsity sparsity_ = Sparsity::kDense;
  std::size_t top_t_ = 0;
};

// Indices of the `t` largest values, ordered by decreasing value with ties
// broken by ascending index.
std::vector<std::size_t> top_t_indices(std::span<const double> values, std::size_t t);

ObjectScores average_frame_scores(std::span<const ObjectScores> frames);

// Signed power x -> sign(x)|x|^alpha followed by l2 normalisation.
ObjectScores power_l2_normalize(const ObjectScores& scores, double alpha);

// values[i][j] = <objects_i, actions_j>.
AffinityMatrix build_affinity(const EncodedLabels& objects, const EncodedLabels& actions);

// Keeps the T_z largest affinities of every action column.
AffinityMatrix sparsify_action(const AffinityMatrix& affinity, std::size_t t_z);

// Keeps the T_v largest object scores.
ObjectScores sparsify_video(const ObjectScores& scores, std::size_t t_v);

// How raw object scores become the vector used for scoring.
struct ScorePipeline {
  bool power_normalize = true;
  double alpha = 0.5;
  std::size_t t_v = 100;
  // Default order is normalise then mask; the masks agree on nonnegative
  // input either way, but the kept magnitudes differ.
  bool sparsify_before_normalize = false;
};

ObjectScores prepare_scores(const ObjectScores& raw, const ScorePipeline& pipeline);

}  // namespace zsact

#endif  // ZSACT_TRANSLATION_HPP_
