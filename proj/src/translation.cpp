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

#include "zsact/translation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zsact/error.hpp"

namespace zsact {

void ObjectScores::validate() const {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("object scores must be finite");
    if (normalization == ScoreNormalization::kRaw && v < 0.0) {
      throw InputError("raw object scores must be nonnegative");
    }
  }
}

std::string_view to_string(Sparsity sparsity) {
  switch (sparsity) {
    case Sparsity::kDense: return "dense";
    case Sparsity::kActionTopT: return "action-top-t";
    case Sparsity::kVideoSideDeferred: return "video-side-deferred";
  }
  return "dense";
}

AffinityMatrix::AffinityMatrix(std::vector<std::string> objects,
                               std::vector<std::string> actions, std::vector<double> values,
                               Sparsity sparsity, std::size_t top_t)
    : objects_(std::move(objects)),
      actions_(std::move(actions)),
      values_(std::move(values)),
      sparsity_(sparsity),
      top_t_(top_t) {
  if (values_.size() != objects_.size() * actions_.size()) {
    throw InputError("affinity matrix has " + std::to_string(values_.size()) +
                     " values for " + std::to_string(objects_.size()) + " objects x " +
                     std::to_string(actions_.size()) + " actions");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("affinity values must be finite");
  }
}

std::vector<double> AffinityMatrix::column(std::size_t action) const {
  std::vector<double> col(objects_.size());
  for (std::size_t y = 0; y < objects_.size(); ++y) col[y] = at(y, action);
  return col;
}

std::size_t AffinityMatrix::action_index(std::string_view name) const {
  const auto it = std::find(actions_.begin(), actions_.end(), name);
  if (it == actions_.end()) throw InputError("unknown action '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - actions_.begin());
}

void AffinityMatrix::set_sparsity(Sparsity sparsity, std::size_t top_t) {
  sparsity_ = sparsity;
  top_t_ = sparsity == Sparsity::kActionTopT ? top_t : 0;
}

std::vector<std::size_t> top_t_indices(std::span<const double> values, std::size_t t) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t keep = std::min(t, values.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  idx.resize(keep);
  return idx;
}

ObjectScores average_frame_scores(std::span<const ObjectScores> frames) {
  if (frames.empty()) throw InputError("cannot average an empty list of frames");
  const std::size_t m = frames.front().size();
  ObjectScores out;
  out.source = ScoreSource::kFrameAverage;
  out.values.assign(m, 0.0);
  for (const auto& f : frames) {
    if (f.size() != m) {
      throw InputError("frame score lengths differ: " + std::to_string(f.size()) + " vs " +
                       std::to_string(m));
    }
    for (std::size_t i = 0; i < m; ++i) out.values[i] += f.values[i];
  }
  const double n = static_cast<double>(frames.size());
  for (double& v : out.values) v /= n;
  return out;
}

ObjectScores power_l2_normalize(const ObjectScores& scores, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("power normalisation exponent must lie in (0, 1]");
  }
  if (scores.normalization != ScoreNormalization::kRaw) {
    throw InputError("scores are already normalised");
  }
  ObjectScores out = scores;
  double sq = 0.0;
  for (double& v : out.values) {
    v = std::copysign(std::pow(std::abs(v), alpha), v);
    sq += v * v;
  }
  if (!(sq > 0.0)) throw NumericalError("cannot normalise an all-zero score vector");
  const double norm = std::sqrt(sq);
  for (double& v : out.values) v /= norm;
  out.normalization = ScoreNormalization::kPowerL2;
  return out;
}

AffinityMatrix build_affinity(const EncodedLabels& objects, const EncodedLabels& actions) {
  if (objects.size() == 0 || actions.size() == 0) {
    throw InputError("affinity needs at least one object and one action");
  }
  if (objects.dim() != actions.dim()) {
    throw InputError("object encodings have dimension " + std::to_string(objects.dim()) +
                     ", action encodings " + std::to_string(actions.dim()));
  }
  const std::size_t m = objects.size();
  const std::size_t n = actions.size();
  std::vector<double> values(m * n);
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t z = 0; z < n; ++z) {
      values[y * n + z] = objects.rows.row(static_cast<Eigen::Index>(y))
                              .dot(actions.rows.row(static_cast<Eigen::Index>(z)));
    }
  }
  return AffinityMatrix(objects.names, actions.names, std::move(values));
}

AffinityMatrix sparsify_action(const AffinityMatrix& affinity, std::size_t t_z) {
  if (t_z < 1) throw InputError("action sparsity T_z must be at least 1");
  const std::size_t m = affinity.objects_count();
  const std::size_t n = affinity.actions_count();
  std::vector<double> values(m * n, 0.0);
  for (std::size_t z = 0; z < n; ++z) {
    const std::vector<double> col = affinity.column(z);
    for (std::size_t y : top_t_indices(col, t_z)) values[y * n + z] = col[y];
  }
  return AffinityMatrix(affinity.objects(), affinity.actions(), std::move(values),
                        Sparsity::kActionTopT, t_z);
}

ObjectScores sparsify_video(const ObjectScores& scores, std::size_t t_v) {
  if (t_v < 1) throw InputError("video sparsity T_v must be at least 1");
  ObjectScores out = scores;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  for (std::size_t y : top_t_indices(scores.values, t_v)) out.values[y] = scores.values[y];
  return out;
}

ObjectScores prepare_scores(const ObjectScores& raw, const ScorePipeline& pipeline) {
  raw.validate();
  if (pipeline.sparsify_before_normalize) {
    ObjectScores s = sparsify_video(raw, pipeline.t_v);
    return pipeline.power_normalize ? power_l2_normalize(s, pipeline.alpha) : s;
  }
  ObjectScores s = pipeline.power_normalize ? power_l2_normalize(raw, pipeline.alpha) : raw;
  return sparsify_video(s, pipeline.t_v);
}

}  // namespace zsact
