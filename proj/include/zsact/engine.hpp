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

#ifndef ZSACT_ENGINE_HPP_
#define ZSACT_ENGINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsact/translation.hpp"
#include "zsact/tube.hpp"

namespace zsact {

struct RankedAction {
  std::size_t action = 0;
  std::string name;
  double score = 0.0;
};

// Actions ranked by score, ties by ascending action index. For localisation
// `tube` indexes the chosen proposal.
struct Prediction {
  std::string video_id;
  std::vector<RankedAction> ranking;
  std::optional<std::size_t> tube;
  std::string tube_id;

  const RankedAction& best() const { return ranking.front(); }
};

struct VideoScores {
  std::string id;
  ObjectScores scores;
};

struct TubeProposal {
  std::string video_id;
  std::string tube_id;
  std::vector<TubeFrame> frames;
  ObjectScores scores;

  void validate() const;
};

struct RetrievalHit {
  std::string video_id;
  double score = 0.0;
};

// score_z = sum_y p_y g_yz, accumulated in ascending object order.
std::vector<double> score_actions(const ObjectScores& scores, const AffinityMatrix& affinity);

std::vector<RankedAction> rank_actions(std::span<const double> scores,
                                       const AffinityMatrix& affinity);

Prediction classify(std::string_view video_id, const ObjectScores& scores,
                    const AffinityMatrix& affinity);

// Videos ordered by the named action's score, ties by ascending id.
std::vector<RetrievalHit> retrieve(std::span<const VideoScores> videos,
                                   std::string_view action, const AffinityMatrix& affinity);

// Joint argmax over (action, tube); ties go to the earlier tube, then the
// lower action index. The returned ranking is the chosen tube's.
Prediction localize(std::span<const TubeProposal> tubes, const AffinityMatrix& affinity);

// Each tube is labelled with its best action; tubes are visited by
// decreasing score and dropped when their overlap with an already kept
// tube exceeds `nms_overlap`. At most `limit` detections are returned.
std::vector<Prediction> top_detections(std::span<const TubeProposal> tubes,
                                       const AffinityMatrix& affinity, std::size_t limit,
                                       double nms_overlap);

}  // namespace zsact

#endif  // ZSACT_ENGINE_HPP_
