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

#include "zsact/engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "zsact/error.hpp"
#include "zsact/evaluation.hpp"

namespace zsact {

void TubeProposal::validate() const {
  try {
    validate_tube_frames(frames);
    scores.validate();
  } catch (const InputError& e) {
    throw InputError("tube '" + tube_id + "' of video '" + video_id + "': " + e.what());
  }
}

std::vector<double> score_actions(const ObjectScores& scores, const AffinityMatrix& affinity) {
  const std::size_t m = affinity.objects_count();
  const std::size_t n = affinity.actions_count();
  if (scores.size() != m) {
    throw InputError("score vector has " + std::to_string(scores.size()) +
                     " objects, affinity has " + std::to_string(m));
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t y = 0; y < m; ++y) {
    const double p = scores.values[y];
    for (std::size_t z = 0; z < n; ++z) out[z] += p * affinity.at(y, z);
  }
  return out;
}

std::vector<RankedAction> rank_actions(std::span<const double> scores,
                                       const AffinityMatrix& affinity) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<RankedAction> ranking;
  ranking.reserve(order.size());
  for (std::size_t z : order) ranking.push_back({z, affinity.actions()[z], scores[z]});
  return ranking;
}

Prediction classify(std::string_view video_id, const ObjectScores& scores,
                    const AffinityMatrix& affinity) {
  if (affinity.actions_count() == 0) throw InputError("no actions to classify into");
  const auto s = score_actions(scores, affinity);
  Prediction p;
  p.video_id = std::string(video_id);
  p.ranking = rank_actions(s, affinity);
  return p;
}

std::vector<RetrievalHit> retrieve(std::span<const VideoScores> videos,
                                   std::string_view action, const AffinityMatrix& affinity) {
  if (videos.empty()) throw InputError("retrieval over an empty video list");
  const std::size_t z = affinity.action_index(action);
  std::vector<RetrievalHit> hits;
  hits.reserve(videos.size());
  for (const auto& v : videos) hits.push_back({v.id, score_actions(v.scores, affinity)[z]});
  std::sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.video_id < b.video_id;
  });
  return hits;
}

Prediction localize(std::span<const TubeProposal> tubes, const AffinityMatrix& affinity) {
  if (tubes.empty()) throw InputError("localisation needs at least one tube proposal");
  if (affinity.actions_count() == 0) throw InputError("no actions to localise");
  const std::string& video = tubes.front().video_id;
  std::size_t best_tube = 0;
  double best = 0.0;
  bool have = false;
  for (std::size_t u = 0; u < tubes.size(); ++u) {
    if (tubes[u].video_id != video) {
      throw InputError("tube '" + tubes[u].tube_id + "' belongs to video '" +
                       tubes[u].video_id + "', expected '" + video + "'");
    }
    for (double s : score_actions(tubes[u].scores, affinity)) {
      if (!have || s > best) {
        have = true;
        best = s;
        best_tube = u;
      }
    }
  }
  const auto best_scores = score_actions(tubes[best_tube].scores, affinity);
  Prediction p;
  p.video_id = video;
  p.ranking = rank_actions(best_scores, affinity);
  p.tube = best_tube;
  p.tube_id = tubes[best_tube].tube_id;
  return p;
}

std::vector<Prediction> top_detections(std::span<const TubeProposal> tubes,
                                       const AffinityMatrix& affinity, std::size_t limit,
                                       double nms_overlap) {
  if (limit < 1) throw InputError("detection limit must be at least 1");
  if (!(nms_overlap >= 0.0 && nms_overlap <= 1.0)) {
    throw InputError("suppression overlap must lie in [0, 1]");
  }
  std::vector<Prediction> scored;
  scored.reserve(tubes.size());
  for (std::size_t u = 0; u < tubes.size(); ++u) {
    Prediction p = classify(tubes[u].video_id, tubes[u].scores, affinity);
    p.tube = u;
    p.tube_id = tubes[u].tube_id;
    scored.push_back(std::move(p));
  }
  std::stable_sort(scored.begin(), scored.end(), [](const Prediction& a, const Prediction& b) {
    return a.best().score > b.best().score;
  });
  std::vector<Prediction> kept;
  for (auto& candidate : scored) {
    if (kept.size() == limit) break;
    const auto& frames = tubes[*candidate.tube].frames;
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Prediction& k) {
      return tube_overlap(tubes[*k.tube].frames, frames) > nms_overlap;
    });
    if (!suppressed) kept.push_back(std::move(candidate));
  }
  return kept;
}

}  // namespace zsact
