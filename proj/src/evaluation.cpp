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

#include "zsact/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zsact/error.hpp"

namespace zsact {

double box_iou(const Box& a, const Box& b) {
  const double ix = std::max(0.0, std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x));
  const double iy =
      std::max(0.0, std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

void validate_tube_frames(std::span<const TubeFrame> frames) {
  if (frames.empty()) throw InputError("tube has no frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Box& b = frames[i].box;
    if (!(std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.width) &&
          std::isfinite(b.height) && b.width > 0.0 && b.height > 0.0)) {
      throw InputError("degenerate box at frame " + std::to_string(frames[i].frame));
    }
    if (i > 0 && frames[i].frame <= frames[i - 1].frame) {
      throw InputError("frame indices must be strictly increasing");
    }
  }
}

MetricReport average_class_accuracy(std::span<const Prediction> predictions,
                                    const GroundTruthLabels& truth) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  std::size_t missing = 0;
  for (const auto& p : predictions) {
    const auto it = truth.find(p.video_id);
    if (it == truth.end()) {
      ++missing;
      continue;
    }
    auto& [correct, total] = tally[it->second];
    ++total;
    if (!p.ranking.empty() && p.best().name == it->second) ++correct;
  }
  if (missing > 0) {
    throw InputError(std::to_string(missing) + " of " + std::to_string(predictions.size()) +
                     " predicted videos have no ground truth");
  }
  MetricReport report;
  report.metric = "average_class_accuracy";
  double sum = 0.0;
  for (const auto& [cls, counts] : tally) {
    const double acc = static_cast<double>(counts.first) / static_cast<double>(counts.second);
    report.per_class.emplace_back(cls, acc);
    sum += acc;
  }
  report.value = tally.empty() ? 0.0 : sum / static_cast<double>(tally.size());
  if (tally.empty()) report.warnings.push_back("no predictions to evaluate");
  return report;
}

AveragePrecision average_precision(std::span<const std::string> ranked_ids,
                                   const std::set<std::string>& positives) {
  if (ranked_ids.empty()) throw InputError("average precision of an empty ranking");
  if (positives.empty()) return {0.0, true};
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < ranked_ids.size(); ++r) {
    if (positives.contains(ranked_ids[r])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  return {sum / static_cast<double>(positives.size()), false};
}

MetricReport mean_average_precision(
    std::span<const std::pair<std::string, std::vector<std::string>>> rankings,
    const GroundTruthLabels& truth) {
  MetricReport report;
  report.metric = "mean_average_precision";
  double sum = 0.0;
  for (const auto& [action, ranked] : rankings) {
    std::set<std::string> positives;
    for (const auto& [video, label] : truth) {
      if (label == action) positives.insert(video);
    }
    const auto ap = average_precision(ranked, positives);
    if (ap.no_positives) {
      report.warnings.push_back("action '" + action + "' has no positive videos; AP set to 0");
    }
    report.per_class.emplace_back(action, ap.value);
    sum += ap.value;
  }
  std::sort(report.per_class.begin(), report.per_class.end());
  report.value = rankings.empty() ? 0.0 : sum / static_cast<double>(rankings.size());
  return report;
}

double tube_overlap(std::span<const TubeFrame> a, std::span<const TubeFrame> b) {
  if (a.empty() || b.empty()) throw InputError("tube overlap of an empty tube");
  validate_tube_frames(a);
  validate_tube_frames(b);
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t frames = 0;
  double sum = 0.0;
  while (i < a.size() || j < b.size()) {
    ++frames;
    if (j == b.size() || (i < a.size() && a[i].frame < b[j].frame)) {
      ++i;
    } else if (i == a.size() || b[j].frame < a[i].frame) {
      ++j;
    } else {
      sum += box_iou(a[i].box, b[j].box);
      ++i;
      ++j;
    }
  }
  return sum / static_cast<double>(frames);
}

MetricReport auc_vs_threshold(std::span<const Detection> detections,
                              std::span<const GroundTruthTube> truths,
                              std::span<const double> thresholds) {
  if (thresholds.empty()) throw InputError("no overlap thresholds given");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
      throw InputError("overlap thresholds must lie in [0, 1]");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw InputError("overlap thresholds must be sorted");
    }
  }

  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].score > detections[b].score;
  });

  // Candidate (truth, overlap) pairs per detection, independent of the threshold.
  std::vector<std::vector<std::pair<std::size_t, double>>> candidates(detections.size());
  for (std::size_t d = 0; d < detections.size(); ++d) {
    for (std::size_t t = 0; t < truths.size(); ++t) {
      if (truths[t].video_id != detections[d].video_id ||
          truths[t].action != detections[d].action) {
        continue;
      }
      candidates[d].emplace_back(t, tube_overlap(detections[d].frames, truths[t].frames));
    }
  }

  MetricReport report;
  report.metric = "auc_vs_overlap";
  const double positives = static_cast<double>(truths.size());
  const double total = static_cast<double>(detections.size());
  double sum = 0.0;
  for (double theta : thresholds) {
    std::vector<bool> matched(truths.size(), false);
    double misses = 0.0;
    double area = 0.0;
    for (std::size_t d : order) {
      std::size_t best = truths.size();
      double best_overlap = -1.0;
      for (const auto& [t, overlap] : candidates[d]) {
        if (!matched[t] && overlap >= theta && overlap > best_overlap) {
          best = t;
          best_overlap = overlap;
        }
      }
      if (best < truths.size()) {
        matched[best] = true;
        area += total - misses;
      } else {
        misses += 1.0;
      }
    }
    const double auc = positives > 0.0 && total > 0.0 ? area / (positives * total) : 0.0;
    report.curve.push_back({theta, auc});
    sum += auc;
  }
  report.value = sum / static_cast<double>(thresholds.size());
  if (truths.empty()) report.warnings.push_back("no ground-truth tubes");
  return report;
}

}  // namespace zsact
