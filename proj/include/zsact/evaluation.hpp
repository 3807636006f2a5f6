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

#ifndef ZSACT_EVALUATION_HPP_
#define ZSACT_EVALUATION_HPP_

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zsact/engine.hpp"
#include "zsact/tube.hpp"

namespace zsact {

struct CurvePoint {
  double threshold = 0.0;
  double value = 0.0;
};

struct MetricReport {
  std::string metric;
  double value = 0.0;
  // Sorted by class name.
  std::vector<std::pair<std::string, double>> per_class;
  // Sorted by threshold.
  std::vector<CurvePoint> curve;
  std::vector<std::string> warnings;
};

// video id -> true action name.
using GroundTruthLabels = std::map<std::string, std::string>;

struct GroundTruthTube {
  std::string video_id;
  std::string action;
  std::vector<TubeFrame> frames;
};

// A localisation output ready for scoring against ground-truth tubes.
struct Detection {
  std::string video_id;
  std::string action;
  double score = 0.0;
  std::vector<TubeFrame> frames;
};

// Mean over classes of the per-class accuracy of the top-ranked action.
// Classes are those of the predicted videos' ground truth.
MetricReport average_class_accuracy(std::span<const Prediction> predictions,
                                    const GroundTruthLabels& truth);

struct AveragePrecision {
  double value = 0.0;
  bool no_positives = false;
};

// Non-interpolated AP: the sum of precision at each positive's rank,
// divided by the number of positives. Positives absent from the ranking
// contribute zero. No positives gives 0 with the flag set.
AveragePrecision average_precision(std::span<const std::string> ranked_ids,
                                   const std::set<std::string>& positives);

// AP per action (videos labelled with another action, or unlabelled, are
// negatives) and their mean.
MetricReport mean_average_precision(
    std::span<const std::pair<std::string, std::vector<std::string>>> rankings,
    const GroundTruthLabels& truth);

// Per-frame box IoU averaged over every frame annotated in either tube;
// frames present in only one tube count as zero.
double tube_overlap(std::span<const TubeFrame> a, std::span<const TubeFrame> b);

// For each threshold, detections are visited by decreasing score and each
// claims the unmatched same-video, same-action ground-truth tube it
// overlaps most, provided the overlap reaches the threshold. From the
// resulting hit/miss sequence the ROC is traced with recall against the
// fraction of detections that are misses, and its area is reported:
//   AUC = sum_{hits h} (D - misses ranked before h) / (P * D)
// with D detections and P ground-truth tubes.
MetricReport auc_vs_threshold(std::span<const Detection> detections,
                              std::span<const GroundTruthTube> truths,
                              std::span<const double> thresholds);

}  // namespace zsact

#endif  // ZSACT_EVALUATION_HPP_
