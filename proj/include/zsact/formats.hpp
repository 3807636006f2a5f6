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

// Readers and writers for every file the pipeline exchanges.
//
// Delimited files are tab-separated; lines starting with '#' are comments
// and carry provenance ("# zsact <kind> config=<hash>"). Structured files
// are JSON documents.

#ifndef ZSACT_FORMATS_HPP_
#define ZSACT_FORMATS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zsact/engine.hpp"
#include "zsact/evaluation.hpp"
#include "zsact/semantic_encoding.hpp"
#include "zsact/translation.hpp"

namespace zsact {

// One label per line; blank lines and '#' comments are skipped.
std::vector<std::string> read_label_file(const std::filesystem::path& path);

// Header "id<TAB>obj_1<TAB>...<TAB>obj_m", then one row per video (or
// frame). Rows sharing an id are frames of one video and are averaged;
// videos keep the order of first appearance.
struct ScoreTable {
  std::vector<std::string> objects;
  std::vector<VideoScores> videos;
};
ScoreTable parse_score_table(std::string_view text, std::string_view source);
ScoreTable read_score_table(const std::filesystem::path& path);
std::string format_score_table(const ScoreTable& table);

// Header "object<TAB>action_1...", then "object_name<TAB>g_1...".
std::string format_affinity(const AffinityMatrix& affinity, std::string_view config_hash);
AffinityMatrix parse_affinity(std::string_view text, std::string_view source);
AffinityMatrix read_affinity(const std::filesystem::path& path);

nlohmann::json gmm_to_json(const GmmModel& model);
GmmModel gmm_from_json(const nlohmann::json& doc);
nlohmann::json pca_to_json(const PcaTransform& pca);
PcaTransform pca_from_json(const nlohmann::json& doc);

std::string format_model(const FisherModel& model, std::string_view config_hash);
FisherModel parse_model(std::string_view text, std::string_view source);
FisherModel read_model(const std::filesystem::path& path);

std::string format_encoded_labels(const EncodedLabels& labels, std::string_view config_hash);
EncodedLabels parse_encoded_labels(std::string_view text, std::string_view source);

// Tube documents:
//   {"objects": [...],
//    "videos": [{"video": id,
//                "tubes": [{"id": id, "span": [first, last],
//                           "frames": [[frame, x, y, w, h], ...],
//                           "scores": [...], "action": name}]}]}
// Proposal files carry "scores"; ground-truth files carry "action".
struct TubeRecord {
  std::string video_id;
  std::string tube_id;
  std::vector<TubeFrame> frames;
  std::optional<std::vector<double>> scores;
  std::optional<std::string> action;
};
struct TubeFile {
  std::vector<std::string> objects;
  std::vector<TubeRecord> tubes;
};
TubeFile parse_tube_file(std::string_view text, std::string_view source);
TubeFile read_tube_file(const std::filesystem::path& path);
std::string format_tube_file(const TubeFile& file);

// Proposal tubes grouped by video, in file order.
std::vector<std::vector<TubeProposal>> proposals_by_video(const TubeFile& file);
std::vector<GroundTruthTube> truth_tubes(const TubeFile& file);

// "video<TAB>action" per line.
GroundTruthLabels parse_ground_truth(std::string_view text, std::string_view source);
GroundTruthLabels read_ground_truth(const std::filesystem::path& path);

// Classification output: "video<TAB>rank<TAB>action<TAB>score", the full
// ranking of each video.
std::string format_predictions(const std::vector<Prediction>& predictions,
                               std::string_view config_hash);
std::string format_predictions_json(const std::vector<Prediction>& predictions,
                                    std::string_view config_hash);
std::vector<Prediction> parse_predictions(std::string_view text, std::string_view source);

// Retrieval output: "action<TAB>rank<TAB>video<TAB>score".
using RetrievalRanking = std::pair<std::string, std::vector<RetrievalHit>>;
std::string format_retrieval(const std::vector<RetrievalRanking>& rankings,
                             std::string_view config_hash);
std::string format_retrieval_json(const std::vector<RetrievalRanking>& rankings,
                                  std::string_view config_hash);
std::vector<RetrievalRanking> parse_retrieval(std::string_view text, std::string_view source);

// Localisation output: "video<TAB>rank<TAB>action<TAB>score<TAB>tube".
struct DetectionRow {
  std::string video_id;
  std::size_t rank = 0;
  std::string action;
  double score = 0.0;
  std::string tube_id;
};
std::string format_detections(const std::vector<DetectionRow>& rows,
                              std::string_view config_hash);
std::string format_detections_json(const std::vector<DetectionRow>& rows,
                                   std::string_view config_hash);
std::vector<DetectionRow> parse_detections(std::string_view text, std::string_view source);

std::string format_report(const MetricReport& report, std::string_view config_hash);
std::string format_report_json(const MetricReport& report, std::string_view config_hash);
// "threshold<TAB>value" per curve point.
std::string format_curve(const MetricReport& report, std::string_view config_hash);

}  // namespace zsact

#endif  // ZSACT_FORMATS_HPP_
