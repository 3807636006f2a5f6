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

#include "zsact/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "zsact/error.hpp"
#include "zsact/text_io.hpp"

namespace zsact {
namespace {

const std::string& require(const std::string& path, std::string_view what) {
  if (path.empty()) throw InputError("missing required path: " + std::string(what));
  return path;
}

std::string output_path(const RunConfig& c, const std::string& fallback = {}) {
  if (!c.output.empty()) return c.output;
  if (!fallback.empty()) return fallback;
  throw InputError("missing required path: output");
}

void check_objects(const std::vector<std::string>& have, const AffinityMatrix& affinity,
                   std::string_view source) {
  if (have != affinity.objects()) {
    throw InputError(std::string(source) + " lists " + std::to_string(have.size()) +
                     " objects that do not match the " +
                     std::to_string(affinity.objects_count()) + " affinity rows in order");
  }
}

std::size_t distinct_rows(const Eigen::MatrixXd& rows) {
  std::set<std::vector<double>> seen;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    seen.emplace(rows.row(r).begin(), rows.row(r).end());
  }
  return seen.size();
}

}  // namespace

FisherModel fit_encoder_model(const EmbeddingTable& table,
                              std::span<const LabelDescription> object_labels,
                              const RunConfig& config) {
  const Eigen::MatrixXd words = resolved_word_matrix(object_labels, table);
  if (words.rows() == 0) throw InputError("no object label has a word in the vocabulary");
  const std::size_t out_dim = table.dim() / config.pca_factor;
  if (out_dim < 1) {
    throw InputError("embedding dimension " + std::to_string(table.dim()) +
                     " is too small for pca_factor " + std::to_string(config.pca_factor));
  }
  const std::size_t distinct = distinct_rows(words);
  if (config.k > distinct) {
    throw InputError("k=" + std::to_string(config.k) + " exceeds the " +
                     std::to_string(distinct) + " distinct object word vectors");
  }
  FisherModel model;
  model.pca = fit_pca(words, out_dim);
  model.gmm = fit_gmm(model.pca.apply_rows(words), config.k, config.seed);
  return model;
}

AffinityMatrix translate_labels(const EmbeddingTable& table,
                                std::span<const std::string> object_labels,
                                std::span<const std::string> action_labels,
                                const RunConfig& config, const FisherModel* model) {
  const auto objects = tokenize_labels(object_labels, table);
  const auto actions = tokenize_labels(action_labels, table);
  std::string missing;
  for (const auto* list : {&objects, &actions}) {
    for (const auto& l : *list) {
      if (!l.encodable()) missing += (missing.empty() ? "'" : ", '") + l.raw + "'";
    }
  }
  if (!missing.empty()) throw InputError("unencodable labels: " + missing);
  const EncoderConfig enc = config.encoder_config();
  const AffinityMatrix dense =
      build_affinity(encode_all(objects, table, enc, model), encode_all(actions, table, enc, model));
  if (config.action_sparsity) return sparsify_action(dense, config.t_z);
  AffinityMatrix out = dense;
  out.set_sparsity(Sparsity::kVideoSideDeferred);
  return out;
}

std::vector<Prediction> classify_videos(std::span<const VideoScores> videos,
                                        const AffinityMatrix& affinity,
                                        const RunConfig& config) {
  const ScorePipeline pipeline = config.score_pipeline();
  std::vector<Prediction> out;
  out.reserve(videos.size());
  for (const auto& v : videos) {
    try {
      out.push_back(classify(v.id, prepare_scores(v.scores, pipeline), affinity));
    } catch (const InputError& e) {
      throw InputError("video '" + v.id + "': " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("video '" + v.id + "': " + e.what());
    }
  }
  return out;
}

std::vector<RetrievalRanking> retrieve_videos(std::span<const VideoScores> videos,
                                              const AffinityMatrix& affinity,
                                              const RunConfig& config) {
  std::vector<RetrievalRanking> out;
  if (videos.empty()) return out;
  const ScorePipeline pipeline = config.score_pipeline();
  std::vector<VideoScores> prepared;
  prepared.reserve(videos.size());
  for (const auto& v : videos) {
    try {
      prepared.push_back({v.id, prepare_scores(v.scores, pipeline)});
    } catch (const NumericalError& e) {
      throw NumericalError("video '" + v.id + "': " + e.what());
    }
  }
  std::vector<std::string> actions;
  if (config.action.empty()) {
    actions = affinity.actions();
  } else {
    affinity.action_index(config.action);
    actions.push_back(config.action);
  }
  for (const auto& a : actions) out.emplace_back(a, retrieve(prepared, a, affinity));
  return out;
}

std::vector<DetectionRow> localize_videos(const TubeFile& tubes, const AffinityMatrix& affinity,
                                          const RunConfig& config) {
  const ScorePipeline pipeline = config.tube_pipeline();
  std::vector<DetectionRow> rows;
  for (auto& video : proposals_by_video(tubes)) {
    for (auto& t : video) {
      t.validate();
      try {
        t.scores = prepare_scores(t.scores, pipeline);
      } catch (const NumericalError& e) {
        throw NumericalError("tube '" + t.tube_id + "' of video '" + t.video_id + "': " + e.what());
      }
    }
    const auto detections =
        top_detections(video, affinity, config.detection_limit, config.nms_overlap);
    for (std::size_t r = 0; r < detections.size(); ++r) {
      const auto& d = detections[r];
      rows.push_back({d.video_id, r + 1, d.best().name, d.best().score, d.tube_id});
    }
  }
  return rows;
}

CommandResult cmd_fit_gmm(const RunConfig& config) {
  config.validate();
  const auto table = EmbeddingTable::load(require(config.embeddings, "embeddings"));
  const auto labels = read_label_file(require(config.object_labels, "object_labels"));
  const auto described = tokenize_labels(labels, table);
  CommandResult result;
  for (const auto& l : described) {
    if (!l.encodable()) result.warnings.push_back("object label '" + l.raw + "' has no known words");
  }
  const FisherModel model = fit_encoder_model(table, described, config);
  result.output = output_path(config, config.model);
  write_file(result.output, format_model(model, config.hash()));
  return result;
}

CommandResult cmd_encode(const RunConfig& config) {
  config.validate();
  const auto table = EmbeddingTable::load(require(config.embeddings, "embeddings"));
  const auto raws = read_label_file(require(config.labels, "labels"));
  const auto labels = tokenize_labels(raws, table);
  FisherModel model;
  if (config.encoder == Encoder::kFwv) model = read_model(require(config.model, "model"));
  const auto encoded = encode_all(labels, table, config.encoder_config(), &model);
  CommandResult result;
  result.output = output_path(config);
  write_file(result.output, format_encoded_labels(encoded, config.hash()));
  return result;
}

CommandResult cmd_translate(const RunConfig& config) {
  config.validate();
  const auto table = EmbeddingTable::load(require(config.embeddings, "embeddings"));
  const auto objects = read_label_file(require(config.object_labels, "object_labels"));
  const auto actions = read_label_file(require(config.action_labels, "action_labels"));
  FisherModel model;
  if (config.encoder == Encoder::kFwv) model = read_model(require(config.model, "model"));
  const auto affinity = translate_labels(table, objects, actions, config, &model);
  CommandResult result;
  result.output = output_path(config, config.affinity);
  write_file(result.output, format_affinity(affinity, config.hash()));
  return result;
}

CommandResult cmd_classify(const RunConfig& config) {
  config.validate();
  const auto affinity = read_affinity(require(config.affinity, "affinity"));
  const auto scores = read_score_table(require(config.scores, "scores"));
  check_objects(scores.objects, affinity, config.scores);
  CommandResult result;
  if (scores.videos.empty()) result.warnings.push_back("score file lists no videos");
  const auto predictions = classify_videos(scores.videos, affinity, config);
  result.output = output_path(config);
  write_file(result.output, config.format == "json"
                                ? format_predictions_json(predictions, config.hash())
                                : format_predictions(predictions, config.hash()));
  return result;
}

CommandResult cmd_retrieve(const RunConfig& config) {
  config.validate();
  const auto affinity = read_affinity(require(config.affinity, "affinity"));
  const auto scores = read_score_table(require(config.scores, "scores"));
  check_objects(scores.objects, affinity, config.scores);
  CommandResult result;
  if (scores.videos.empty()) result.warnings.push_back("score file lists no videos");
  const auto rankings = retrieve_videos(scores.videos, affinity, config);
  result.output = output_path(config);
  write_file(result.output, config.format == "json"
                                ? format_retrieval_json(rankings, config.hash())
                                : format_retrieval(rankings, config.hash()));
  return result;
}

CommandResult cmd_localize(const RunConfig& config) {
  config.validate();
  const auto affinity = read_affinity(require(config.affinity, "affinity"));
  const auto tubes = read_tube_file(require(config.tubes, "tubes"));
  check_objects(tubes.objects, affinity, config.tubes);
  CommandResult result;
  if (tubes.tubes.empty()) result.warnings.push_back("tube file lists no proposals");
  const auto rows = localize_videos(tubes, affinity, config);
  result.output = output_path(config);
  write_file(result.output, config.format == "json" ? format_detections_json(rows, config.hash())
                                                    : format_detections(rows, config.hash()));
  return result;
}

namespace {

MetricReport evaluate(const RunConfig& config, const std::string& metric) {
  if (metric == "accuracy") {
    const auto predictions = parse_predictions(
        read_file(require(config.predictions, "predictions")), config.predictions);
    const auto truth = read_ground_truth(require(config.ground_truth, "ground_truth"));
    std::size_t missing = 0;
    std::set<std::string> predicted;
    for (const auto& p : predictions) {
      predicted.insert(p.video_id);
      if (!truth.contains(p.video_id)) ++missing;
    }
    if (missing > 0) {
      throw InputError(std::to_string(missing) + " of " + std::to_string(predictions.size()) +
                       " predicted videos are missing from the ground truth");
    }
    MetricReport report = average_class_accuracy(predictions, truth);
    const std::size_t unpredicted = truth.size() - predicted.size();
    if (unpredicted > 0) {
      report.warnings.push_back(std::to_string(unpredicted) +
                                " ground-truth videos have no prediction");
    }
    return report;
  }
  if (metric == "map") {
    const auto rankings = parse_retrieval(read_file(require(config.predictions, "predictions")),
                                          config.predictions);
    const auto truth = read_ground_truth(require(config.ground_truth, "ground_truth"));
    std::vector<std::pair<std::string, std::vector<std::string>>> ids;
    std::size_t missing = 0;
    for (const auto& [action, hits] : rankings) {
      std::vector<std::string> list;
      for (const auto& h : hits) list.push_back(h.video_id);
      ids.emplace_back(action, std::move(list));
    }
    if (!rankings.empty()) {
      for (const auto& h : rankings.front().second) {
        if (!truth.contains(h.video_id)) ++missing;
      }
    }
    MetricReport report = mean_average_precision(ids, truth);
    if (missing > 0) {
      report.warnings.push_back(std::to_string(missing) +
                                " ranked videos have no ground truth and count as negatives");
    }
    return report;
  }
  // auc
  const auto rows = parse_detections(read_file(require(config.predictions, "predictions")),
                                     config.predictions);
  const auto proposals = read_tube_file(require(config.tubes, "tubes"));
  const auto truths = truth_tubes(read_tube_file(require(config.truth_tubes, "truth_tubes")));
  std::map<std::pair<std::string, std::string>, const TubeRecord*> by_id;
  for (const auto& t : proposals.tubes) by_id[{t.video_id, t.tube_id}] = &t;
  std::vector<Detection> detections;
  std::size_t unknown = 0;
  for (const auto& r : rows) {
    const auto it = by_id.find({r.video_id, r.tube_id});
    if (it == by_id.end()) {
      ++unknown;
      continue;
    }
    detections.push_back({r.video_id, r.action, r.score, it->second->frames});
  }
  if (unknown > 0) {
    throw InputError(std::to_string(unknown) + " of " + std::to_string(rows.size()) +
                     " detections reference tubes missing from " + config.tubes);
  }
  return auc_vs_threshold(detections, truths, config.thresholds);
}

}  // namespace

CommandResult cmd_eval(const RunConfig& config) {
  config.validate();
  const MetricReport report = evaluate(config, config.metric);
  CommandResult result;
  result.warnings = report.warnings;
  result.output = output_path(config);
  write_file(result.output, config.format == "json" ? format_report_json(report, config.hash())
                                                    : format_report(report, config.hash()));
  return result;
}

CommandResult cmd_plot_data(const RunConfig& config) {
  config.validate();
  const MetricReport report = evaluate(config, "auc");
  CommandResult result;
  result.warnings = report.warnings;
  result.output = output_path(config);
  write_file(result.output, format_curve(report, config.hash()));
  return result;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"fit-gmm",  "encode",   "translate", "classify",
                                              "retrieve", "localize", "eval",      "plot-data"};
  return names;
}

CommandResult run_command(std::string_view name, const RunConfig& config) {
  if (name == "fit-gmm") return cmd_fit_gmm(config);
  if (name == "encode") return cmd_encode(config);
  if (name == "translate") return cmd_translate(config);
  if (name == "classify") return cmd_classify(config);
  if (name == "retrieve") return cmd_retrieve(config);
  if (name == "localize") return cmd_localize(config);
  if (name == "eval") return cmd_eval(config);
  if (name == "plot-data") return cmd_plot_data(config);
  throw InputError("unknown command '" + std::string(name) + "'");
}

}  // namespace zsact
