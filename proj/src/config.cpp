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

#include "zsact/config.hpp"

#include <cmath>

#include "zsact/error.hpp"
#include "zsact/text_io.hpp"

namespace zsact {
namespace {

using nlohmann::json;

const char* const kPathKeys[] = {"embeddings", "object_labels", "action_labels", "labels",
                                 "scores",     "tubes",         "ground_truth",  "truth_tubes",
                                 "predictions", "model",        "affinity",      "output"};

std::string* path_field(RunConfig& c, std::string_view key) {
  if (key == "embeddings") return &c.embeddings;
  if (key == "object_labels") return &c.object_labels;
  if (key == "action_labels") return &c.action_labels;
  if (key == "labels") return &c.labels;
  if (key == "scores") return &c.scores;
  if (key == "tubes") return &c.tubes;
  if (key == "ground_truth") return &c.ground_truth;
  if (key == "truth_tubes") return &c.truth_tubes;
  if (key == "predictions") return &c.predictions;
  if (key == "model") return &c.model;
  if (key == "affinity") return &c.affinity;
  if (key == "output") return &c.output;
  return nullptr;
}

bool parse_bool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw InputError("option '" + std::string(key) + "' expects a boolean, got '" +
                   std::string(text) + "'");
}

std::size_t parse_count(std::string_view text, std::string_view key) {
  std::size_t v = 0;
  if (!parse_size(text, v)) {
    throw InputError("option '" + std::string(key) + "' expects a nonnegative integer, got '" +
                     std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view text, std::string_view key) {
  double v = 0.0;
  if (!parse_double(text, v)) {
    throw InputError("option '" + std::string(key) + "' expects a number, got '" +
                     std::string(text) + "'");
  }
  return v;
}

// Leaf value as the text set() understands.
std::string json_scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_double(v.get<double>());
  throw InputError("unsupported config value " + v.dump());
}

json parameters(const RunConfig& c) {
  return json{{"encoder", to_string(c.encoder)},
              {"k", c.k},
              {"pca_factor", c.pca_factor},
              {"t_z", c.t_z},
              {"t_v", c.t_v},
              {"alpha", c.alpha},
              {"normalize_labels", c.normalize_labels},
              {"fwv_blocks", to_string(c.fwv_blocks)},
              {"seed", c.seed},
              {"action_sparsity", c.action_sparsity},
              {"power_normalize", c.power_normalize},
              {"normalize_tubes", c.normalize_tubes},
              {"sparsify_before_normalize", c.sparsify_before_normalize},
              {"nms_overlap", c.nms_overlap},
              {"detection_limit", c.detection_limit},
              {"metric", c.metric},
              {"thresholds", c.thresholds},
              {"action", c.action},
              {"format", c.format}};
}

}  // namespace

void RunConfig::validate() const {
  if (k < 1) throw InputError("k must be at least 1");
  if (pca_factor < 1) throw InputError("pca_factor must be at least 1");
  if (t_z < 1) throw InputError("t_z must be at least 1");
  if (t_v < 1) throw InputError("t_v must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");
  if (!(nms_overlap >= 0.0 && nms_overlap <= 1.0)) throw InputError("nms_overlap must lie in [0, 1]");
  if (detection_limit < 1) throw InputError("detection_limit must be at least 1");
  if (metric != "accuracy" && metric != "map" && metric != "auc") {
    throw InputError("metric must be accuracy, map or auc");
  }
  if (format != "tsv" && format != "json") throw InputError("format must be tsv or json");
  if (thresholds.empty()) throw InputError("thresholds must not be empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
      throw InputError("thresholds must lie in [0, 1]");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) throw InputError("thresholds must be sorted");
  }
}

EncoderConfig RunConfig::encoder_config() const {
  return EncoderConfig{encoder, fwv_blocks, normalize_labels, alpha};
}

ScorePipeline RunConfig::score_pipeline() const {
  return ScorePipeline{power_normalize, alpha, t_v, sparsify_before_normalize};
}

ScorePipeline RunConfig::tube_pipeline() const {
  ScorePipeline p = score_pipeline();
  p.power_normalize = power_normalize && normalize_tubes;
  return p;
}

std::string RunConfig::hash() const { return fnv1a_hex(parameters(*this).dump()); }

json RunConfig::to_json() const {
  json doc = parameters(*this);
  RunConfig copy = *this;
  for (const char* key : kPathKeys) doc[key] = *path_field(copy, key);
  return doc;
}

RunConfig RunConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "thresholds") {
      if (!value.is_array()) throw InputError("thresholds must be an array");
      c.thresholds.clear();
      for (const auto& t : value) {
        if (!t.is_number()) throw InputError("thresholds must be numbers");
        c.thresholds.push_back(t.get<double>());
      }
      continue;
    }
    c.set(key, json_scalar_text(value));
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    return from_json(doc);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void RunConfig::set(std::string_view key, std::string_view value) {
  if (auto* p = path_field(*this, key)) {
    *p = std::string(value);
  } else if (key == "encoder") {
    encoder = parse_encoder(value);
  } else if (key == "k") {
    k = parse_count(value, key);
  } else if (key == "pca_factor") {
    pca_factor = parse_count(value, key);
  } else if (key == "t_z") {
    t_z = parse_count(value, key);
  } else if (key == "t_v") {
    t_v = parse_count(value, key);
  } else if (key == "alpha") {
    alpha = parse_real(value, key);
  } else if (key == "normalize_labels") {
    normalize_labels = parse_bool(value, key);
  } else if (key == "fwv_blocks") {
    fwv_blocks = parse_fisher_blocks(value);
  } else if (key == "seed") {
    seed = parse_count(value, key);
  } else if (key == "action_sparsity") {
    action_sparsity = parse_bool(value, key);
  } else if (key == "power_normalize") {
    power_normalize = parse_bool(value, key);
  } else if (key == "normalize_tubes") {
    normalize_tubes = parse_bool(value, key);
  } else if (key == "sparsify_before_normalize") {
    sparsify_before_normalize = parse_bool(value, key);
  } else if (key == "nms_overlap") {
    nms_overlap = parse_real(value, key);
  } else if (key == "detection_limit") {
    detection_limit = parse_count(value, key);
  } else if (key == "metric") {
    metric = std::string(value);
  } else if (key == "thresholds") {
    thresholds.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      thresholds.push_back(parse_real(rest.substr(0, comma), key));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else if (key == "action") {
    action = std::string(value);
  } else if (key == "format") {
    format = std::string(value);
  } else {
    throw InputError("unknown config option '" + std::string(key) + "'");
  }
}

std::string RunConfig::get(std::string_view key) const {
  const json doc = to_json();
  const auto it = doc.find(std::string(key));
  if (it == doc.end()) throw InputError("unknown config option '" + std::string(key) + "'");
  if (it->is_array()) {
    std::string out;
    for (const auto& t : *it) {
      if (!out.empty()) out += ",";
      out += format_double(t.get<double>());
    }
    return out;
  }
  return json_scalar_text(*it);
}

}  // namespace zsact
