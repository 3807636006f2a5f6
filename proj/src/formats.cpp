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

#include "zsact/formats.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "zsact/error.hpp"
#include "zsact/text_io.hpp"

namespace zsact {
namespace {

using nlohmann::json;

// Iterates the non-blank, non-comment lines of a text buffer.
class LineReader {
 public:
  LineReader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      const std::size_t end = text_.find('\n', pos_);
      const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
      line = text_.substr(pos_, stop - pos_);
      pos_ = stop == text_.size() ? stop : stop + 1;
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (trim(line).empty() || line.front() == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError(std::string(source_) + ":" + std::to_string(line_no_) + ": " + message);
  }

 private:
  std::string_view text_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::string provenance(std::string_view kind, std::string_view config_hash) {
  return "# zsact " + std::string(kind) + " config=" + std::string(config_hash) + "\n";
}

double field_double(LineReader& reader, std::string_view text) {
  double v = 0.0;
  if (!parse_double(text, v)) reader.fail("bad number '" + std::string(text) + "'");
  return v;
}

std::size_t field_size(LineReader& reader, std::string_view text) {
  std::size_t v = 0;
  if (!parse_size(text, v)) reader.fail("bad count '" + std::string(text) + "'");
  return v;
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
}

// Structured variants of the delimited outputs start with '{'.
bool is_json_document(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

json expect_document(std::string_view text, std::string_view source, std::string_view format) {
  json doc = parse_json(text, source);
  if (!doc.is_object() || doc.value("format", std::string()) != format) {
    throw InputError(std::string(source) + ": expected a '" + std::string(format) + "' document");
  }
  return doc;
}

template <typename F>
auto with_source(std::string_view source, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(source) + ": " + e.what());
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(std::string(source) + ":", 0) == 0) throw;
    throw InputError(std::string(source) + ": " + what);
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto v = rows.at(r).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(v.size()) != cols) {
      throw InputError("matrix row " + std::to_string(r) + " has " + std::to_string(v.size()) +
                       " entries, expected " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), c) = v[static_cast<std::size_t>(c)];
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& values) {
  const auto v = values.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::vector<std::string> read_label_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  LineReader reader(text, path.string());
  std::vector<std::string> labels;
  std::string_view line;
  while (reader.next(line)) labels.emplace_back(trim(line));
  return labels;
}

ScoreTable parse_score_table(std::string_view text, std::string_view source) {
  LineReader reader(text, source);
  std::string_view line;
  if (!reader.next(line)) throw InputError(std::string(source) + ": missing header row");
  const auto header = split_tabs(line);
  if (header.size() < 2) reader.fail("header must list at least one object");
  ScoreTable table;
  for (std::size_t i = 1; i < header.size(); ++i) table.objects.emplace_back(trim(header[i]));
  const std::size_t m = table.objects.size();

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<ObjectScores>> frames;
  while (reader.next(line)) {
    const auto fields = split_tabs(line);
    if (fields.size() != m + 1) {
      reader.fail("expected " + std::to_string(m) + " scores, found " +
                  std::to_string(fields.size() - 1));
    }
    ObjectScores s;
    s.values.reserve(m);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const double v = field_double(reader, fields[i]);
      if (v < 0.0) reader.fail("object scores must be nonnegative");
      s.values.push_back(v);
    }
    std::string id(trim(fields[0]));
    if (id.empty()) reader.fail("empty video id");
    auto [it, inserted] = frames.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.push_back(std::move(s));
  }
  for (const auto& id : order) {
    const auto& f = frames.at(id);
    VideoScores v;
    v.id = id;
    v.scores = f.size() == 1 ? f.front() : average_frame_scores(f);
    table.videos.push_back(std::move(v));
  }
  return table;
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  return parse_score_table(read_file(path), path.string());
}

std::string format_score_table(const ScoreTable& table) {
  std::string out = "id";
  for (const auto& o : table.objects) out += "\t" + o;
  out += "\n";
  for (const auto& v : table.videos) {
    out += v.id;
    for (double x : v.scores.values) out += "\t" + format_double(x);
    out += "\n";
  }
  return out;
}

std::string format_affinity(const AffinityMatrix& affinity, std::string_view config_hash) {
  std::string out = provenance("affinity", config_hash);
  out += "# sparsity=" + std::string(to_string(affinity.sparsity()));
  if (affinity.sparsity() == Sparsity::kActionTopT) out += " t_z=" + std::to_string(affinity.top_t());
  out += "\nobject";
  for (const auto& a : affinity.actions()) out += "\t" + a;
  out += "\n";
  for (std::size_t y = 0; y < affinity.objects_count(); ++y) {
    out += affinity.objects()[y];
    for (std::size_t z = 0; z < affinity.actions_count(); ++z) {
      out += "\t" + format_double(affinity.at(y, z));
    }
    out += "\n";
  }
  return out;
}

AffinityMatrix parse_affinity(std::string_view text, std::string_view source) {
  // The sparsity tag lives in a comment line.
  Sparsity sparsity = Sparsity::kDense;
  std::size_t top_t = 0;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line) && !line.empty() && line.front() == '#') {
      const auto pos = line.find("sparsity=");
      if (pos == std::string::npos) continue;
      for (auto f : split_fields(std::string_view(line).substr(pos))) {
        if (f == "sparsity=action-top-t") sparsity = Sparsity::kActionTopT;
        if (f == "sparsity=video-side-deferred") sparsity = Sparsity::kVideoSideDeferred;
        if (f.rfind("t_z=", 0) == 0) parse_size(f.substr(4), top_t);
      }
    }
  }
  LineReader reader(text, source);
  std::string_view line;
  if (!reader.next(line)) throw InputError(std::string(source) + ": missing header row");
  const auto header = split_tabs(line);
  if (header.size() < 2) reader.fail("header must list at least one action");
  std::vector<std::string> actions;
  for (std::size_t i = 1; i < header.size(); ++i) actions.emplace_back(trim(header[i]));
  std::vector<std::string> objects;
  std::vector<double> values;
  while (reader.next(line)) {
    const auto fields = split_tabs(line);
    if (fields.size() != actions.size() + 1) {
      reader.fail("expected " + std::to_string(actions.size()) + " affinities, found " +
                  std::to_string(fields.size() - 1));
    }
    objects.emplace_back(trim(fields[0]));
    for (std::size_t i = 1; i < fields.size(); ++i) values.push_back(field_double(reader, fields[i]));
  }
  if (objects.empty()) throw InputError(std::string(source) + ": affinity has no object rows");
  return AffinityMatrix(std::move(objects), std::move(actions), std::move(values), sparsity, top_t);
}

AffinityMatrix read_affinity(const std::filesystem::path& path) {
  return parse_affinity(read_file(path), path.string());
}

json gmm_to_json(const GmmModel& model) {
  return json{{"k", model.components()},
              {"dim", model.dim()},
              {"weights", std::vector<double>(model.weights.begin(), model.weights.end())},
              {"means", matrix_to_json(model.means)},
              {"stddevs", matrix_to_json(model.stddevs)}};
}

GmmModel gmm_from_json(const json& doc) {
  const auto k = doc.at("k").get<std::size_t>();
  const auto dim = static_cast<Eigen::Index>(doc.at("dim").get<std::size_t>());
  GmmModel model;
  model.weights = vector_from_json(doc.at("weights"));
  model.means = matrix_from_json(doc.at("means"), dim);
  model.stddevs = matrix_from_json(doc.at("stddevs"), dim);
  if (model.components() != k) throw InputError("mixture declares k=" + std::to_string(k) +
                                                " but stores " +
                                                std::to_string(model.components()) + " weights");
  model.validate();
  return model;
}

json pca_to_json(const PcaTransform& pca) {
  return json{{"input_dim", pca.input_dim()},
              {"output_dim", pca.output_dim()},
              {"mean", std::vector<double>(pca.mean.begin(), pca.mean.end())},
              {"eigenvalues", std::vector<double>(pca.eigenvalues.begin(), pca.eigenvalues.end())},
              {"projection", matrix_to_json(pca.projection)}};
}

PcaTransform pca_from_json(const json& doc) {
  const auto in = static_cast<Eigen::Index>(doc.at("input_dim").get<std::size_t>());
  const auto out = doc.at("output_dim").get<std::size_t>();
  PcaTransform pca;
  pca.mean = vector_from_json(doc.at("mean"));
  pca.eigenvalues = vector_from_json(doc.at("eigenvalues"));
  pca.projection = matrix_from_json(doc.at("projection"), in);
  if (pca.output_dim() != out) throw InputError("PCA output dimension mismatch");
  pca.validate();
  return pca;
}

std::string format_model(const FisherModel& model, std::string_view config_hash) {
  const json doc{{"format", "zsact-fisher-model"},
                 {"config_hash", config_hash},
                 {"pca", pca_to_json(model.pca)},
                 {"gmm", gmm_to_json(model.gmm)}};
  return doc.dump(1) + "\n";
}

FisherModel parse_model(std::string_view text, std::string_view source) {
  return with_source(source, [&] {
    const json doc = parse_json(text, source);
    FisherModel model;
    model.pca = pca_from_json(doc.at("pca"));
    model.gmm = gmm_from_json(doc.at("gmm"));
    if (model.gmm.dim() != model.pca.output_dim()) {
      throw InputError("mixture dimension does not match PCA output dimension");
    }
    return model;
  });
}

FisherModel read_model(const std::filesystem::path& path) {
  return parse_model(read_file(path), path.string());
}

std::string format_encoded_labels(const EncodedLabels& labels, std::string_view config_hash) {
  json rows = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto r = labels.rows.row(static_cast<Eigen::Index>(i));
    rows.push_back(json{{"label", labels.names[i]}, {"values", std::vector<double>(r.begin(), r.end())}});
  }
  const json doc{{"format", "zsact-encoded-labels"},
                 {"encoder", to_string(labels.encoder)},
                 {"count", labels.size()},
                 {"dim", labels.dim()},
                 {"config_hash", config_hash},
                 {"rows", rows}};
  return doc.dump(1) + "\n";
}

EncodedLabels parse_encoded_labels(std::string_view text, std::string_view source) {
  return with_source(source, [&] {
    const json doc = parse_json(text, source);
    EncodedLabels out;
    out.encoder = parse_encoder(doc.at("encoder").get<std::string>());
    const auto dim = static_cast<Eigen::Index>(doc.at("dim").get<std::size_t>());
    const auto& rows = doc.at("rows");
    out.rows.resize(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.names.push_back(rows[i].at("label").get<std::string>());
      const auto v = rows[i].at("values").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(v.size()) != dim) throw InputError("row width mismatch");
      for (Eigen::Index c = 0; c < dim; ++c) {
        out.rows(static_cast<Eigen::Index>(i), c) = v[static_cast<std::size_t>(c)];
      }
    }
    return out;
  });
}

TubeFile parse_tube_file(std::string_view text, std::string_view source) {
  return with_source(source, [&] {
    const json doc = parse_json(text, source);
    TubeFile file;
    if (doc.contains("objects")) file.objects = doc.at("objects").get<std::vector<std::string>>();
    for (const auto& video : doc.at("videos")) {
      const auto video_id = video.at("video").get<std::string>();
      for (const auto& tube : video.at("tubes")) {
        TubeRecord rec;
        rec.video_id = video_id;
        rec.tube_id = tube.at("id").get<std::string>();
        const std::string where = "tube '" + rec.tube_id + "' of video '" + video_id + "': ";
        for (const auto& f : tube.at("frames")) {
          if (!f.is_array() || f.size() != 5) {
            throw InputError(where + "frames must be [frame, x, y, width, height]");
          }
          rec.frames.push_back({f[0].get<std::int64_t>(),
                                {f[1].get<double>(), f[2].get<double>(), f[3].get<double>(),
                                 f[4].get<double>()}});
        }
        try {
          validate_tube_frames(rec.frames);
        } catch (const InputError& e) {
          throw InputError(where + e.what());
        }
        if (tube.contains("span")) {
          const auto span = tube.at("span").get<std::vector<std::int64_t>>();
          if (span.size() != 2 || span[0] != rec.frames.front().frame ||
              span[1] != rec.frames.back().frame) {
            throw InputError(where + "span does not match the first and last frames");
          }
        }
        if (tube.contains("scores")) {
          rec.scores = tube.at("scores").get<std::vector<double>>();
          if (rec.scores->size() != file.objects.size()) {
            throw InputError(where + "has " + std::to_string(rec.scores->size()) +
                             " scores for " + std::to_string(file.objects.size()) + " objects");
          }
          for (double s : *rec.scores) {
            if (!std::isfinite(s) || s < 0.0) {
              throw InputError(where + "scores must be finite and nonnegative");
            }
          }
        }
        if (tube.contains("action")) rec.action = tube.at("action").get<std::string>();
        file.tubes.push_back(std::move(rec));
      }
    }
    return file;
  });
}

TubeFile read_tube_file(const std::filesystem::path& path) {
  return parse_tube_file(read_file(path), path.string());
}

std::string format_tube_file(const TubeFile& file) {
  json videos = json::array();
  std::map<std::string, std::size_t> index;
  for (const auto& t : file.tubes) {
    auto [it, inserted] = index.try_emplace(t.video_id, videos.size());
    if (inserted) videos.push_back(json{{"video", t.video_id}, {"tubes", json::array()}});
    json frames = json::array();
    for (const auto& f : t.frames) {
      frames.push_back(json::array({f.frame, f.box.x, f.box.y, f.box.width, f.box.height}));
    }
    json tube{{"id", t.tube_id},
              {"span", json::array({t.frames.front().frame, t.frames.back().frame})},
              {"frames", frames}};
    if (t.scores) tube["scores"] = *t.scores;
    if (t.action) tube["action"] = *t.action;
    videos[it->second]["tubes"].push_back(std::move(tube));
  }
  json doc{{"videos", videos}};
  if (!file.objects.empty()) doc["objects"] = file.objects;
  return doc.dump(1) + "\n";
}

std::vector<std::vector<TubeProposal>> proposals_by_video(const TubeFile& file) {
  std::vector<std::vector<TubeProposal>> out;
  std::map<std::string, std::size_t> index;
  for (const auto& t : file.tubes) {
    if (!t.scores) {
      throw InputError("tube '" + t.tube_id + "' of video '" + t.video_id + "' has no scores");
    }
    auto [it, inserted] = index.try_emplace(t.video_id, out.size());
    if (inserted) out.emplace_back();
    TubeProposal p;
    p.video_id = t.video_id;
    p.tube_id = t.tube_id;
    p.frames = t.frames;
    p.scores.values = *t.scores;
    p.scores.source = ScoreSource::kTube;
    out[it->second].push_back(std::move(p));
  }
  return out;
}

std::vector<GroundTruthTube> truth_tubes(const TubeFile& file) {
  std::vector<GroundTruthTube> out;
  for (const auto& t : file.tubes) {
    if (!t.action) {
      throw InputError("ground-truth tube '" + t.tube_id + "' of video '" + t.video_id +
                       "' has no action");
    }
    out.push_back({t.video_id, *t.action, t.frames});
  }
  return out;
}

GroundTruthLabels parse_ground_truth(std::string_view text, std::string_view source) {
  LineReader reader(text, source);
  GroundTruthLabels truth;
  std::string_view line;
  while (reader.next(line)) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2) reader.fail("expected 'video<TAB>action'");
    std::string id(trim(fields[0]));
    std::string action(trim(fields[1]));
    if (id.empty() || action.empty()) reader.fail("empty video id or action");
    const auto [it, inserted] = truth.emplace(id, action);
    if (!inserted && it->second != action) reader.fail("conflicting labels for video '" + id + "'");
  }
  return truth;
}

GroundTruthLabels read_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(read_file(path), path.string());
}

std::string format_predictions(const std::vector<Prediction>& predictions,
                               std::string_view config_hash) {
  std::string out = provenance("predictions", config_hash);
  out += "video\trank\taction\tscore\n";
  for (const auto& p : predictions) {
    for (std::size_t r = 0; r < p.ranking.size(); ++r) {
      out += p.video_id + "\t" + std::to_string(r + 1) + "\t" + p.ranking[r].name + "\t" +
             format_double(p.ranking[r].score) + "\n";
    }
  }
  return out;
}

std::string format_predictions_json(const std::vector<Prediction>& predictions,
                                    std::string_view config_hash) {
  json rows = json::array();
  for (const auto& p : predictions) {
    json ranking = json::array();
    for (const auto& r : p.ranking) ranking.push_back(json{{"action", r.name}, {"score", r.score}});
    rows.push_back(json{{"video", p.video_id}, {"ranking", ranking}});
  }
  return json{{"format", "zsact-predictions"}, {"config_hash", config_hash}, {"predictions", rows}}
             .dump(1) +
         "\n";
}

std::vector<Prediction> parse_predictions(std::string_view text, std::string_view source) {
  if (is_json_document(text)) {
    return with_source(source, [&] {
      const json doc = expect_document(text, source, "zsact-predictions");
      std::vector<Prediction> out;
      for (const auto& row : doc.at("predictions")) {
        Prediction p;
        p.video_id = row.at("video").get<std::string>();
        for (const auto& r : row.at("ranking")) {
          p.ranking.push_back({p.ranking.size(), r.at("action").get<std::string>(),
                               r.at("score").get<double>()});
        }
        if (p.ranking.empty()) throw InputError("video '" + p.video_id + "' has an empty ranking");
        out.push_back(std::move(p));
      }
      return out;
    });
  }
  LineReader reader(text, source);
  std::vector<Prediction> out;
  std::map<std::string, std::size_t> index;
  std::string_view line;
  bool header = true;
  while (reader.next(line)) {
    const auto fields = split_tabs(line);
    if (header) {
      header = false;
      if (fields.size() == 4 && fields[0] == "video") continue;
    }
    if (fields.size() != 4) reader.fail("expected 'video<TAB>rank<TAB>action<TAB>score'");
    std::string id(trim(fields[0]));
    const std::size_t rank = field_size(reader, fields[1]);
    auto [it, inserted] = index.try_emplace(id, out.size());
    if (inserted) {
      out.emplace_back();
      out.back().video_id = id;
    }
    auto& p = out[it->second];
    if (rank != p.ranking.size() + 1) reader.fail("ranks for video '" + id + "' must be 1, 2, ...");
    p.ranking.push_back({p.ranking.size(), std::string(trim(fields[2])), field_double(reader, fields[3])});
  }
  return out;
}

std::string format_retrieval(const std::vector<RetrievalRanking>& rankings,
                             std::string_view config_hash) {
  std::string out = provenance("retrieval", config_hash);
  out += "action\trank\tvideo\tscore\n";
  for (const auto& [action, hits] : rankings) {
    for (std::size_t r = 0; r < hits.size(); ++r) {
      out += action + "\t" + std::to_string(r + 1) + "\t" + hits[r].video_id + "\t" +
             format_double(hits[r].score) + "\n";
    }
  }
  return out;
}

std::string format_retrieval_json(const std::vector<RetrievalRanking>& rankings,
                                  std::string_view config_hash) {
  json rows = json::array();
  for (const auto& [action, hits] : rankings) {
    json list = json::array();
    for (const auto& h : hits) list.push_back(json{{"video", h.video_id}, {"score", h.score}});
    rows.push_back(json{{"action", action}, {"ranking", list}});
  }
  return json{{"format", "zsact-retrieval"}, {"config_hash", config_hash}, {"rankings", rows}}
             .dump(1) +
         "\n";
}

std::vector<RetrievalRanking> parse_retrieval(std::string_view text, std::string_view source) {
  if (is_json_document(text)) {
    return with_source(source, [&] {
      const json doc = expect_document(text, source, "zsact-retrieval");
      std::vector<RetrievalRanking> out;
      for (const auto& row : doc.at("rankings")) {
        RetrievalRanking r;
        r.first = row.at("action").get<std::string>();
        for (const auto& h : row.at("ranking")) {
          r.second.push_back({h.at("video").get<std::string>(), h.at("score").get<double>()});
        }
        out.push_back(std::move(r));
      }
      return out;
    });
  }
  LineReader reader(text, source);
  std::vector<RetrievalRanking> out;
  std::map<std::string, std::size_t> index;
  std::string_view line;
  bool header = true;
  while (reader.next(line)) {
    const auto fields = split_tabs(line);
    if (header) {
      header = false;
      if (fields.size() == 4 && fields[0] == "action") continue;
    }
    if (fields.size() != 4) reader.fail("expected 'action<TAB>rank<TAB>video<TAB>score'");
    std::string action(trim(fields[0]));
    const std::size_t rank = field_size(reader, fields[1]);
    auto [it, inserted] = index.try_emplace(action, out.size());
    if (inserted) out.emplace_back(action, std::vector<RetrievalHit>{});
    auto& hits = out[it->second].second;
    if (rank != hits.size() + 1) reader.fail("ranks for action '" + action + "' must be 1, 2, ...");
    hits.push_back({std::string(trim(fields[2])), field_double(reader, fields[3])});
  }
  return out;
}

std::string format_detections(const std::vector<DetectionRow>& rows,
                              std::string_view config_hash) {
  std::string out = provenance("detections", config_hash);
  out += "video\trank\taction\tscore\ttube\n";
  for (const auto& r : rows) {
    out += r.video_id + "\t" + std::to_string(r.rank) + "\t" + r.action + "\t" +
           format_double(r.score) + "\t" + r.tube_id + "\n";
  }
  return out;
}

std::string format_detections_json(const std::vector<DetectionRow>& rows,
                                   std::string_view config_hash) {
  json list = json::array();
  for (const auto& r : rows) {
    list.push_back(json{{"video", r.video_id},
                        {"rank", r.rank},
                        {"action", r.action},
                        {"score", r.score},
                        {"tube", r.tube_id}});
  }
  return json{{"format", "zsact-detections"}, {"config_hash", config_hash}, {"detections", list}}
             .dump(1) +
         "\n";
}

std::vector<DetectionRow> parse_detections(std::string_view text, std::string_view source) {
  if (is_json_document(text)) {
    return with_source(source, [&] {
      const json doc = expect_document(text, source, "zsact-detections");
      std::vector<DetectionRow> out;
      for (const auto& r : doc.at("detections")) {
        out.push_back({r.at("video").get<std::string>(), r.at("rank").get<std::size_t>(),
                       r.at("action").get<std::string>(), r.at("score").get<double>(),
                       r.at("tube").get<std::string>()});
      }
      return out;
    });
  }
  LineReader reader(text, source);
  std::vector<DetectionRow> out;
  std::string_view line;
  bool header = true;
  while (reader.next(line)) {
    const auto fields = split_tabs(line);
    if (header) {
      header = false;
      if (fields.size() == 5 && fields[0] == "video") continue;
    }
    if (fields.size() != 5) reader.fail("expected 'video<TAB>rank<TAB>action<TAB>score<TAB>tube'");
    out.push_back({std::string(trim(fields[0])), field_size(reader, fields[1]),
                   std::string(trim(fields[2])), field_double(reader, fields[3]),
                   std::string(trim(fields[4]))});
  }
  return out;
}

std::string format_report(const MetricReport& report, std::string_view config_hash) {
  std::string out = provenance("report", config_hash);
  for (const auto& w : report.warnings) out += "# warning: " + w + "\n";
  out += "metric\tname\tvalue\n";
  out += report.metric + "\t*\t" + format_double(report.value) + "\n";
  for (const auto& [name, v] : report.per_class) {
    out += report.metric + "\t" + name + "\t" + format_double(v) + "\n";
  }
  for (const auto& p : report.curve) {
    out += report.metric + "\t@" + format_double(p.threshold) + "\t" + format_double(p.value) + "\n";
  }
  return out;
}

std::string format_report_json(const MetricReport& report, std::string_view config_hash) {
  json per_class = json::object();
  for (const auto& [name, v] : report.per_class) per_class[name] = v;
  json curve = json::array();
  for (const auto& p : report.curve) curve.push_back(json{{"threshold", p.threshold}, {"value", p.value}});
  return json{{"format", "zsact-report"},
              {"config_hash", config_hash},
              {"metric", report.metric},
              {"value", report.value},
              {"per_class", per_class},
              {"curve", curve},
              {"warnings", report.warnings}}
             .dump(1) +
         "\n";
}

std::string format_curve(const MetricReport& report, std::string_view config_hash) {
  std::string out = provenance("curve " + report.metric, config_hash);
  out += "threshold\tvalue\n";
  for (const auto& p : report.curve) {
    out += format_double(p.threshold) + "\t" + format_double(p.value) + "\n";
  }
  return out;
}

}  // namespace zsact
