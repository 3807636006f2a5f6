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

// Planted zero-shot dataset: action phrases sit in the same embedding
// clusters as a few designated object words, and each video's object scores
// concentrate on its action's designated objects.

#ifndef ZSACT_TESTS_SYNTHETIC_HPP_
#define ZSACT_TESTS_SYNTHETIC_HPP_

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "zsact/embedding_store.hpp"
#include "zsact/engine.hpp"
#include "zsact/evaluation.hpp"
#include "zsact/formats.hpp"

namespace synthetic {

struct Params {
  std::size_t dim = 32;
  std::size_t objects = 40;
  std::size_t actions = 8;
  std::size_t videos = 200;
  // Per-coordinate noise as a fraction of the mean distance between cluster centres.
  double noise = 0.05;
  double concentrated_mass = 0.8;
  std::size_t tubes_per_video = 4;
  std::uint64_t seed = 2026;
};

struct Dataset {
  zsact::EmbeddingTable table{1};
  std::vector<std::string> object_labels;
  std::vector<std::string> action_labels;
  // Designated objects per action.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<zsact::VideoScores> videos;
  zsact::GroundTruthLabels truth;
  zsact::TubeFile tubes;
  zsact::TubeFile truth_tubes;
};

inline std::string object_name(std::size_t i) { return "object" + std::to_string(i); }

inline Dataset make(const Params& params) {
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  const std::size_t distractors = params.objects / 4;
  const std::size_t centres = params.actions + distractors;
  std::vector<std::vector<double>> centre(centres, std::vector<double>(params.dim));
  for (auto& c : centre)
    for (auto& x : c) x = normal(rng);
  double mean_distance = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < centres; ++a) {
    for (std::size_t b = a + 1; b < centres; ++b) {
      double sq = 0.0;
      for (std::size_t j = 0; j < params.dim; ++j) sq += (centre[a][j] - centre[b][j]) * (centre[a][j] - centre[b][j]);
      mean_distance += std::sqrt(sq);
      ++pairs;
    }
  }
  mean_distance /= static_cast<double>(pairs);
  const double sigma = params.noise * mean_distance;
  auto near = [&](std::size_t c) {
    std::vector<double> v(params.dim);
    for (std::size_t j = 0; j < params.dim; ++j) v[j] = centre[c][j] + sigma * normal(rng);
    return v;
  };

  Dataset d;
  d.table = zsact::EmbeddingTable(params.dim);
  d.groups.resize(params.actions);
  // Group sizes cycle through 3, 4, 5; objects beyond the groups are distractors.
  std::size_t next = 0;
  for (std::size_t a = 0; a < params.actions; ++a) {
    const std::size_t size = 3 + a % 3;
    for (std::size_t s = 0; s < size && next < params.objects; ++s) d.groups[a].push_back(next++);
  }
  for (std::size_t i = 0; i < params.objects; ++i) {
    std::size_t c = params.actions + i % distractors;
    for (std::size_t a = 0; a < params.actions; ++a)
      for (std::size_t o : d.groups[a]) if (o == i) c = a;
    d.table.insert(object_name(i), near(c));
    d.object_labels.push_back(object_name(i));
  }
  for (std::size_t a = 0; a < params.actions; ++a) {
    const std::string w1 = "verb" + std::to_string(a);
    const std::string w2 = "scene" + std::to_string(a);
    d.table.insert(w1, near(a));
    d.table.insert(w2, near(a));
    d.action_labels.push_back(w1 + " " + w2);
  }

  d.tubes.objects = d.object_labels;
  for (std::size_t v = 0; v < params.videos; ++v) {
    const std::size_t a = v % params.actions;
    const auto& group = d.groups[a];
    std::vector<double> p(params.objects);
    double background = 0.0;
    for (auto& x : p) background += (x = uni(rng));
    for (auto& x : p) x *= (1.0 - params.concentrated_mass) / background;
    std::vector<double> share(group.size());
    double total = 0.0;
    for (auto& s : share) total += (s = 0.5 + uni(rng));
    for (std::size_t g = 0; g < group.size(); ++g) p[group[g]] += params.concentrated_mass * share[g] / total;

    char id[16];
    std::snprintf(id, sizeof id, "vid%03zu", v);
    zsact::VideoScores vs;
    vs.id = id;
    vs.scores.values = p;
    d.videos.push_back(vs);
    d.truth[id] = d.action_labels[a];

    // One proposal carries the video's evidence and matches the annotation;
    // the others are displaced with diffuse scores.
    for (std::size_t u = 0; u < params.tubes_per_video; ++u) {
      zsact::TubeRecord rec;
      rec.video_id = id;
      rec.tube_id = "u" + std::to_string(u);
      const std::int64_t start = static_cast<std::int64_t>(5 * u);
      for (std::int64_t f = start; f < start + 12; ++f)
        rec.frames.push_back({f, {20.0 + 30.0 * static_cast<double>(u), 10.0, 40.0, 60.0}});
      if (u == 0) {
        rec.scores = p;
      } else {
        std::vector<double> q(params.objects);
        double s = 0.0;
        for (auto& x : q) s += (x = uni(rng));
        for (auto& x : q) x /= s;
        rec.scores = q;
      }
      d.tubes.tubes.push_back(rec);
    }
    zsact::TubeRecord gt;
    gt.video_id = id;
    gt.tube_id = "gt";
    for (std::int64_t f = 0; f < 12; ++f) gt.frames.push_back({f, {20.0, 10.0, 40.0, 60.0}});
    gt.action = d.action_labels[a];
    d.truth_tubes.tubes.push_back(gt);
  }
  return d;
}

struct Paths {
  std::filesystem::path embeddings, object_labels, action_labels, scores, ground_truth, tubes,
      truth_tubes;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline Paths write(const Dataset& d, const std::filesystem::path& dir) {
  Paths p{dir / "embeddings.txt", dir / "objects.txt", dir / "actions.txt", dir / "scores.tsv",
          dir / "truth.tsv",      dir / "tubes.json",  dir / "truth_tubes.json"};
  std::filesystem::create_directories(dir);
  d.table.save(p.embeddings);
  std::string objects;
  for (const auto& o : d.object_labels) objects += o + "\n";
  write_text(p.object_labels, objects);
  std::string actions;
  for (const auto& a : d.action_labels) actions += a + "\n";
  write_text(p.action_labels, actions);
  write_text(p.scores, zsact::format_score_table({d.object_labels, d.videos}));
  std::string truth;
  for (const auto& [video, action] : d.truth) truth += video + "\t" + action + "\n";
  write_text(p.ground_truth, truth);
  write_text(p.tubes, zsact::format_tube_file(d.tubes));
  write_text(p.truth_tubes, zsact::format_tube_file(d.truth_tubes));
  return p;
}

}  // namespace synthetic

#endif  // ZSACT_TESTS_SYNTHETIC_HPP_
