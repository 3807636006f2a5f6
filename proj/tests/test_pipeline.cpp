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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "synthetic.hpp"
#include "zsact/config.hpp"
#include "zsact/error.hpp"
#include "zsact/pipeline.hpp"
#include "zsact/text_io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("zsact_pipeline_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

// 15 one-word object labels in dim 10 plus 5 two-word actions.
synthetic::Dataset toy() {
  synthetic::Params params;
  params.dim = 10;
  params.objects = 15;
  params.actions = 5;
  params.videos = 20;
  params.seed = 3;
  return synthetic::make(params);
}

zsact::RunConfig inputs(const synthetic::Paths& p) {
  zsact::RunConfig c;
  c.embeddings = p.embeddings.string();
  c.object_labels = p.object_labels.string();
  c.action_labels = p.action_labels.string();
  c.scores = p.scores.string();
  c.ground_truth = p.ground_truth.string();
  c.tubes = p.tubes.string();
  c.truth_tubes = p.truth_tubes.string();
  return c;
}

}  // namespace

TEST_CASE("fit-gmm writes a model with the expected shape and is reproducible") {
  TempDir dir("fit");
  const auto data = toy();
  auto c = inputs(synthetic::write(data, dir.path / "in"));
  c.output = dir / "model.json";
  zsact::cmd_fit_gmm(c);
  const auto model = zsact::read_model(c.output);
  CHECK(model.gmm.components() == 2);
  CHECK(model.gmm.dim() == 5);
  CHECK(model.pca.input_dim() == 10);
  const std::string first = zsact::read_file(c.output);
  c.output = dir / "model2.json";
  zsact::cmd_fit_gmm(c);
  CHECK(zsact::read_file(c.output) == first);
  CHECK(first.find(c.hash()) != std::string::npos);

  c.k = 16;
  CHECK_THROWS_AS(zsact::cmd_fit_gmm(c), zsact::InputError);
}

TEST_CASE("translate matches the module composition") {
  TempDir dir("translate");
  const auto data = toy();
  auto c = inputs(synthetic::write(data, dir.path / "in"));
  c.model = dir / "model.json";
  zsact::cmd_fit_gmm(c);
  c.affinity = dir / "affinity.tsv";
  zsact::cmd_translate(c);
  const auto g = zsact::read_affinity(c.affinity);
  CHECK(g.objects_count() == 15);
  CHECK(g.actions_count() == 5);
  CHECK(g.sparsity() == zsact::Sparsity::kActionTopT);

  const auto model = zsact::read_model(c.model);
  const auto objects = zsact::tokenize_labels(data.object_labels, data.table);
  const auto actions = zsact::tokenize_labels(data.action_labels, data.table);
  const auto so = zsact::encode_all(objects, data.table, c.encoder_config(), &model);
  const auto sa = zsact::encode_all(actions, data.table, c.encoder_config(), &model);
  const auto want = zsact::sparsify_action(zsact::build_affinity(so, sa), 10);
  CHECK(g.values() == want.values());

  // T_z = m is the dense matrix.
  c.t_z = 15;
  c.output = dir / "full.tsv";
  zsact::cmd_translate(c);
  CHECK(zsact::read_affinity(c.output).values() == zsact::build_affinity(so, sa).values());
}

TEST_CASE("translate of one object and one action is their inner product") {
  TempDir dir("one");
  zsact::EmbeddingTable t(3);
  t.insert("ball", std::vector<double>{1, 2, 2});
  t.insert("kick", std::vector<double>{0, 3, 4});
  t.save(dir.path / "emb.txt");
  zsact::write_file(dir / "o.txt", "ball\n");
  zsact::write_file(dir / "a.txt", "kick\n");
  zsact::RunConfig c;
  c.encoder = zsact::Encoder::kAwv;
  c.embeddings = dir / "emb.txt";
  c.object_labels = dir / "o.txt";
  c.action_labels = dir / "a.txt";
  c.output = dir / "g.tsv";
  zsact::cmd_translate(c);
  const auto g = zsact::read_affinity(c.output);
  CHECK(g.at(0, 0) == doctest::Approx((0 + 6 + 8) / (3.0 * 5.0)).epsilon(1e-15));

  zsact::write_file(dir / "a.txt", "kick\nflyingsaucer\n");
  const std::string msg = [&] {
    try {
      zsact::cmd_translate(c);
    } catch (const zsact::InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  }();
  CHECK(msg.find("flyingsaucer") != std::string::npos);
}

TEST_CASE("classify with an identity affinity follows the hot object") {
  TempDir dir("identity");
  zsact::AffinityMatrix g({"o0", "o1", "o2"}, {"a0", "a1", "a2"}, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  zsact::write_file(dir / "g.tsv", zsact::format_affinity(g, "x"));
  zsact::write_file(dir / "s.tsv", "id\to0\to1\to2\nv0\t0\t1\t0\nv1\t0\t0\t1\nv2\t1\t0\t0\n");
  zsact::RunConfig c;
  c.affinity = dir / "g.tsv";
  c.scores = dir / "s.tsv";
  c.output = dir / "p.tsv";
  zsact::cmd_classify(c);
  const auto preds = zsact::parse_predictions(zsact::read_file(c.output), "p");
  REQUIRE(preds.size() == 3);
  CHECK(preds[0].best().name == "a1");
  CHECK(preds[1].best().name == "a2");
  CHECK(preds[2].best().name == "a0");

  zsact::write_file(dir / "empty.tsv", "id\to0\to1\to2\n");
  c.scores = dir / "empty.tsv";
  const auto r = zsact::cmd_classify(c);
  CHECK(r.warnings.size() == 1);
  CHECK(zsact::parse_predictions(zsact::read_file(c.output), "p").empty());

  zsact::write_file(dir / "bad.tsv", "id\to0\to9\to2\nv0\t0\t1\t0\n");
  c.scores = dir / "bad.tsv";
  c.output = dir / "never.tsv";
  CHECK_THROWS_AS(zsact::cmd_classify(c), zsact::InputError);
  CHECK_FALSE(fs::exists(c.output));
}

TEST_CASE("planted dataset: command chain agrees with library calls") {
  TempDir dir("planted");
  const auto data = synthetic::make({});
  auto c = inputs(synthetic::write(data, dir.path / "in"));
  c.model = dir / "model.json";
  c.affinity = dir / "g.tsv";
  zsact::cmd_fit_gmm(c);
  zsact::cmd_translate(c);
  c.output = dir / "pred.tsv";
  zsact::cmd_classify(c);
  c.predictions = c.output;
  c.output = dir / "acc.json";
  c.format = "json";
  zsact::cmd_eval(c);
  const auto report = nlohmann::json::parse(zsact::read_file(c.output));

  const auto labels = zsact::tokenize_labels(data.object_labels, data.table);
  const auto model = zsact::fit_encoder_model(data.table, labels, c);
  const auto g = zsact::translate_labels(data.table, data.object_labels, data.action_labels, c, &model);
  const auto preds = zsact::classify_videos(data.videos, g, c);
  const double acc = zsact::average_class_accuracy(preds, data.truth).value;
  CHECK(report["value"].get<double>() == acc);
  CHECK(acc >= 0.95);
}

TEST_CASE("eval: accuracy, map and auc") {
  TempDir dir("eval");
  zsact::write_file(dir / "truth.tsv", "v1\trun\nv2\tjump\n");
  zsact::write_file(dir / "pred.tsv", "video\trank\taction\tscore\nv1\t1\trun\t0.9\nv2\t1\tjump\t0.8\n");
  zsact::RunConfig c;
  c.ground_truth = dir / "truth.tsv";
  c.predictions = dir / "pred.tsv";
  c.output = dir / "acc.tsv";
  zsact::cmd_eval(c);
  CHECK(zsact::read_file(c.output).find("accuracy\t*\t1\n") != std::string::npos);

  zsact::write_file(dir / "stray.tsv", "video\trank\taction\tscore\nv9\t1\trun\t0.9\nv8\t1\trun\t0.9\n");
  c.predictions = dir / "stray.tsv";
  try {
    zsact::cmd_eval(c);
    FAIL("expected an error");
  } catch (const zsact::InputError& e) {
    CHECK(std::string(e.what()).find("2 of 2") != std::string::npos);
  }

  // One positive ranked second of two.
  zsact::write_file(dir / "ret.tsv", "action\trank\tvideo\tscore\nrun\t1\tv2\t0.9\nrun\t2\tv1\t0.1\n");
  c.metric = "map";
  c.predictions = dir / "ret.tsv";
  c.output = dir / "map.json";
  c.format = "json";
  zsact::cmd_eval(c);
  CHECK(nlohmann::json::parse(zsact::read_file(c.output))["value"] == 0.5);

  // Localisation curve equals the evaluation module on the same inputs.
  const auto data = toy();
  const auto paths = synthetic::write(data, dir.path / "in");
  zsact::RunConfig lc = inputs(paths);
  lc.encoder = zsact::Encoder::kAwv;
  lc.affinity = dir / "g.tsv";
  zsact::cmd_translate(lc);
  lc.output = dir / "det.tsv";
  zsact::cmd_localize(lc);
  lc.predictions = lc.output;
  lc.metric = "auc";
  lc.output = dir / "curve.tsv";
  zsact::cmd_plot_data(lc);

  const auto rows = zsact::parse_detections(zsact::read_file(lc.predictions), "d");
  const auto tubes = zsact::read_tube_file(paths.tubes);
  std::vector<zsact::Detection> dets;
  for (const auto& r : rows) {
    for (const auto& t : tubes.tubes)
      if (t.video_id == r.video_id && t.tube_id == r.tube_id)
        dets.push_back({r.video_id, r.action, r.score, t.frames});
  }
  const auto truths = zsact::truth_tubes(zsact::read_tube_file(paths.truth_tubes));
  const auto want = zsact::auc_vs_threshold(dets, truths, lc.thresholds);
  CHECK(zsact::read_file(lc.output) == zsact::format_curve(want, lc.hash()));
  CHECK(want.curve.front().value > 0.5);
}

TEST_CASE("run_command dispatches every command name") {
  zsact::RunConfig c;
  for (const auto& name : zsact::command_names()) CHECK_THROWS_AS(zsact::run_command(name, c), zsact::InputError);
  CHECK_THROWS_AS(zsact::run_command("nope", c), zsact::InputError);
}
