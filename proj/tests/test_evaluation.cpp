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

#include <algorithm>
#include <map>
#include <random>

#include "oracles.hpp"
#include "zsact/error.hpp"
#include "zsact/evaluation.hpp"

using zsact::GroundTruthTube;
using zsact::Detection;
using zsact::TubeFrame;

namespace {

zsact::Prediction predicted(std::string video, std::string action) {
  zsact::Prediction p;
  p.video_id = std::move(video);
  p.ranking.push_back({0, std::move(action), 1.0});
  return p;
}

std::vector<TubeFrame> span_frames(std::int64_t start, std::int64_t length, double x = 0) {
  std::vector<TubeFrame> f;
  for (std::int64_t t = start; t < start + length; ++t) f.push_back({t, {x, 0, 10, 10}});
  return f;
}

std::vector<oracle::Frame> to_oracle(const std::vector<TubeFrame>& frames) {
  std::vector<oracle::Frame> out;
  for (const auto& f : frames) out.push_back({f.frame, f.box.x, f.box.y, f.box.width, f.box.height});
  return out;
}

// ROC integration by explicit step function over false-positive counts.
double auc_oracle(std::vector<Detection> dets, const std::vector<GroundTruthTube>& truths,
                  double theta) {
  std::stable_sort(dets.begin(), dets.end(),
                   [](const Detection& a, const Detection& b) { return a.score > b.score; });
  if (dets.empty() || truths.empty()) return 0.0;
  std::vector<bool> used(truths.size(), false);
  std::vector<int> hits_before_miss;
  int hits = 0;
  for (const auto& d : dets) {
    int pick = -1;
    long double best = -1;
    for (std::size_t t = 0; t < truths.size(); ++t) {
      if (used[t] || truths[t].video_id != d.video_id || truths[t].action != d.action) continue;
      const auto o = oracle::tube_overlap(to_oracle(d.frames), to_oracle(truths[t].frames));
      if (o >= theta && o > best) {
        best = o;
        pick = static_cast<int>(t);
      }
    }
    if (pick >= 0) {
      used[pick] = true;
      ++hits;
    } else {
      hits_before_miss.push_back(hits);
    }
  }
  // Segment j < misses spans [j/n, (j+1)/n); the last spans [misses/n, 1].
  const double n = static_cast<double>(dets.size());
  const double p = static_cast<double>(truths.size());
  double area = 0;
  for (int h : hits_before_miss) area += (1.0 / n) * (h / p);
  area += (1.0 - hits_before_miss.size() / n) * (hits / p);
  return area;
}

}  // namespace

TEST_CASE("average_class_accuracy") {
  const zsact::GroundTruthLabels truth = {{"a", "x"}, {"b", "x"}, {"c", "x"}, {"d", "y"}};
  const std::vector<zsact::Prediction> all = {predicted("a", "x"), predicted("b", "x"),
                                              predicted("c", "x"), predicted("d", "y")};
  CHECK(zsact::average_class_accuracy(all, truth).value == 1.0);

  const std::vector<zsact::Prediction> half = {predicted("a", "x"), predicted("b", "x"),
                                               predicted("c", "x"), predicted("d", "x")};
  const auto r = zsact::average_class_accuracy(half, truth);
  CHECK(r.value == 0.5);
  REQUIRE(r.per_class.size() == 2);
  CHECK(r.per_class[0] == std::pair<std::string, double>{"x", 1.0});
  CHECK(r.per_class[1] == std::pair<std::string, double>{"y", 0.0});

  const std::vector<zsact::Prediction> stray = {predicted("zz", "x")};
  CHECK_THROWS_AS(zsact::average_class_accuracy(stray, truth), zsact::InputError);

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> cls(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    zsact::GroundTruthLabels gt;
    std::vector<zsact::Prediction> preds;
    int correct[3] = {};
    int total[3] = {};
    for (int v = 0; v < 30; ++v) {
      const int t = cls(rng);
      const int p = cls(rng);
      const std::string id = "v" + std::to_string(v);
      gt[id] = "c" + std::to_string(t);
      preds.push_back(predicted(id, "c" + std::to_string(p)));
      ++total[t];
      correct[t] += t == p;
    }
    double sum = 0;
    int classes = 0;
    for (int c = 0; c < 3; ++c) {
      if (total[c] == 0) continue;
      sum += static_cast<double>(correct[c]) / total[c];
      ++classes;
    }
    CHECK(zsact::average_class_accuracy(preds, gt).value == doctest::Approx(sum / classes).epsilon(1e-15));
  }

  // Equal support: class-averaged equals pooled accuracy.
  zsact::GroundTruthLabels eq;
  std::vector<zsact::Prediction> ep;
  int right = 0;
  for (int v = 0; v < 12; ++v) {
    const std::string id = "e" + std::to_string(v);
    eq[id] = "c" + std::to_string(v % 3);
    const bool ok = v % 5 != 0;
    right += ok;
    ep.push_back(predicted(id, ok ? eq[id] : "other"));
  }
  CHECK(zsact::average_class_accuracy(ep, eq).value == doctest::Approx(right / 12.0).epsilon(1e-15));
}

TEST_CASE("average_precision") {
  const std::vector<std::string> ab = {"a", "b"};
  CHECK(zsact::average_precision(ab, {"a"}).value == 1.0);
  CHECK(zsact::average_precision(ab, {"b"}).value == 0.5);
  const auto none = zsact::average_precision(ab, {});
  CHECK(none.value == 0.0);
  CHECK(none.no_positives);
  CHECK_THROWS_AS(zsact::average_precision({}, {"a"}), zsact::InputError);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> ranked;
    for (int i = 0; i < 10; ++i) ranked.push_back("i" + std::to_string(i));
    std::shuffle(ranked.begin(), ranked.end(), rng);
    std::set<std::string> pos = {ranked[trial % 10], ranked[(trial * 3 + 1) % 10], "i7"};
    const double got = zsact::average_precision(ranked, pos).value;
    CHECK(std::abs(got - oracle::average_precision(ranked, pos)) < 1e-15L);
  }
}

TEST_CASE("mean_average_precision") {
  const zsact::GroundTruthLabels truth = {{"a", "x"}, {"b", "y"}};
  const std::vector<std::pair<std::string, std::vector<std::string>>> rankings = {
      {"x", {"a", "b"}}, {"y", {"a", "b"}}, {"z", {"a", "b"}}};
  const auto r = zsact::mean_average_precision(rankings, truth);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.per_class.size() == 3);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("tube_overlap") {
  const auto a = span_frames(0, 10);
  CHECK(zsact::tube_overlap(a, a) == 1.0);
  CHECK(zsact::tube_overlap(a, span_frames(20, 10)) == 0.0);
  CHECK(std::abs(zsact::tube_overlap(span_frames(0, 10), span_frames(5, 10)) - 1.0 / 3.0) < 1e-12);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> start(0, 10);
  std::uniform_int_distribution<int> len(1, 10);
  std::uniform_real_distribution<double> shift(0, 15);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = span_frames(start(rng), len(rng), shift(rng));
    auto y = span_frames(start(rng), len(rng), shift(rng));
    // Drop a frame to create gaps.
    if (x.size() > 2) x.erase(x.begin() + 1);
    const double xy = zsact::tube_overlap(x, y);
    CHECK(xy == zsact::tube_overlap(y, x));
    CHECK(std::abs(xy - oracle::tube_overlap(to_oracle(x), to_oracle(y))) < 1e-12L);
    CHECK(xy >= 0.0);
    CHECK(xy <= 1.0);
  }
  CHECK_THROWS_AS(zsact::tube_overlap({}, a), zsact::InputError);
  std::vector<TubeFrame> bad = {{0, {0, 0, 0, 5}}};
  CHECK_THROWS_AS(zsact::tube_overlap(bad, a), zsact::InputError);
  std::vector<TubeFrame> unordered = {{3, {0, 0, 1, 1}}, {1, {0, 0, 1, 1}}};
  CHECK_THROWS_AS(zsact::tube_overlap(unordered, a), zsact::InputError);
}

TEST_CASE("auc_vs_threshold hand cases") {
  const std::vector<double> thetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  std::vector<GroundTruthTube> truths;
  std::vector<Detection> perfect;
  for (int v = 0; v < 4; ++v) {
    truths.push_back({"v" + std::to_string(v), "a", span_frames(0, 8)});
    perfect.push_back({"v" + std::to_string(v), "a", 1.0 - 0.1 * v, span_frames(0, 8)});
  }
  const auto full = zsact::auc_vs_threshold(perfect, truths, thetas);
  REQUIRE(full.curve.size() == 6);
  for (const auto& pt : full.curve) CHECK(pt.value == 1.0);

  std::vector<Detection> miss;
  for (int v = 0; v < 4; ++v) miss.push_back({"v" + std::to_string(v), "a", 0.5, span_frames(50, 8)});
  for (const auto& pt : zsact::auc_vs_threshold(miss, truths, thetas).curve) CHECK(pt.value == 0.0);

  CHECK_THROWS_AS(zsact::auc_vs_threshold(perfect, truths, {}), zsact::InputError);
  const std::vector<double> unsorted = {0.5, 0.1};
  CHECK_THROWS_AS(zsact::auc_vs_threshold(perfect, truths, unsorted), zsact::InputError);
}

TEST_CASE("auc_vs_threshold matches the step-function oracle and is monotone") {
  const std::vector<double> thetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> start(0, 6);
  std::uniform_int_distribution<int> len(3, 9);
  std::uniform_real_distribution<double> shift(0, 8);
  std::uniform_real_distribution<double> score(0, 1);
  std::uniform_int_distribution<int> action(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GroundTruthTube> truths;
    std::vector<Detection> dets;
    for (int v = 0; v < 5; ++v) {
      const std::string id = "v" + std::to_string(v);
      const std::string act = "a" + std::to_string(action(rng));
      truths.push_back({id, act, span_frames(start(rng), len(rng), shift(rng))});
      for (int d = 0; d < 3; ++d)
        dets.push_back({id, "a" + std::to_string(action(rng)), score(rng),
                        span_frames(start(rng), len(rng), shift(rng))});
    }
    const auto report = zsact::auc_vs_threshold(dets, truths, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      CHECK(report.curve[i].value == doctest::Approx(auc_oracle(dets, truths, thetas[i])).epsilon(1e-12));
      if (i > 0) CHECK(report.curve[i].value <= report.curve[i - 1].value);
    }
  }
}

TEST_CASE("AP from scores equals AP from the induced ranking") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<zsact::VideoScores> videos;
    std::set<std::string> positives;
    for (int v = 0; v < 12; ++v) {
      zsact::VideoScores vs;
      vs.id = "v" + std::to_string(v);
      vs.scores.values = {uni(rng), uni(rng)};
      if (uni(rng) < 0.3) positives.insert(vs.id);
      videos.push_back(vs);
    }
    zsact::AffinityMatrix g({"x", "y"}, {"a"}, {0.7, 0.3});
    std::vector<std::string> from_scores;
    for (const auto& h : zsact::retrieve(videos, "a", g)) from_scores.push_back(h.video_id);
    std::vector<std::pair<double, std::string>> keyed;
    for (const auto& v : videos) keyed.emplace_back(0.7 * v.scores.values[0] + 0.3 * v.scores.values[1], v.id);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::string> ranked;
    for (const auto& k : keyed) ranked.push_back(k.second);
    CHECK(zsact::average_precision(from_scores, positives).value ==
          doctest::Approx(static_cast<double>(oracle::average_precision(ranked, positives))).epsilon(1e-15));
  }
}
