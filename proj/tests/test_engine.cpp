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
#include <random>

#include "oracles.hpp"
#include "zsact/engine.hpp"
#include "zsact/error.hpp"
#include "zsact/evaluation.hpp"

using zsact::AffinityMatrix;
using zsact::ObjectScores;
using zsact::TubeProposal;

namespace {

ObjectScores scores(std::vector<double> v) {
  ObjectScores s;
  s.values = std::move(v);
  return s;
}

AffinityMatrix matrix(std::size_t m, std::size_t n, std::vector<double> values) {
  std::vector<std::string> objects;
  std::vector<std::string> actions;
  for (std::size_t i = 0; i < m; ++i) objects.push_back("o" + std::to_string(i));
  for (std::size_t j = 0; j < n; ++j) actions.push_back("a" + std::to_string(j));
  return AffinityMatrix(objects, actions, std::move(values));
}

AffinityMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(m * n);
  for (auto& x : v) x = normal(rng);
  return matrix(m, n, v);
}

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(m);
  for (auto& x : v) x = uni(rng);
  return v;
}

oracle::Mat rows_of(const AffinityMatrix& g) {
  oracle::Mat rows(g.objects_count());
  for (std::size_t y = 0; y < g.objects_count(); ++y)
    for (std::size_t z = 0; z < g.actions_count(); ++z) rows[y].push_back(g.at(y, z));
  return rows;
}

TubeProposal tube(std::string id, std::int64_t start, std::int64_t length, double x,
                  std::vector<double> p) {
  TubeProposal t;
  t.video_id = "v";
  t.tube_id = std::move(id);
  for (std::int64_t f = start; f < start + length; ++f) t.frames.push_back({f, {x, 0, 10, 10}});
  t.scores = scores(std::move(p));
  t.scores.source = zsact::ScoreSource::kTube;
  return t;
}

}  // namespace

TEST_CASE("score_actions") {
  const auto g = matrix(3, 2, {1, 2, 3, 4, 5, 6});
  CHECK(zsact::score_actions(scores({0, 1, 0}), g) == std::vector<double>{3, 4});
  const auto eye = matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(zsact::score_actions(scores({0.2, 0.3, 0.5}), eye) == std::vector<double>{0.2, 0.3, 0.5});
  CHECK_THROWS_AS(zsact::score_actions(scores({1, 2}), g), zsact::InputError);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = random_matrix(rng, 20, 5);
    const auto p = random_scores(rng, 20);
    const auto got = zsact::score_actions(scores(p), r);
    const auto want = oracle::scores_extended(p, rows_of(r));
    for (std::size_t z = 0; z < 5; ++z) CHECK(std::abs(got[z] - want[z]) < 1e-12L);
    CHECK(got == oracle::scores_loop(p, rows_of(r)));
  }
}

TEST_CASE("classify") {
  const auto eye = matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const auto p = zsact::classify("v", scores({0.2, 0.9, 0.9}), eye);
  CHECK(p.best().name == "a1");
  REQUIRE(p.ranking.size() == 3);
  CHECK(p.ranking[1].name == "a2");
  CHECK(p.ranking[2].name == "a0");

  const auto single = matrix(2, 1, {0.3, -1});
  CHECK(zsact::classify("v", scores({1, 1}), single).best().name == "a0");

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_matrix(rng, 12, 6);
    const auto raw = random_scores(rng, 12);
    const auto pred = zsact::classify("v", scores(raw), g);
    CHECK(pred.best().action == oracle::argmax_exhaustive(oracle::scores_loop(raw, rows_of(g))));
    for (std::size_t r = 1; r < pred.ranking.size(); ++r) {
      const auto& a = pred.ranking[r - 1];
      const auto& b = pred.ranking[r];
      CHECK((a.score > b.score || (a.score == b.score && a.action < b.action)));
    }
    // Positive rescaling by a power of two is exact, so the ranking is unchanged.
    auto scaled = raw;
    for (auto& x : scaled) x *= 8.0;
    const auto again = zsact::classify("v", scores(scaled), g);
    for (std::size_t r = 0; r < pred.ranking.size(); ++r)
      CHECK(again.ranking[r].action == pred.ranking[r].action);
  }
}

TEST_CASE("retrieve") {
  const auto g = matrix(2, 2, {1, 0, 0, 1});
  const std::vector<zsact::VideoScores> one = {{"x", scores({1, 0})}};
  CHECK(zsact::retrieve(one, "a0", g).size() == 1);

  const std::vector<zsact::VideoScores> tied = {{"b", scores({0.5, 0.5})},
                                                {"a", scores({0.5, 0.5})}};
  const auto hits = zsact::retrieve(tied, "a1", g);
  CHECK(hits[0].video_id == "a");
  CHECK(hits[1].video_id == "b");
  CHECK(hits[0].score == hits[1].score);
  CHECK_THROWS_AS(zsact::retrieve(tied, "nope", g), zsact::InputError);
  CHECK_THROWS_AS(zsact::retrieve({}, "a0", g), zsact::InputError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = random_matrix(rng, 8, 3);
    std::vector<zsact::VideoScores> videos;
    std::vector<std::pair<double, std::string>> want;
    for (int v = 0; v < 10; ++v) {
      const auto p = random_scores(rng, 8);
      videos.push_back({"v" + std::to_string(9 - v), scores(p)});
      want.emplace_back(oracle::scores_loop(p, rows_of(r))[2], videos.back().id);
    }
    std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    const auto got = zsact::retrieve(videos, "a2", r);
    for (int i = 0; i < 10; ++i) {
      CHECK(got[i].video_id == want[i].second);
      CHECK(got[i].score == want[i].first);
    }
  }
}

TEST_CASE("localize") {
  const auto g1 = matrix(2, 1, {1, 1});
  const std::vector<TubeProposal> single = {tube("t0", 0, 3, 0, {0.5, 0.5})};
  const auto p = zsact::localize(single, g1);
  CHECK(p.tube == 0u);
  CHECK(p.best().name == "a0");

  const auto g = matrix(2, 2, {0.5, 1, 1, 0.25});
  const std::vector<TubeProposal> dom = {tube("t0", 0, 3, 0, {0.1, 0.2}),
                                         tube("t1", 0, 3, 0, {0.3, 0.4})};
  CHECK(zsact::localize(dom, g).tube_id == "t1");
  CHECK_THROWS_AS(zsact::localize({}, g), zsact::InputError);
  auto other = dom;
  other[1].video_id = "w";
  CHECK_THROWS_AS(zsact::localize(other, g), zsact::InputError);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_matrix(rng, 6, 4);
    std::vector<TubeProposal> tubes;
    for (int u = 0; u < 5; ++u) tubes.push_back(tube("t" + std::to_string(u), u, 2, 0, random_scores(rng, 6)));
    std::size_t best_u = 0;
    std::size_t best_z = 0;
    double best = 0;
    for (std::size_t u = 0; u < 5; ++u) {
      const auto s = oracle::scores_loop(tubes[u].scores.values, rows_of(r));
      for (std::size_t z = 0; z < 4; ++z) {
        if ((u == 0 && z == 0) || s[z] > best) {
          best = s[z];
          best_u = u;
          best_z = z;
        }
      }
    }
    const auto got = zsact::localize(tubes, r);
    CHECK(*got.tube == best_u);
    CHECK(got.best().action == best_z);
    CHECK(got.best().score == best);
  }
}

TEST_CASE("top_detections") {
  const auto g = matrix(2, 1, {1, 1});
  std::vector<TubeProposal> same;
  for (int u = 0; u < 4; ++u) same.push_back(tube("t" + std::to_string(u), 0, 5, 0, {0.1 * u, 0.2}));
  const auto one = zsact::top_detections(same, g, 5, 0.3);
  REQUIRE(one.size() == 1);
  CHECK(one[0].tube_id == "t3");

  const std::vector<TubeProposal> disjoint = {tube("a", 0, 3, 0, {0.2, 0}),
                                              tube("b", 10, 3, 0, {0.9, 0}),
                                              tube("c", 20, 3, 0, {0.5, 0})};
  const auto three = zsact::top_detections(disjoint, g, 5, 0.3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].tube_id == "b");
  CHECK(three[1].tube_id == "c");
  CHECK(three[2].tube_id == "a");
  CHECK(zsact::top_detections(disjoint, g, 2, 0.3).size() == 2);
  CHECK_THROWS_AS(zsact::top_detections(disjoint, g, 0, 0.3), zsact::InputError);
  CHECK_THROWS_AS(zsact::top_detections(disjoint, g, 1, 1.5), zsact::InputError);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> start(0, 12);
  std::uniform_int_distribution<int> len(2, 8);
  std::uniform_real_distribution<double> shift(0, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_matrix(rng, 5, 3);
    std::vector<TubeProposal> tubes;
    for (int u = 0; u < 10; ++u)
      tubes.push_back(tube("t" + std::to_string(u), start(rng), len(rng), shift(rng), random_scores(rng, 5)));

    // Greedy oracle: repeatedly take the highest remaining tube, drop its overlaps.
    std::vector<double> best(10);
    for (std::size_t u = 0; u < 10; ++u) {
      const auto s = oracle::scores_loop(tubes[u].scores.values, rows_of(r));
      best[u] = s[oracle::argmax_exhaustive(s)];
    }
    std::vector<bool> alive(10, true);
    std::vector<std::size_t> want;
    while (want.size() < 5) {
      std::size_t pick = 10;
      for (std::size_t u = 0; u < 10; ++u)
        if (alive[u] && (pick == 10 || best[u] > best[pick])) pick = u;
      if (pick == 10) break;
      want.push_back(pick);
      alive[pick] = false;
      for (std::size_t u = 0; u < 10; ++u) {
        if (!alive[u]) continue;
        std::vector<oracle::Frame> a;
        std::vector<oracle::Frame> b;
        for (const auto& f : tubes[pick].frames) a.push_back({f.frame, f.box.x, f.box.y, f.box.width, f.box.height});
        for (const auto& f : tubes[u].frames) b.push_back({f.frame, f.box.x, f.box.y, f.box.width, f.box.height});
        if (oracle::tube_overlap(a, b) > 0.3) alive[u] = false;
      }
    }
    const auto got = zsact::top_detections(tubes, r, 5, 0.3);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(*got[i].tube == want[i]);
  }
}

TEST_CASE("engine invariants") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    // A single action reduces localisation to the best-scoring tube.
    const auto g1 = random_matrix(rng, 6, 1);
    std::vector<TubeProposal> tubes;
    std::size_t want = 0;
    double best = 0;
    for (std::size_t u = 0; u < 4; ++u) {
      tubes.push_back(tube("t" + std::to_string(u), 0, 2, 0, random_scores(rng, 6)));
      const double s = zsact::score_actions(tubes.back().scores, g1)[0];
      if (u == 0 || s > best) best = s, want = u;
    }
    CHECK(*zsact::localize(tubes, g1).tube == want);

    // Full masks leave the ranking of dense inputs untouched.
    const auto g = random_matrix(rng, 9, 4);
    const auto p = scores(random_scores(rng, 9));
    const auto dense = zsact::classify("v", p, g);
    const auto masked = zsact::classify("v", zsact::sparsify_video(p, 9), zsact::sparsify_action(g, 9));
    for (std::size_t r = 0; r < 4; ++r) {
      CHECK(dense.ranking[r].action == masked.ranking[r].action);
      CHECK(dense.ranking[r].score == masked.ranking[r].score);
    }
  }
}
