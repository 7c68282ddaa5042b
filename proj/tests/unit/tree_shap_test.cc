/*
 * Copyright 2026 The FakeWake Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fakewake/tree_shap.h"

#include <gtest/gtest.h>

#include <numeric>

#include "fakewake/error.h"
#include "test_support.h"

namespace fakewake {
namespace {

using testing::BruteForceShapley;
using testing::RandomEnsemble;

TreeEnsemble Stump(double v_left, double v_right) {
  TreeEnsemble model;
  model.num_features = 3;
  Tree t;
  t.nodes.resize(3);
  t.nodes[0] = {1, 0.5, 1, 2, 0.0, 10.0};
  t.nodes[1].value = v_left;
  t.nodes[1].cover = 5.0;
  t.nodes[2].value = v_right;
  t.nodes[2].cover = 5.0;
  model.trees.push_back(t);
  return model;
}

TEST(TreeShap, StumpExample) {
  const auto model = Stump(-0.4, 1.0);
  const std::vector<double> x{0.9, 0.8, -3.0};
  const auto shap = ShapValues(model, x);
  EXPECT_NEAR(shap.contributions[1], 1.0 - (-0.4 + 1.0) / 2, 1e-12);
  EXPECT_EQ(shap.contributions[0], 0.0);
  EXPECT_EQ(shap.contributions[2], 0.0);
  EXPECT_NEAR(shap.base_value, 0.3, 1e-12);
}

TEST(TreeShap, MatchesBruteForce) {
  RngStream rng(17, 0);
  for (int round = 0; round < 60; ++round) {
    const size_t m = 1 + rng.UniformIndex(10);
    const auto model = RandomEnsemble(rng, m, 1 + rng.UniformIndex(4), 3);
    std::vector<double> x(m);
    for (auto& v : x) v = rng.Uniform();
    const auto shap = ShapValues(model, x);
    const auto oracle = BruteForceShapley(model, x);
    for (size_t j = 0; j < m; ++j) EXPECT_NEAR(shap.contributions[j], oracle[j], 1e-9) << round << " " << j;
  }
}

TEST(TreeShap, RepeatedFeatureOnPath) {
  TreeEnsemble model;
  model.num_features = 2;
  Tree t;
  t.nodes.resize(7);
  t.nodes[0] = {0, 0.5, 1, 2, 0.0, 30.0};
  t.nodes[1] = {0, 0.2, 3, 4, 0.0, 12.0};
  t.nodes[2] = {1, 0.5, 5, 6, 0.0, 18.0};
  t.nodes[3] = {-1, 0.0, -1, -1, -1.0, 4.0};
  t.nodes[4] = {-1, 0.0, -1, -1, 0.5, 8.0};
  t.nodes[5] = {-1, 0.0, -1, -1, 2.0, 9.0};
  t.nodes[6] = {-1, 0.0, -1, -1, -0.7, 9.0};
  model.trees.push_back(t);
  for (double a : {0.1, 0.3, 0.7}) {
    for (double b : {0.2, 0.9}) {
      const std::vector<double> x{a, b};
      const auto shap = ShapValues(model, x);
      const auto oracle = BruteForceShapley(model, x);
      EXPECT_NEAR(shap.contributions[0], oracle[0], 1e-12);
      EXPECT_NEAR(shap.contributions[1], oracle[1], 1e-12);
    }
  }
}

TEST(TreeShap, LocalAccuracy) {
  RngStream rng(5, 0);
  Dataset d;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> row(6);
    for (auto& v : row) v = rng.Uniform();
    d.labels.push_back(row[0] + 0.5 * row[3] + 0.2 * rng.Uniform() > 0.8);
    d.features.push_back(std::move(row));
  }
  const auto model = TrainGbdt(d);
  for (const auto& x : d.features) {
    const auto shap = ShapValues(model, x);
    const double total = std::accumulate(shap.contributions.begin(), shap.contributions.end(), shap.base_value);
    EXPECT_NEAR(total, model.Margin(x), 1e-9);
  }
}

TEST(TreeShap, ShapeMismatch) {
  const auto model = Stump(0.0, 1.0);
  const std::vector<double> x{0.0};
  EXPECT_THROW(ShapValues(model, x), Error);
}

}  // namespace
}  // namespace fakewake
