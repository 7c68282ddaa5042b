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

#include "fakewake/gbdt.h"

#include <gtest/gtest.h>

#include <cmath>

#include "fakewake/error.h"
#include "fakewake/oracle.h"
#include "fakewake/rng.h"

namespace fakewake {
namespace {

Dataset OneDimensional() {
  Dataset d;
  for (int i = 0; i < 40; ++i) {
    d.features.push_back({i / 40.0});
    d.labels.push_back(i >= 17);
  }
  return d;
}

TEST(Gbdt, SeparableSetIsLearned) {
  const Dataset d = OneDimensional();
  const auto model = TrainGbdt(d);
  EXPECT_EQ(Accuracy(model, d), 1.0);
  EXPECT_EQ(model.trees.size(), 100u);
  for (const auto& t : model.trees) EXPECT_LE(t.Depth(), 3);
}

TEST(Gbdt, EmptyEnsembleIsNeutral) {
  TreeEnsemble model;
  model.num_features = 3;
  const std::vector<double> x{0.1, 0.2, 0.3};
  EXPECT_DOUBLE_EQ(model.PredictProba(x), 0.5);
  EXPECT_DOUBLE_EQ(model.Dissimilarity(x), 0.5);
}

TEST(Gbdt, BaseScoreIsPriorLogOdds) {
  Dataset d = OneDimensional();
  GbdtParams p;
  p.n_trees = 0;
  const auto model = TrainGbdt(d, p);
  EXPECT_NEAR(model.base_score, std::log(23.0 / 17.0), 1e-12);
}

TEST(Gbdt, LeafIsScaledNewtonStep) {
  Dataset d;
  for (int i = 0; i < 10; ++i) {
    d.features.push_back({static_cast<double>(i)});
    d.labels.push_back(i < 3 ? 0 : 1);
  }
  GbdtParams p;
  p.n_trees = 1;
  p.max_depth = 1;
  p.min_leaf = 1;
  const auto model = TrainGbdt(d, p);
  const Tree& t = model.trees[0];
  ASSERT_FALSE(t.nodes[0].is_leaf());
  EXPECT_DOUBLE_EQ(t.nodes[0].threshold, 2.5);
  const double p0 = 0.7;
  // Left: three negatives, residual -p0 each, hessian p0 (1 - p0) each.
  EXPECT_NEAR(t.nodes[t.nodes[0].left].value, 0.1 * (-3 * p0) / (3 * p0 * (1 - p0)), 1e-12);
  EXPECT_NEAR(t.nodes[t.nodes[0].right].value, 0.1 * (7 * (1 - p0)) / (7 * p0 * (1 - p0)), 1e-12);
  EXPECT_EQ(t.nodes[0].cover, 10.0);
  EXPECT_EQ(t.nodes[t.nodes[0].left].cover, 3.0);
}

TEST(Gbdt, RaisingALeafRaisesConfidence) {
  const Dataset d = OneDimensional();
  auto model = TrainGbdt(d);
  const std::vector<double> x{0.3};
  const double before = model.PredictProba(x);
  model.trees[0].nodes[model.trees[0].LeafIndex(x)].value += 0.5;
  EXPECT_GT(model.PredictProba(x), before);
}

TEST(Gbdt, Deterministic) {
  RngStream rng(1, 0);
  Dataset d;
  for (int i = 0; i < 100; ++i) {
    d.features.push_back({rng.Uniform(), rng.Uniform(), rng.Uniform()});
    d.labels.push_back(d.features.back()[0] + d.features.back()[1] > 1.0);
  }
  const auto a = TrainGbdt(d), b = TrainGbdt(d);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> x{rng.Uniform(), rng.Uniform(), rng.Uniform()};
    EXPECT_EQ(a.Margin(x), b.Margin(x));
  }
}

TEST(Gbdt, DegenerateData) {
  Dataset d;
  for (int i = 0; i < 10; ++i) {
    d.features.push_back({static_cast<double>(i)});
    d.labels.push_back(1);
  }
  try {
    TrainGbdt(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateData);
  }
  d.labels[0] = 0;
  EXPECT_THROW(TrainGbdt(d), Error);
}

TEST(Gbdt, ShapeMismatch) {
  const auto model = TrainGbdt(OneDimensional());
  const std::vector<double> x{0.1, 0.2};
  try {
    model.PredictProba(x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(Gbdt, ParamValidation) {
  GbdtParams p;
  p.learning_rate = 0.0;
  EXPECT_THROW(p.Validate(), Error);
  p = {};
  p.max_depth = 0;
  EXPECT_THROW(p.Validate(), Error);
}

TEST(Gbdt, Logistic) {
  EXPECT_DOUBLE_EQ(Logistic(0.0), 0.5);
  EXPECT_NEAR(Logistic(2.0) + Logistic(-2.0), 1.0, 1e-15);
}

}  // namespace
}  // namespace fakewake
