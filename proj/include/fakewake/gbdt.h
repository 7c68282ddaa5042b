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

// Gradient-boosted binary decision trees with logistic loss.

#ifndef FAKEWAKE_GBDT_H_
#define FAKEWAKE_GBDT_H_

#include <span>
#include <string>
#include <vector>

namespace fakewake {

// One row per sample, labels in {0, 1}.
struct Dataset {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  std::vector<std::string> words;  // Optional provenance, same length when set.

  size_t size() const { return labels.size(); }
  size_t num_features() const { return features.empty() ? 0 : features.front().size(); }
  size_t CountLabel(int label) const;
};

struct TreeNode {
  // Internal nodes: go left iff x[feature] <= threshold. Leaves: feature < 0.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // Leaf output in margin units, learning rate applied.
  double cover = 0.0;  // Training samples that reached the node.

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root.

  int LeafIndex(std::span<const double> x) const;
  double Predict(std::span<const double> x) const { return nodes[LeafIndex(x)].value; }
  // Cover-weighted mean of the leaf values.
  double ExpectedValue() const;
  int Depth() const;
};

struct GbdtParams {
  int n_trees = 100;
  int max_depth = 3;
  double learning_rate = 0.1;
  int min_leaf = 2;

  void Validate() const;
};

struct TreeEnsemble {
  std::vector<Tree> trees;
  double base_score = 0.0;  // Log-odds.
  double learning_rate = 0.1;
  size_t num_features = 0;

  // Throws kShapeMismatch on a wrong-length input.
  double Margin(std::span<const double> x) const;
  // Confidence that x is positive: logistic(margin).
  double PredictProba(std::span<const double> x) const;
  // Dissimilarity score: 1 - PredictProba.
  double Dissimilarity(std::span<const double> x) const { return 1.0 - PredictProba(x); }
  // Sum of the tree expected values plus base_score.
  double ExpectedMargin() const;
};

// Logistic-loss boosting. The base score is the log-odds of the positive
// share; each tree fits the residuals y - p with variance-reduction splits,
// and each leaf takes the Newton step sum(r) / sum(p(1-p)) scaled by the
// learning rate. Split ties go to the lower feature, then the lower
// threshold, so training is deterministic.
//
// Throws kDegenerateData when a class is missing or has fewer than 2 samples.
TreeEnsemble TrainGbdt(const Dataset& data, const GbdtParams& params = {});

double Accuracy(const TreeEnsemble& model, const Dataset& data, double threshold = 0.5);

}  // namespace fakewake

#endif  // FAKEWAKE_GBDT_H_
