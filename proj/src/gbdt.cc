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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fakewake/error.h"
#include "fakewake/oracle.h"

namespace fakewake {
namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const std::vector<std::vector<int>>& sorted, const std::vector<double>& residual,
              const std::vector<double>& hessian, const GbdtParams& params)
      : data_(data), sorted_(sorted), residual_(residual), hessian_(hessian), params_(params),
        node_of_(data.size(), 0) {}

  Tree Build() {
    tree_.nodes.push_back({});
    Grow(0, 0);
    return std::move(tree_);
  }

 private:
  // Grows node `id`, whose samples are those with node_of_ == id.
  void Grow(int id, int depth) {
    double sum_r = 0.0;
    double sum_h = 0.0;
    int count = 0;
    for (size_t i = 0; i < data_.size(); ++i) {
      if (node_of_[i] != id) continue;
      sum_r += residual_[i];
      sum_h += hessian_[i];
      ++count;
    }
    tree_.nodes[id].cover = count;

    Split best;
    if (depth < params_.max_depth && count >= 2 * params_.min_leaf) best = FindSplit(id, sum_r, count);
    if (best.feature < 0) {
      tree_.nodes[id].value = sum_h > 1e-12 ? params_.learning_rate * sum_r / sum_h : 0.0;
      return;
    }

    const int left = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    const int right = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    TreeNode& node = tree_.nodes[id];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left;
    node.right = right;
    for (size_t i = 0; i < data_.size(); ++i)
      if (node_of_[i] == id) node_of_[i] = data_.features[i][best.feature] <= best.threshold ? left : right;
    Grow(left, depth + 1);
    Grow(right, depth + 1);
  }

  Split FindSplit(int id, double sum_r, int count) const {
    Split best;
    const double parent = sum_r * sum_r / count;
    const size_t num_features = data_.num_features();
    std::vector<int> members;
    members.reserve(static_cast<size_t>(count));
    for (size_t f = 0; f < num_features; ++f) {
      members.clear();
      for (int i : sorted_[f])
        if (node_of_[i] == id) members.push_back(i);
      double left_sum = 0.0;
      for (size_t k = 0; k + 1 < members.size(); ++k) {
        left_sum += residual_[members[k]];
        const int n_left = static_cast<int>(k + 1);
        const int n_right = count - n_left;
        const double here = data_.features[members[k]][f];
        const double next = data_.features[members[k + 1]][f];
        if (!(next > here)) continue;
        if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
        const double right_sum = sum_r - left_sum;
        const double gain = left_sum * left_sum / n_left + right_sum * right_sum / n_right - parent;
        if (gain > best.gain + 1e-12) {
          best.feature = static_cast<int>(f);
          best.threshold = here + (next - here) / 2.0;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  const std::vector<std::vector<int>>& sorted_;
  const std::vector<double>& residual_;
  const std::vector<double>& hessian_;
  const GbdtParams& params_;
  std::vector<int> node_of_;
  Tree tree_;
};

}  // namespace

size_t Dataset::CountLabel(int label) const {
  return static_cast<size_t>(std::count(labels.begin(), labels.end(), label));
}

int Tree::LeafIndex(std::span<const double> x) const {
  int id = 0;
  while (!nodes[id].is_leaf()) id = x[nodes[id].feature] <= nodes[id].threshold ? nodes[id].left : nodes[id].right;
  return id;
}

double Tree::ExpectedValue() const {
  const double root = nodes[0].cover;
  double total = 0.0;
  for (const auto& n : nodes)
    if (n.is_leaf()) total += n.value * n.cover / root;
  return total;
}

int Tree::Depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    depth[nodes[i].left] = depth[nodes[i].right] = depth[i] + 1;
    deepest = std::max(deepest, depth[i] + 1);
  }
  return deepest;
}

void GbdtParams::Validate() const {
  if (n_trees < 0) throw Error(ErrorCode::kConfigError, "n_trees must be non-negative");
  if (max_depth < 1) throw Error(ErrorCode::kConfigError, "max_depth must be at least 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::kConfigError, "learning_rate must be positive");
  if (min_leaf < 1) throw Error(ErrorCode::kConfigError, "min_leaf must be at least 1");
}

double TreeEnsemble::Margin(std::span<const double> x) const {
  if (x.size() != num_features)
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(num_features) + " features, got " + std::to_string(x.size()));
  double margin = base_score;
  for (const auto& t : trees) margin += t.Predict(x);
  return margin;
}

double TreeEnsemble::PredictProba(std::span<const double> x) const { return Logistic(Margin(x)); }

double TreeEnsemble::ExpectedMargin() const {
  double total = base_score;
  for (const auto& t : trees) total += t.ExpectedValue();
  return total;
}

TreeEnsemble TrainGbdt(const Dataset& data, const GbdtParams& params) {
  params.Validate();
  const size_t positives = data.CountLabel(1);
  const size_t negatives = data.CountLabel(0);
  if (positives + negatives != data.size()) throw Error(ErrorCode::kDegenerateData, "labels must be 0 or 1");
  if (positives < 2 || negatives < 2)
    throw Error(ErrorCode::kDegenerateData, "need at least 2 samples of each class, got " +
                                                 std::to_string(positives) + " positive and " +
                                                 std::to_string(negatives) + " negative");
  const size_t n = data.size();
  const size_t num_features = data.num_features();
  for (const auto& row : data.features)
    if (row.size() != num_features) throw Error(ErrorCode::kShapeMismatch, "ragged feature rows");

  TreeEnsemble model;
  model.num_features = num_features;
  model.learning_rate = params.learning_rate;
  const double share = static_cast<double>(positives) / static_cast<double>(n);
  model.base_score = std::log(share / (1.0 - share));

  std::vector<std::vector<int>> sorted(num_features, std::vector<int>(n));
  for (size_t f = 0; f < num_features; ++f) {
    std::iota(sorted[f].begin(), sorted[f].end(), 0);
    std::stable_sort(sorted[f].begin(), sorted[f].end(),
                     [&](int a, int b) { return data.features[a][f] < data.features[b][f]; });
  }

  std::vector<double> margin(n, model.base_score);
  std::vector<double> residual(n), hessian(n);
  for (int t = 0; t < params.n_trees; ++t) {
    for (size_t i = 0; i < n; ++i) {
      const double p = Logistic(margin[i]);
      residual[i] = data.labels[i] - p;
      hessian[i] = p * (1.0 - p);
    }
    Tree tree = TreeBuilder(data, sorted, residual, hessian, params).Build();
    for (size_t i = 0; i < n; ++i) margin[i] += tree.Predict(data.features[i]);
    model.trees.push_back(std::move(tree));
  }
  return model;
}

double Accuracy(const TreeEnsemble& model, const Dataset& data, double threshold) {
  if (data.size() == 0) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < data.size(); ++i)
    correct += (model.PredictProba(data.features[i]) >= threshold ? 1 : 0) == data.labels[i];
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace fakewake
