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

#include <vector>

#include "fakewake/error.h"

namespace fakewake {
namespace {

// One feature on the current root-to-node path. zero_fraction is the share of
// cover that flows this way when the feature is absent, one_fraction is 1 if
// x itself flows this way. weight accumulates the permutation weight of
// subsets of size i at slot i.
struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double weight = 0.0;
};

using Path = std::vector<PathElement>;

void ExtendPath(Path& path, int depth, double zero_fraction, double one_fraction, int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].weight += one_fraction * path[i].weight * (i + 1) / static_cast<double>(depth + 1);
    path[i].weight = zero_fraction * path[i].weight * (depth - i) / static_cast<double>(depth + 1);
  }
}

void UnwindPath(Path& path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].weight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = path[i].weight;
      path[i].weight = next * (depth + 1) / ((i + 1) * one);
      next = tmp - path[i].weight * zero * (depth - i) / static_cast<double>(depth + 1);
    } else {
      path[i].weight = path[i].weight * (depth + 1) / (zero * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

// Total permutation weight the path would have with `index` unwound.
double UnwoundPathSum(const Path& path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].weight;
  double total = 0.0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = next * (depth + 1) / ((i + 1) * one);
      total += tmp;
      next = path[i].weight - tmp * zero * (depth - i) / static_cast<double>(depth + 1);
    } else if (zero != 0.0) {
      total += path[i].weight / zero / ((depth - i) / static_cast<double>(depth + 1));
    }
  }
  return total;
}

void Recurse(const Tree& tree, std::span<const double> x, std::span<double> phi, int node, Path path, int depth,
             double parent_zero, double parent_one, int parent_feature) {
  path.resize(static_cast<size_t>(depth) + 1);
  ExtendPath(path, depth, parent_zero, parent_one, parent_feature);
  const TreeNode& n = tree.nodes[node];
  if (n.is_leaf()) {
    for (int i = 1; i <= depth; ++i) {
      const double w = UnwoundPathSum(path, depth, i);
      const PathElement& el = path[i];
      phi[el.feature] += w * (el.one_fraction - el.zero_fraction) * n.value;
    }
    return;
  }

  const bool goes_left = x[n.feature] <= n.threshold;
  const int hot = goes_left ? n.left : n.right;
  const int cold = goes_left ? n.right : n.left;
  const double hot_zero = tree.nodes[hot].cover / n.cover;
  const double cold_zero = tree.nodes[cold].cover / n.cover;
  double incoming_zero = 1.0;
  double incoming_one = 1.0;

  // A feature split on twice along a path is tracked once.
  int previous = -1;
  for (int i = 1; i <= depth; ++i) {
    if (path[i].feature == n.feature) {
      previous = i;
      break;
    }
  }
  if (previous >= 0) {
    incoming_zero = path[previous].zero_fraction;
    incoming_one = path[previous].one_fraction;
    UnwindPath(path, depth, previous);
    --depth;
    path.resize(static_cast<size_t>(depth) + 1);
  }
  Recurse(tree, x, phi, hot, path, depth + 1, hot_zero * incoming_zero, incoming_one, n.feature);
  Recurse(tree, x, phi, cold, path, depth + 1, cold_zero * incoming_zero, 0.0, n.feature);
}

}  // namespace

void TreeShap(const Tree& tree, std::span<const double> x, std::span<double> phi) {
  if (tree.nodes.empty()) return;
  Recurse(tree, x, phi, 0, Path(1), 0, 1.0, 1.0, -1);
}

ShapExplanation ShapValues(const TreeEnsemble& model, std::span<const double> x) {
  ShapExplanation out;
  out.margin = model.Margin(x);  // Validates the shape.
  out.base_value = model.ExpectedMargin();
  out.contributions.assign(model.num_features, 0.0);
  for (const auto& tree : model.trees) TreeShap(tree, x, out.contributions);
  return out;
}

}  // namespace fakewake
