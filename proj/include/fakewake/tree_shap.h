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

// Exact path-dependent Shapley attributions for tree ensembles.

#ifndef FAKEWAKE_TREE_SHAP_H_
#define FAKEWAKE_TREE_SHAP_H_

#include <span>
#include <vector>

#include "fakewake/gbdt.h"

namespace fakewake {

// Attributions in margin (log-odds) space:
// base_value + sum(contributions) == margin up to rounding.
struct ShapExplanation {
  std::vector<double> contributions;
  double base_value = 0.0;
  double margin = 0.0;
};

// Adds the Shapley values of one tree's output at x into `phi`. Absent
// features are marginalized by following both children weighted by their
// training covers.
void TreeShap(const Tree& tree, std::span<const double> x, std::span<double> phi);

// Throws kShapeMismatch on a wrong-length input.
ShapExplanation ShapValues(const TreeEnsemble& model, std::span<const double> x);

}  // namespace fakewake

#endif  // FAKEWAKE_TREE_SHAP_H_
