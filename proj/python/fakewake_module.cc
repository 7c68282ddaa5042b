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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fakewake/distance.h"
#include "fakewake/error.h"
#include "fakewake/evolve.h"
#include "fakewake/gbdt.h"
#include "fakewake/pipeline.h"
#include "fakewake/serialize.h"
#include "fakewake/tree_shap.h"

namespace py = pybind11;
namespace fw = fakewake;

namespace {

fw::RunConfig ConfigFrom(const std::string& json) {
  return json.empty() ? fw::RunConfig{} : fw::RunConfigFromJson(json);
}

}  // namespace

PYBIND11_MODULE(_fakewake, m) {
  m.doc() = "Fuzzy wake-up word generation, explanation and mitigation";

  static py::exception<fw::Error> error(m, "FakeWakeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const fw::Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = std::string(fw::ErrorCodeName(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("parse_pinyin", [](const std::string& text) {
    const auto tables = fw::PhoneticTables::Default();
    std::vector<std::tuple<std::string, std::string, int>> out;
    for (const auto& s : tables->ParsePinyin(text).syllables)
      out.emplace_back(tables->InitialSymbol(s.initial), tables->FinalSymbol(s.final), s.tone);
    return out;
  }, py::arg("text"), "Split tone-marked pinyin into (initial, final, tone) triples.");

  m.def("g2p", [](const std::string& word) {
    const auto tables = fw::PhoneticTables::Default();
    return tables->RenderPhonemes(tables->G2p({word}));
  }, py::arg("word"), "ARPAbet pronunciation; word boundaries render as '_'.");

  m.def("chinese_dist", [](const std::string& a, const std::string& b) {
    const auto tables = fw::PhoneticTables::Default();
    return fw::ChineseDist(*tables, tables->ParsePinyin(a), tables->ParsePinyin(b));
  }, py::arg("a"), py::arg("b"));

  m.def("english_dist", [](const std::string& a, const std::string& b) {
    const auto tables = fw::PhoneticTables::Default();
    return fw::EnglishDist(*tables, tables->G2p({a}), tables->G2p({b}));
  }, py::arg("a"), py::arg("b"));

  m.def("non_dominated_front", [](const std::vector<std::pair<double, double>>& points) {
    std::vector<fw::Objectives> pop;
    for (const auto& [rate, dis] : points) pop.push_back({rate, dis});
    return fw::NonDominatedFront(pop);
  }, py::arg("points"), "Indices of the (wake_rate, dissimilarity) pairs no other pair dominates.");

  m.def("train_gbdt", [](const std::vector<std::vector<double>>& x, const std::vector<int>& y, int n_trees,
                         int max_depth, double learning_rate, int min_leaf) {
    fw::Dataset data{x, y, {}};
    return fw::EnsembleToJson(fw::TrainGbdt(data, {n_trees, max_depth, learning_rate, min_leaf}));
  }, py::arg("x"), py::arg("y"), py::arg("n_trees") = 100, py::arg("max_depth") = 3,
     py::arg("learning_rate") = 0.1, py::arg("min_leaf") = 2, "Returns the model as JSON text.");

  m.def("predict_proba", [](const std::string& model, const std::vector<double>& x) {
    return fw::EnsembleFromJson(model).PredictProba(x);
  }, py::arg("model"), py::arg("x"));

  m.def("shap_values", [](const std::string& model, const std::vector<double>& x) {
    const auto e = fw::ShapValues(fw::EnsembleFromJson(model), x);
    return py::make_tuple(e.contributions, e.base_value, e.margin);
  }, py::arg("model"), py::arg("x"), "Returns (contributions, base_value, margin) in log-odds space.");

  m.def("default_config", [] { return fw::RunConfigToJson(fw::RunConfig{}); });

  m.def("generate", [](const std::string& config) {
    py::gil_scoped_release release;
    return fw::ArchiveToJson(fw::CmdGenerate(ConfigFrom(config)));
  }, py::arg("config"), "Runs the search, writes the outputs and returns the archive JSON.");

  m.def("explain", [](const std::string& config, const std::string& archive) {
    py::gil_scoped_release release;
    const auto report = fw::CmdExplain(ConfigFrom(config), archive);
    return std::make_pair(report.cv.accuracy, report.ranking.empty() ? std::string() : report.ranking.front().unit);
  }, py::arg("config"), py::arg("archive"), "Returns (cv_accuracy, top decisive unit).");

  m.def("mitigate", [](const std::string& config, const std::string& archive) {
    {
      py::gil_scoped_release release;
      fw::CmdMitigate(ConfigFrom(config), archive);
    }
    return fw::ReadFile(ConfigFrom(config).output_dir / "mitigation.json");
  }, py::arg("config"), py::arg("archive"), "Returns the mitigation report JSON.");
}
