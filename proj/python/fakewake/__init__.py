# Copyright 2026 The FakeWake Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Fuzzy wake-up word generation, explanation and mitigation."""

import json
import os
import pathlib

from fakewake import _fakewake

# Tables load lazily, so the data directory can still be chosen here.
for _data in (pathlib.Path(__file__).with_name("data"), pathlib.Path(_fakewake.__file__).with_name("data")):
    if "FAKEWAKE_DATA_DIR" not in os.environ and _data.is_dir():
        os.environ["FAKEWAKE_DATA_DIR"] = str(_data)

from fakewake._fakewake import (
    FakeWakeError,
    chinese_dist,
    english_dist,
    g2p,
    non_dominated_front,
    parse_pinyin,
    predict_proba,
    shap_values,
    train_gbdt,
)

__all__ = [
    "FakeWakeError",
    "chinese_dist",
    "default_config",
    "english_dist",
    "explain",
    "g2p",
    "generate",
    "mitigate",
    "non_dominated_front",
    "parse_pinyin",
    "predict_proba",
    "shap_values",
    "train_gbdt",
]


def default_config():
    return json.loads(_fakewake.default_config())


def generate(config):
    """Runs the search with a config dict and returns the archive dict."""
    return json.loads(_fakewake.generate(json.dumps(config)))


def explain(config, archive):
    cv_accuracy, top_unit = _fakewake.explain(json.dumps(config), str(archive))
    return {"cv_accuracy": cv_accuracy, "top_unit": top_unit}


def mitigate(config, archive):
    return json.loads(_fakewake.mitigate(json.dumps(config), str(archive)))
