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

import math
import random

import pytest

import fakewake


def test_parse_pinyin():
    assert fakewake.parse_pinyin("xiǎo ài") == [("x", "iao", 3), ("∅", "ai", 4)]
    with pytest.raises(fakewake.FakeWakeError) as info:
        fakewake.parse_pinyin("xāng")
    assert info.value.code == "InvalidCombination"


def test_g2p():
    assert fakewake.g2p("alexa") == "AH L EH K S AH"
    assert fakewake.g2p("hey siri") == "HH EY _ S IH R IY"


def test_distances():
    assert fakewake.english_dist("alexa", "alexa") == 0.0
    assert 0.0 < fakewake.english_dist("alexa", "olexa") < 1.0
    a, b = "xiǎo dù xiǎo dù", "xiǎo lǒng xiǎo lǒng"
    assert fakewake.chinese_dist(a, b) == pytest.approx(fakewake.chinese_dist(b, a))
    assert fakewake.chinese_dist(a, a) == 0.0
    with pytest.raises(fakewake.FakeWakeError):
        fakewake.chinese_dist("xiǎo", "xiǎo dù")


def test_front():
    assert fakewake.non_dominated_front([(1, 2), (2, 1), (0, 0)]) == [0, 1]
    assert fakewake.non_dominated_front([(0.5, 0.2)] * 3) == [0, 1, 2]


def test_gbdt_and_shap():
    rng = random.Random(4)
    x = [[rng.random(), rng.random(), rng.random()] for _ in range(120)]
    y = [int(r[0] > 0.5) for r in x]
    model = fakewake.train_gbdt(x, y, n_trees=20)
    assert fakewake.predict_proba(model, [0.9, 0.5, 0.5]) > 0.5
    assert fakewake.predict_proba(model, [0.1, 0.5, 0.5]) < 0.5
    phi, base, margin = fakewake.shap_values(model, [0.9, 0.2, 0.7])
    assert base + sum(phi) == pytest.approx(margin, abs=1e-9)
    assert phi[0] == max(phi, key=abs)
    assert 1 / (1 + math.exp(-margin)) == pytest.approx(fakewake.predict_proba(model, [0.9, 0.2, 0.7]))


def test_pipeline(tmp_path):
    config = fakewake.default_config()
    assert config["evolve"]["population_size"] == 100
    config.update(seed=7, output_dir=str(tmp_path))
    config["evolve"].update(generations=5, population_size=30)
    config["explain"]["gbdt"]["n_trees"] = 30
    config["mitigate"]["collective_size"] = 300
    archive = fakewake.generate(config)
    assert archive["candidates"]
    assert (tmp_path / "archive.json").exists()
    result = fakewake.explain(config, tmp_path / "archive.json")
    assert 0.0 <= result["cv_accuracy"] <= 1.0
    report = fakewake.mitigate(config, tmp_path / "archive.json")
    assert set(report["original"]) >= {"false_positive_rate", "false_negative_rate", "accuracy", "fuzzy_rate"}


def test_bad_config():
    with pytest.raises(fakewake.FakeWakeError) as info:
        fakewake.generate({"seed": 1, "evolve": {"bogus": 1}})
    assert info.value.code == "ConfigError"
