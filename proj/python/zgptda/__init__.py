# Copyright 2026 The zgptda Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Scaling-law analysis and suitability-filtered text augmentation."""

from ._core import (
    LoadError,
    NotFittable,
    augment_mock,
    compare_corpora,
    evaluate_corpus,
    evaluate_text,
    fit_benford,
    fit_loglog,
    fit_metrics,
    fuzzy_config,
    grade_metric,
    load_jsonl,
    mfdfa,
    suitability,
    tokenize,
)

__all__ = [
    "LoadError",
    "NotFittable",
    "augment_mock",
    "compare_corpora",
    "evaluate_corpus",
    "evaluate_text",
    "fit_benford",
    "fit_loglog",
    "fit_metrics",
    "fuzzy_config",
    "grade_metric",
    "load_jsonl",
    "mfdfa",
    "suitability",
    "tokenize",
]
