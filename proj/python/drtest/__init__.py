# Copyright 2026 The drtest Authors
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

"""Doubly ranked MWW / Kruskal-Wallis tests for functional data."""

from ._drtest import (
    InvalidInput,
    TestResult,
    UnsupportedSize,
    __version__,
    approx_pmf,
    doubly_ranked_test,
    exact_mww_null_distribution,
    exact_pmf,
    fpca_smooth,
    generate_dataset,
    kruskal_wallis_test,
    mean_suff_under_null,
    mww_test,
    rank_curves,
    run_power,
    run_type1,
    suff_stat,
    summarize,
)

__all__ = [
    "InvalidInput",
    "TestResult",
    "UnsupportedSize",
    "__version__",
    "approx_pmf",
    "doubly_ranked_test",
    "exact_mww_null_distribution",
    "exact_pmf",
    "fpca_smooth",
    "generate_dataset",
    "kruskal_wallis_test",
    "mean_suff_under_null",
    "mww_test",
    "rank_curves",
    "run_power",
    "run_type1",
    "suff_stat",
    "summarize",
]
