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

import math

import numpy as np
import pytest

import drtest


def test_order_statistic_functions():
    assert drtest.exact_pmf(2, 1, 1) == pytest.approx(0.75, abs=1e-15)
    assert sum(drtest.exact_pmf(10, 4, z) for z in range(1, 11)) == pytest.approx(1.0, abs=1e-12)
    assert drtest.suff_stat(1, 3) == pytest.approx(math.log(1 / 5))
    assert abs(drtest.mean_suff_under_null(17)) < 1e-12


def test_mww_matches_scipy():
    stats = pytest.importorskip("scipy.stats")
    rng = np.random.default_rng(1)
    x = rng.normal(size=12)
    y = rng.normal(0.8, size=15)
    ours = drtest.mww_test(x, y)
    ref = stats.mannwhitneyu(y, x, alternative="two-sided", method="exact")
    assert ours.method == "MWW_Exact"
    assert ours.statistic == ref.statistic
    assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-10)

    x = rng.normal(size=40)
    y = rng.normal(0.3, size=45)
    ours = drtest.mww_test(x, y, alternative="greater")
    ref = stats.mannwhitneyu(y, x, alternative="greater", method="asymptotic", use_continuity=True)
    assert ours.method == "MWW_Normal"
    assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-10)


def test_kruskal_wallis_matches_scipy():
    stats = pytest.importorskip("scipy.stats")
    groups = [[1, 2, 2, 5], [3, 3, 7], [4, 6, 8, 9]]
    ours = drtest.kruskal_wallis_test(groups)
    ref = stats.kruskal(*groups)
    assert ours.statistic == pytest.approx(ref.statistic, rel=1e-12)
    assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-10)
    assert ours.z_or_df == 2


def test_doubly_ranked_single_occasion_equals_univariate():
    rng = np.random.default_rng(2)
    values = rng.normal(size=(20, 1))
    groups = [1] * 9 + [2] * 11
    dr = drtest.doubly_ranked_test(values, groups)
    uni = drtest.mww_test(values[:9, 0], values[9:, 0])
    assert dr.statistic == uni.statistic
    assert dr.p_value == uni.p_value


def test_simulated_shift_is_detected():
    values, groups, grid = drtest.generate_dataset([15, 15], S=40, K=200, mean_fn="mu1", xi=3.0, seed=7)
    assert values.shape == (30, 40)
    assert len(grid) == 40
    result = drtest.doubly_ranked_test(values, groups, summary="average_rank", preprocess_pve=0.99)
    assert result.p_value < 0.01
    three = drtest.generate_dataset([5, 6, 7], S=10, K=50)
    assert drtest.doubly_ranked_test(three[0], three[1]).method == "KW_ChiSq"


def test_ranks_summaries_and_smoothing():
    ranks = drtest.rank_curves(np.array([[1.0, 9.0], [2.0, 8.0], [3.0, 7.0]]))
    np.testing.assert_array_equal(ranks, [[1, 3], [2, 2], [3, 1]])
    np.testing.assert_array_equal(drtest.summarize(ranks, "avg"), [2, 2, 2])
    rng = np.random.default_rng(3)
    m = rng.normal(size=(8, 6))
    out = drtest.fpca_smooth(m, 1.0)
    np.testing.assert_array_equal(out["smoothed"], m)


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        drtest.doubly_ranked_test(np.zeros((3, 2)), [1, 1, 1])
    with pytest.raises(drtest.UnsupportedSize):
        drtest.exact_mww_null_distribution(40, 40)
    with pytest.raises(drtest.InvalidInput):
        drtest.mww_test([1.0], [2.0], alternative="sideways")


def test_small_study_runs():
    cells = drtest.run_type1(replicates=50, S=[10], n="6x6", distributions=["gaussian"], K=30, seed=4)
    assert len(cells) == 2
    assert {c["summary"] for c in cells} == {"sufficient", "average_rank"}
    power = drtest.run_power(replicates=20, S=[10], n="6x6", distributions=["t2"], mean_fns=["mu2"], xi="0,2", K=30)
    assert [c["xi"] for c in power] == [0.0, 2.0, 0.0, 2.0]
