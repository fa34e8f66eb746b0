# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import math
import random
from fractions import Fraction
from itertools import groupby, product

import pytest
from mpmath import mp, mpf

from selfaffine import beta, dimension
from selfaffine.beta import quasi_greedy_digits
from selfaffine.dimension import DimEstimate, DimMethod, FrequencyFamily
from selfaffine.numerics import root_constant
from selfaffine.sa_errors import DomainError, RegimeError, ResourceError

LOG3_2 = math.log(2) / math.log(3)


def _reflect(word):
    return word.translate(str.maketrans("01", "10"))


def _admissible(word, d):
    for start in range(len(word)):
        suffix = word[start:]
        bound = d[: len(suffix)]
        if suffix > bound or _reflect(suffix) > bound:
            return False
    return True


def _brute_force_words(lam, n, lookahead):
    d = quasi_greedy_digits(lam, n + lookahead + 1)
    words = []
    for letters in product("01", repeat=n):
        word = "".join(letters)
        if any(
            _admissible(word + "".join(tail), d)
            for tail in product("01", repeat=lookahead)
        ):
            words.append(word)
    return words


class TestClosedForms:

    @pytest.mark.parametrize(
        "a, expected",
        [
            (0, 1.0),
            (Fraction(1, 3), 1 / 3),
            (Fraction(1, 2), 0.0),
            (Fraction(2, 3), 1.0),
            (Fraction(1, 4), math.log(3 / 4) / (math.log(1 / 4) - math.log(1 / 2))),
        ],
    )
    def test_phi(self, a, expected):
        assert float(dimension.phi(a)) == pytest.approx(expected, abs=1e-12)

    def test_phi_domain(self):
        with pytest.raises(DomainError):
            dimension.phi(Fraction(3, 4))

    @pytest.mark.parametrize(
        "p, expected",
        [
            (0, LOG3_2),
            (Fraction(1, 3), 1.0),
            (Fraction(1, 2), 0.9463946),
            (1, 0.0),
        ],
    )
    def test_entropy_h(self, p, expected):
        assert float(dimension.entropy_h(p)) == pytest.approx(expected, abs=1e-6)

    def test_entropy_h_domain(self):
        with pytest.raises(DomainError):
            dimension.entropy_h(Fraction(3, 2))

    def test_d_of_a_is_one_at_a0(self):
        a0 = root_constant("a0").midpoint
        assert float(dimension.d_of_a(a0)) == pytest.approx(1.0, abs=1e-6)

    def test_d_of_a_accepts_mpf(self):
        assert float(dimension.d_of_a(mpf(1) / 4)) == pytest.approx(
            float(dimension.d_of_a(Fraction(1, 4))), abs=1e-12
        )


class TestFrequencySets:

    def test_small_p_families(self):
        h = dimension.entropy_h(Fraction(1, 4))
        assert dimension.dim_frequency_set(Fraction(1, 4), "R^p") == h
        assert dimension.dim_frequency_set(Fraction(1, 2), FrequencyFamily.R_UPPER) == 1
        assert dimension.dim_frequency_set(Fraction(1, 4), "Sbar_p") == h

    def test_large_p_families(self):
        assert dimension.dim_frequency_set(Fraction(1, 4), "S^p") == 1
        assert dimension.dim_frequency_set(Fraction(1, 2), "R_p") == dimension.entropy_h(Fraction(1, 2))

    def test_intersection(self):
        value = dimension.dim_frequency_set(Fraction(1, 4), "S_p&S^p", Fraction(1, 2))
        assert value == dimension.entropy_h(Fraction(1, 2))
        assert dimension.dim_frequency_set(Fraction(1, 4), "S_p&S^p") == dimension.entropy_h(Fraction(1, 4))
        with pytest.raises(DomainError):
            dimension.dim_frequency_set(Fraction(1, 2), "S_p&S^p", Fraction(1, 4))

    def test_frequency_domain(self):
        with pytest.raises(DomainError):
            dimension.dim_frequency_set(Fraction(5, 4), "R^p")


class TestSetDimensions:

    def test_dim_D0(self):
        assert dimension.dim_D0(Fraction(1, 4)) == 1
        assert dimension.dim_D0(Fraction(2, 3)) == 0
        assert dimension.dim_D0(Fraction(5, 6)) == 0
        value = dimension.dim_D0(Fraction(3, 5))
        assert 0 < value < 1
        assert value == dimension.d_of_a(Fraction(3, 5))
        with pytest.raises(DomainError):
            dimension.dim_D0(Fraction(1, 3))

    def test_dim_Dinf_closed(self):
        assert dimension.dim_Dinf_closed(Fraction(1, 4)) == dimension.d_of_a(Fraction(1, 4))
        assert float(dimension.dim_Dinf_closed(Fraction(1, 2))) == pytest.approx(LOG3_2, abs=1e-12)
        with pytest.raises(RegimeError):
            dimension.dim_Dinf_closed(Fraction(3, 5))
        with pytest.raises(DomainError):
            dimension.dim_Dinf_closed(Fraction(1, 3))

    def test_dim_N(self):
        assert float(dimension.dim_N(Fraction(1, 2))) == pytest.approx(LOG3_2**2, abs=1e-12)
        assert dimension.dim_N(Fraction(3, 5)) == 1
        assert dimension.dim_N(Fraction(1, 4)) == dimension.d_of_a(Fraction(1, 4))
        with pytest.raises(DomainError):
            dimension.dim_N(Fraction(1, 3))

    @pytest.mark.parametrize(
        "a, expected",
        [
            (Fraction(1, 4), 1.0),
            (Fraction(1, 2), 1.0),
            (Fraction(2, 3), 1.4650),
            (Fraction(5, 6), 1.7712),
        ],
    )
    def test_box_dimension_graph(self, a, expected):
        assert float(dimension.box_dimension_graph(a)) == pytest.approx(expected, abs=1e-4)

    def test_dim_Qk(self):
        assert dimension.dim_Qk(2) == 0
        assert float(dimension.dim_Qk(3)) == pytest.approx(0.43802, abs=1e-5)
        assert dimension.dim_Qk(4) > dimension.dim_Qk(3)
        with pytest.raises(DomainError):
            dimension.dim_Qk(1)


class TestMultinacciBounds:

    @pytest.mark.parametrize(
        "a, k", [(Fraction(13, 25), 3), (Fraction(11, 20), 2), (Fraction(7, 10), 1)]
    )
    def test_multinacci_level(self, a, k):
        assert dimension.multinacci_level(a) == k

    def test_multinacci_level_domain(self):
        with pytest.raises(DomainError):
            dimension.multinacci_level(Fraction(1, 2))

    def test_bounds_at_level_three(self):
        estimate = dimension.dim_Dinf_bounds(Fraction(13, 25), entropy_depth=12, lookahead=8)
        assert float(estimate.lower) == pytest.approx(0.4380, abs=1e-4)
        assert float(estimate.upper) == pytest.approx(0.5547, abs=1e-4)
        assert estimate.method is DimMethod.ENTROPY_COUNT
        assert estimate.details["k"] == 3
        assert estimate.details["count"] == dimension.count_admissible_words(Fraction(13, 25), 12, 8)
        assert estimate.point is not None

    def test_bounds_at_level_two(self):
        estimate = dimension.dim_Dinf_bounds(Fraction(11, 20), entropy_depth=10, lookahead=6)
        assert estimate.lower == 0
        assert float(estimate.upper) == pytest.approx(0.43802, abs=1e-4)

    @pytest.mark.slow
    @pytest.mark.parametrize("a", [Fraction(51, 100), Fraction(53, 100)])
    def test_estimate_within_bounds_at_depth_thirty(self, a):
        estimate = dimension.dim_Dinf_bounds(a, entropy_depth=30)
        assert estimate.lower <= estimate.point <= estimate.upper
        assert estimate.details["flags"] == []

    @pytest.mark.slow
    def test_estimate_overshoots_at_band_left_end(self):
        estimate = dimension.dim_Dinf_bounds(Fraction(13, 25), entropy_depth=30)
        assert estimate.details["k"] == 3
        assert estimate.details["flags"] == ["above_upper"]
        assert estimate.point > estimate.upper
        assert float(estimate.point) == pytest.approx(0.55572, abs=1e-4)
        assert estimate.details["count"] <= beta.run_limited_count(4, 30)

    def test_bounds_outside_regime(self):
        with pytest.raises(RegimeError):
            dimension.dim_Dinf_bounds(Fraction(3, 5))


class TestDimDinf:

    def test_closed_form_below_half(self):
        estimate = dimension.dim_Dinf(Fraction(1, 4))
        assert estimate.method is DimMethod.CLOSED_FORM
        assert estimate.point == dimension.d_of_a(Fraction(1, 4))

    @pytest.mark.parametrize("a", [Fraction(14, 25), Fraction(3, 5), Fraction(7, 10)])
    def test_zero_from_a_hat_on(self, a):
        estimate = dimension.dim_Dinf(a)
        assert estimate.point == 0
        assert estimate.as_dict() == {
            "lower": 0.0,
            "upper": 0.0,
            "point": 0.0,
            "method": "ClosedForm",
        }

    def test_entropy_between_half_and_a_hat(self):
        estimate = dimension.dim_Dinf(Fraction(13, 25), entropy_depth=10, lookahead=6)
        assert estimate.method is DimMethod.ENTROPY_COUNT
        assert estimate.as_dict()["bounds_method"] == "MultinacciBounds"


class TestAdmissibleWords:

    @pytest.mark.slow
    @pytest.mark.parametrize("lam", [Fraction(13, 25), Fraction(53, 100), Fraction(11, 20)])
    @pytest.mark.parametrize("n", range(1, 11))
    def test_matches_brute_force(self, lam, n):
        expected = _brute_force_words(lam, n, 5)
        assert dimension.admissible_words(lam, n, lookahead=5) == expected
        assert dimension.count_admissible_words(lam, n, lookahead=5) == len(expected)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "lam",
        [
            Fraction(101, 200),
            Fraction(51, 100),
            Fraction(13, 25),
            Fraction(53, 100),
            Fraction(11, 20),
        ],
    )
    def test_between_run_limited_languages(self, lam):
        k = dimension.multinacci_level(lam)
        for n in range(1, 13):
            words = set(dimension.admissible_words(lam, n, lookahead=8))
            for letters in product("01", repeat=n):
                word = "".join(letters)
                longest = max(len(list(run)) for _, run in groupby(word))
                if longest < k:
                    assert word in words
                if word in words:
                    assert longest <= k
            assert beta.run_limited_count(k, n) <= len(words) <= beta.run_limited_count(k + 1, n)

    def test_count_decreases_in_lambda(self):
        rng = random.Random(7)
        for _ in range(20):
            lam1, lam2 = sorted(Fraction(rng.randint(501, 559), 1000) for _ in range(2))
            for n in range(1, 13):
                assert dimension.count_admissible_words(
                    lam1, n, lookahead=8
                ) >= dimension.count_admissible_words(lam2, n, lookahead=8)


    def test_count_bounded_by_all_words(self):
        for n in range(1, 10):
            count = dimension.count_admissible_words(Fraction(13, 25), n, lookahead=8)
            assert 0 < count <= 2**n

    def test_depth_cap(self, mocker):
        mock_warning = mocker.patch("selfaffine.dimension.logger.warning")
        with pytest.raises(ResourceError):
            dimension.count_admissible_words(Fraction(13, 25), 50)
        mock_warning.assert_called_once()

    def test_bad_depth(self):
        with pytest.raises(DomainError):
            dimension.count_admissible_words(Fraction(13, 25), 0)

    def test_outside_regime(self):
        with pytest.raises(RegimeError):
            dimension.admissible_words(Fraction(3, 5), 4)


class TestDimSweep:

    def test_graph_box(self):
        rows = dimension.dim_sweep("graph-box", "1/2", "2/3", "1/12", workers=2)
        assert [a for a, _ in rows] == [Fraction(1, 2), Fraction(7, 12), Fraction(2, 3)]
        assert float(rows[0][1]) == 1.0
        assert float(rows[2][1]) == pytest.approx(1.4650, abs=1e-4)

    def test_undefined_values_are_none(self):
        rows = dimension.dim_sweep("D0", "1/4", "5/12", "1/12")
        assert [value for _, value in rows] == [1, None, 1]

    def test_unknown_set(self):
        with pytest.raises(DomainError):
            dimension.dim_sweep("nope", 0, 1, "1/2")

    def test_bad_grid(self):
        with pytest.raises(DomainError):
            dimension.dim_sweep("phi", "1/2", "1/4", "1/12")
        with pytest.raises(DomainError):
            dimension.dim_sweep("phi", 0, "1/2", 0)

    def test_precision(self):
        before = mp.dps
        rows = dimension.dim_sweep("phi", "1/5", "2/5", "1/10", workers=3, dps=50)
        assert mp.dps == before
        for a, value in rows:
            assert value == dimension.phi(a, 50)
        assert rows[0][1] != dimension.phi(Fraction(1, 5), 15)

    def test_dinf_rows_take_precision(self, mocker):
        mock_dinf = mocker.patch(
            "selfaffine.dimension.dim_Dinf", return_value=DimEstimate.closed_form(mpf(0))
        )
        dimension.dim_sweep("Dinf", "1/4", "1/4", "1/4", dps=40)
        mock_dinf.assert_called_once_with(Fraction(1, 4), dps=40)

    def test_bad_precision(self):
        with pytest.raises(DomainError):
            dimension.dim_sweep("phi", "1/5", "2/5", "1/10", dps=0)

    def test_sweep_sets(self):
        assert dimension.sweep_sets() == ["D0", "Dinf", "N", "graph-box", "phi", "d"]


class TestDimEstimate:

    def test_closed_form(self):
        estimate = DimEstimate.closed_form(mpf(1))
        assert estimate.lower == estimate.upper == estimate.point == 1
        assert estimate.as_dict()["method"] == "ClosedForm"
