# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

from fractions import Fraction

import pytest

from selfaffine import classifier
from selfaffine.classifier import Side, Verdict
from selfaffine.okamoto import Param
from selfaffine.sa_errors import DomainError, PreconditionError

# pylint: disable=unused-import
from .fixtures.points import fixture_aperiodic_point


# pylint:disable=unused-argument
class TestSidePolynomial:

    def test_right_and_left(self, aperiodic_point):
        eta_right, right = classifier.side_polynomial(aperiodic_point, Side.RIGHT)
        eta_left, left = classifier.side_polynomial(aperiodic_point, Side.LEFT)
        assert eta_right == "1100010"
        assert right.pretty() == "a^7 + a^6 + a^2 + a - 1"
        assert eta_left == "1110100"
        assert left.pretty() == "a^7 + a^5 + a^3 + a^2 + a - 1"

    def test_infinitely_many_ones(self):
        with pytest.raises(PreconditionError):
            classifier.side_polynomial(classifier.to_expansion(Fraction(1, 2)), Side.RIGHT)


class TestSideCondition:

    def test_holds(self):
        condition = classifier.side_condition(Fraction(11, 20), "0.(20)")
        assert condition.verdict is Verdict.HOLDS
        assert condition.m == 2
        assert condition.value == Fraction(11, 20) + Fraction(121, 400)

    def test_fails(self, aperiodic_point):
        condition = classifier.side_condition(Fraction(53, 100), aperiodic_point, Side.LEFT)
        assert condition.verdict is Verdict.FAILS
        assert (
            classifier.side_condition(Fraction(53, 100), aperiodic_point, Side.RIGHT).verdict
            is Verdict.HOLDS
        )

    def test_boundary_only_when_inexact(self):
        near = Fraction(618034, 1000000)
        inexact = Param(near, eps=Fraction(1, 1000), exact=False)
        exact = Param(near, eps=Fraction(1, 1000))
        assert classifier.side_condition(inexact, Fraction(3, 4)).verdict is Verdict.BOUNDARY
        assert classifier.side_condition(exact, Fraction(3, 4)).verdict is Verdict.FAILS

    def test_as_dict(self):
        payload = classifier.side_condition(Fraction(3, 5), Fraction(1, 4), Side.LEFT).as_dict()
        assert payload == {
            "side": "Left",
            "m": 2,
            "eta": "10",
            "polynomial": "a^2 + a - 1",
            "value": "24/25",
            "verdict": "Holds",
        }

    def test_both_rejected(self):
        with pytest.raises(DomainError):
            classifier.side_condition(Fraction(3, 5), Fraction(1, 4), Side.BOTH)


class TestCriticalParameter:

    def test_binding_left(self, aperiodic_point):
        critical = classifier.critical_parameter(aperiodic_point, Fraction(1, 10**9))
        assert critical.binding_side is Side.LEFT
        assert not critical.degenerate
        assert float(critical.bracket.midpoint) == pytest.approx(0.52612, abs=1e-4)
        assert critical.bracket.width <= Fraction(1, 10**9)

    def test_identical_sides(self):
        critical = classifier.critical_parameter(Fraction(3, 4))
        assert critical.binding_side is Side.BOTH
        assert float(critical.bracket.midpoint) == pytest.approx(0.6180339887, abs=1e-9)

    def test_conditions_flip_at_root(self, aperiodic_point):
        critical = classifier.critical_parameter(aperiodic_point)
        below, above = critical.bracket.lo, critical.bracket.hi
        for side in (Side.RIGHT, Side.LEFT):
            assert classifier.side_condition(below, aperiodic_point, side).verdict is Verdict.HOLDS
        assert classifier.side_condition(above, aperiodic_point, Side.LEFT).verdict is Verdict.FAILS

    def test_triadic_is_degenerate(self):
        critical = classifier.critical_parameter(Fraction(1, 3))
        assert critical.degenerate
        assert critical.as_dict()["a_star"] is None
        assert critical.as_dict()["binding_side"] is None

    def test_as_dict(self, aperiodic_point):
        payload = classifier.critical_parameter(aperiodic_point).as_dict()
        assert payload["x"] == "0.0220(2000202)"
        assert payload["binding_side"] == "Left"
        assert payload["conditions"][1]["polynomial"] == "a^7 + a^5 + a^3 + a^2 + a - 1 < 0"

    def test_infinitely_many_ones(self):
        with pytest.raises(PreconditionError):
            classifier.critical_parameter(Fraction(1, 2))
