"""
Tests voor BoxDomain en de afgeleide random generators.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from saddle_analyzer.domain import BoxDomain, make_rng


class TestBoxDomain:
    """Test parsen, bevatten en sampling van box domeinen."""

    def test_parse_and_print(self) -> None:
        box = BoxDomain.parse("(-1,1)x(-2,2)")
        assert box.dimension == 2
        assert str(box) == "(-1,1)x(-2,2)"
        np.testing.assert_array_equal(box.lower, [-1.0, -2.0])
        np.testing.assert_array_equal(box.center, [0.0, 0.0])

    def test_parse_with_spaces_and_decimals(self) -> None:
        box = BoxDomain.parse(" (0, 0.5) x (-1.5, 3) ")
        assert box.bounds == [(0.0, 0.5), (-1.5, 3.0)]
        assert str(box) == "(0,0.5)x(-1.5,3)"

    @pytest.mark.parametrize("text", ["", "(1,0)", "(0,1)x", "(0,a)", "[0,1]", "(0,inf)"])
    def test_invalid_text(self, text: str) -> None:
        with pytest.raises(ValueError):
            BoxDomain.parse(text)

    def test_validator_accepts_text(self) -> None:
        box = BoxDomain.model_validate("(-1,1)x(-1,1)x(-1,1)")
        assert box == BoxDomain.cube(-1, 1, 3)

    def test_empty_bounds_rejected(self) -> None:
        with pytest.raises(ValidationError):
            BoxDomain(bounds=[])

    def test_open_and_closed_membership(self) -> None:
        box = BoxDomain.parse("(-1,1)x(-2,2)")
        assert box.contains([0.0, 1.9])
        assert not box.contains([1.0, 0.0])
        assert box.contains_closed([1.0, -2.0])
        assert not box.contains_closed([1.0, 2.0000001])

    def test_grid_includes_endpoints(self) -> None:
        x_axis, y_axis = BoxDomain.parse("(-1,1)x(-2,2)").grid([3, 5])
        np.testing.assert_array_equal(x_axis, [-1.0, 0.0, 1.0])
        assert y_axis[0] == -2.0 and y_axis[-1] == 2.0

    def test_grid_validation(self) -> None:
        box = BoxDomain.cube(0, 1, 2)
        with pytest.raises(ValueError):
            box.grid([1, 5])
        with pytest.raises(ValueError):
            box.grid([5])

    def test_samples_are_strictly_inside(self) -> None:
        box = BoxDomain.parse("(-1,1)x(-2,2)")
        points = box.sample(make_rng(0), 1000)
        assert points.shape == (1000, 2)
        assert all(box.contains(p) for p in points)


class TestMakeRng:
    """Test de seed afleiding."""

    def test_same_keys_same_stream(self) -> None:
        a = make_rng(42, 7).random(5)
        b = make_rng(42, 7).random(5)
        np.testing.assert_array_equal(a, b)

    def test_different_keys_differ(self) -> None:
        assert not np.array_equal(make_rng(42, 7).random(5), make_rng(42, 8).random(5))
