import numpy as np
import pytest

from hormander_lab.src.analysis import region
from hormander_lab.src.models.reports import ExponentRegion
from hormander_lab.src.utils.errors import ParameterError


@pytest.mark.parametrize(
    "point, expected",
    [
        ((0.5, 0.5), (True, False, True)),
        ((0.3, 0.4), (True, True, True)),
        ((0.9, 0.15), (False, False, True)),
        ((1.0, 1.0), (False, False, False)),
    ],
)
def test_archetypes(point, expected):
    membership = region.region_check(ExponentRegion(m=2, s=1.2, point=point))
    assert (membership.inside_Q, membership.inside_P, membership.inside_hull) == expected


def test_margin_is_positive_inside():
    inside = region.region_check(ExponentRegion(m=2, s=1.2, point=(0.3, 0.3)))
    assert inside.hull_interior
    assert inside.hull_margin > 0
    outside = region.region_check(ExponentRegion(m=2, s=1.2, point=(1.0, 1.0)))
    assert outside.hull_margin == 0.0


def test_slot_limit():
    with pytest.raises(ParameterError):
        region.region_check(ExponentRegion(m=4, s=2.0, point=(0.1,) * 4))


def test_hull_vertices():
    vertices = region.hull_vertices(2, 0.6)
    assert len(vertices) == 6


@pytest.mark.parametrize("m", [2, 3])
def test_agrees_with_qhull(rng, m):
    points = rng.uniform(0.0, 1.2, size=(300, m))
    assert region.oracle_disagreements(m, 1.2, 1, points) == 0
