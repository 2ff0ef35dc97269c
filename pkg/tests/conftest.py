"""Shared fixtures: small graphs with known homology."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from netscaffold import make_graph

SQRT2 = Fraction(math.sqrt(2.0))


@pytest.fixture
def unit_square():
    """K4 on the corners of the unit square: sides 1, diagonals sqrt(2)."""
    return make_graph(
        4,
        [
            (0, 1, 1),
            (1, 2, 1),
            (2, 3, 1),
            (0, 3, 1),
            (0, 2, SQRT2),
            (1, 3, SQRT2),
        ],
    )


@pytest.fixture
def diamond_with_tail():
    """Two filled triangles glued along an edge, plus a 3-edge tail.

    One homology class, two tied shortest representatives of length 5
    (around either side of the diamond and through the tail).
    """
    return make_graph(
        6,
        [
            (0, 1, 1),
            (1, 3, 1),
            (0, 2, 1),
            (2, 3, 1),
            (1, 2, 1),
            (3, 4, 1),
            (4, 5, 1),
            (0, 5, 1),
        ],
    )


@pytest.fixture
def theta_graph():
    """Cheap outer 4-cycle plus a costlier middle path: beta1 = 2.

    The two classes completing the basis are tied at length 5 and are
    dependent modulo the outer cycle, so the class choice is ambiguous.
    """
    return make_graph(
        5,
        [
            (0, 1, 1),
            (1, 2, 1),
            (2, 3, 1),
            (0, 3, 1),
            (0, 4, Fraction(3, 2)),
            (2, 4, Fraction(3, 2)),
        ],
    )


@pytest.fixture
def k4_distinct():
    """Complete graph on 4 vertices, all weights distinct."""
    return make_graph(
        4,
        [
            (0, 1, Fraction(10, 10)),
            (0, 2, Fraction(11, 10)),
            (0, 3, Fraction(12, 10)),
            (1, 2, Fraction(13, 10)),
            (1, 3, Fraction(14, 10)),
            (2, 3, Fraction(15, 10)),
        ],
    )
