"""
Pytest configuration and shared fixtures for icotri tests.

Catalog complexes are built once per session; they are immutable, so
tests share them freely.
"""

import pytest

from icotri.catalog import build
from icotri.complex_core import SimplicialComplex, simplex
from icotri.monitoring import get_metrics


@pytest.fixture(scope="session")
def cp2():
    """ℂP²₁₀ built as the quotient of (S²×S²)₁₆."""
    return build("CP2_10").complex


@pytest.fixture(scope="session")
def s2xs2_16():
    return build("S2xS2_16").complex


@pytest.fixture(scope="session")
def s2xs2_16_prime():
    return build("S2xS2_16_prime").complex


@pytest.fixture(scope="session")
def s2xs2_12():
    return build("S2xS2_12").complex


@pytest.fixture(scope="session")
def icosahedron():
    return build("icosahedron").complex


@pytest.fixture(scope="session")
def octahedron():
    return build("octahedron").complex


@pytest.fixture
def square_pyramid_ball():
    """Two tetrahedra glued along a triangle: a 3-ball on 5 atoms."""
    return SimplicialComplex([simplex("a b c d"), simplex("a b c e")])


@pytest.fixture
def metrics():
    """The global metrics collector, reset around the test."""
    collector = get_metrics()
    collector.reset()
    yield collector
    collector.reset()
