from __future__ import annotations

import pytest

from qcluster import (
    Letter,
    StringWord,
    build_quiver,
    initial_seed,
    load_surface,
    pair_from_surface,
)

SURFACES = ("annulus", "pentagon", "hexagon", "square")

# A triangulation with an internal triangle: its quiver carries relations.
WHEEL3 = {
    "name": "wheel3",
    "arcs": [{"id": i, "kind": "internal"} for i in (1, 2, 3)]
    + [{"id": i, "kind": "boundary"} for i in range(4, 10)],
    "triangles": [[1, 2, 3], [4, 5, 1], [6, 7, 2], [8, 9, 3]],
}


@pytest.fixture(scope="session")
def surfaces():
    return {name: load_surface(name) for name in SURFACES}


@pytest.fixture(scope="session")
def quivers(surfaces):
    return {name: build_quiver(t) for name, t in surfaces.items()}


@pytest.fixture(scope="session")
def seeds(surfaces):
    return {name: initial_seed(pair_from_surface(t)) for name, t in surfaces.items()}


@pytest.fixture(scope="session")
def annulus(surfaces):
    return surfaces["annulus"]


@pytest.fixture(scope="session")
def pentagon(surfaces):
    return surfaces["pentagon"]


@pytest.fixture(scope="session")
def hexagon(surfaces):
    return surfaces["hexagon"]


@pytest.fixture(scope="session")
def square(surfaces):
    return surfaces["square"]


def make_word(quiver, vertices, letter_pairs):
    """Build a StringWord from (arrow_name, direct) pairs."""
    letters = tuple(
        Letter(quiver.arrow_named(name), direct) for name, direct in letter_pairs
    )
    return StringWord(tuple(vertices), letters)


@pytest.fixture(scope="session")
def g1_word(quivers):
    # the annulus arc crossing 1, 2, 1
    return make_word(quivers["annulus"], (1, 2, 1), [("a", True), ("b", False)])
