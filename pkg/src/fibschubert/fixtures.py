"""Bundled E7 fixture polynomials."""

from __future__ import annotations

from importlib import resources

from .mpoly import MultiPoly, parse_poly, read_poly_text
from .rootdata import catalog

FIXTURES = {
    "e7-p5": ("e7_p5.poly", (4, 6, 5), 5),
    "e7-p6": ("e7_p6.poly", (4, 5, 6), 6),
}


def _key(name: str) -> str:
    key = name.lower().replace("_", "-")
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return key


def fixture_text(name: str) -> str:
    name = _key(name)
    fname = FIXTURES[name][0]
    return resources.files("fibschubert.data").joinpath(fname).read_text(encoding="utf-8")


def load_fixture(name: str) -> MultiPoly:
    return parse_poly(read_poly_text(fixture_text(name)), catalog("E7"))
