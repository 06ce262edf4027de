"""The bundled theories and their golden files."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import UnknownFragment
from .golden import GoldenCase, parse_golden
from .syntax import Theory, parse_theory

FRAGMENTS = ("figure1", "extended")


def _data(filename: str) -> str:
    return resources.files("datrtag").joinpath("data", filename).read_text("utf-8")


def fragment_text(name: str) -> str:
    if name not in FRAGMENTS:
        raise UnknownFragment(name)
    return _data(f"{name}.datr")


def golden_text(name: str) -> str:
    if name not in FRAGMENTS:
        raise UnknownFragment(name)
    return _data(f"{name}.golden")


@lru_cache(maxsize=None)
def load_fragment(name: str) -> Theory:
    return parse_theory(fragment_text(name))


def golden_cases(name: str) -> list[GoldenCase]:
    return parse_golden(golden_text(name))
