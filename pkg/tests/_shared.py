"""Cached analysis results shared by several test modules."""

from __future__ import annotations

from functools import lru_cache

from unilab.analysis import GridSpec, classify, scan_sections, verify_theorems
from unilab.registry import Example, example

REGISTRY = [e.value for e in Example]
IN_U = [e.value for e in Example if e is not Example.Drastic_Umax]
GRID = GridSpec()


@lru_cache(maxsize=None)
def classification(name: str):
    return classify(example(name), GRID)


@lru_cache(maxsize=None)
def battery(name: str):
    return verify_theorems(example(name), GRID)


@lru_cache(maxsize=None)
def scan(name: str):
    return scan_sections(example(name), GRID)
