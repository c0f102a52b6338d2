from functools import lru_cache

import pytest

from fanih.examples import EXAMPLES, example_fan
from fanih.oracle.sheaf import build_minimal_extension

import acclog

QUASI_CONVEX = ("simplex-2", "simplex-3", "square", "cube-face-fan", "cross-polytope",
                "cone-over-square", "cone-over-cube", "half-plane", "random-2d", "random-3d")
COMPLETE = ("simplex-2", "simplex-3", "square", "cube-face-fan", "cross-polytope",
            "random-2d", "random-3d")


@lru_cache(maxsize=None)
def _fan(name: str, seed: int):
    return example_fan(name, seed)


def fan(name: str, seed: int = 0):
    return _fan(name, seed)


@lru_cache(maxsize=None)
def _minimal(name: str, seed: int):
    return build_minimal_extension(fan(name, seed))


def minimal(name: str, seed: int = 0):
    return _minimal(name, seed)


@pytest.fixture(params=EXAMPLES)
def example_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if acclog.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acclog.LINES:
            terminalreporter.write_line(line)
