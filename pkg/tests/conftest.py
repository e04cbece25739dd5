import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=15, deadline=None)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

np.seterr(all="raise")


@pytest.fixture(scope="session")
def census():
    """census(n) -> list of SeidelMatrix, every order computed once per session."""
    levels = generated_levels()
    return lambda n: [g.matrix for g in levels(n)]


_LEVELS: dict = {}
_TIMING: dict = {}


def generated_levels():
    """levels(n) -> list of Generated with aut orders filled in."""
    import time

    from seidelgen.canonical import seidel_canon
    from seidelgen.generator import Generated, generate_levels

    def get(n):
        if n not in _LEVELS:
            t0 = time.perf_counter()
            for order, level in generate_levels(n):
                if order not in _LEVELS:
                    if level and not level[0].aut_order:
                        level = [Generated(g.matrix, seidel_canon(g.matrix).aut_order, g.certificate) for g in level]
                    _LEVELS[order] = level
            _TIMING[n] = time.perf_counter() - t0
        return _LEVELS[n]

    return get


@pytest.fixture(scope="session")
def levels():
    return generated_levels()


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
