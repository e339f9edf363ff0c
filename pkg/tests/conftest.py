"""Shared fixtures: solver discovery, fake solver scripts, cached corpora."""

import os
import stat
import textwrap

import pytest
from hypothesis import HealthCheck, settings

from sepdfa.generators import ParityConfig, gen_parity_samples
from sepdfa.solver import find_solver

settings.register_profile(
    "sepdfa",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("sepdfa")


@pytest.fixture(scope="session")
def solver_cmd():
    """Command for a working DIMACS solver, or skip."""
    command = find_solver()
    if command is None:
        pytest.skip("no working SAT solver available")
    return command


@pytest.fixture
def fake_solver(tmp_path):
    """Factory writing an executable shell script that mimics a solver."""

    def make(body, name="fakesolver"):
        path = tmp_path / name
        path.write_text("#!/bin/sh\n" + textwrap.dedent(body))
        path.chmod(path.stat().st_mode | stat.S_IXUSR)
        return str(path)

    return make


_CORPUS_CACHE = {}


@pytest.fixture(scope="session")
def parity_corpus():
    """Memoised parity corpora keyed by (colours, length)."""

    def get(colours, length):
        key = (colours, length)
        if key not in _CORPUS_CACHE:
            _CORPUS_CACHE[key] = gen_parity_samples(
                ParityConfig(colours, length))
        return _CORPUS_CACHE[key]

    return get


def pytest_addoption(parser):
    parser.addoption(
        "--run-extended", action="store_true", default=False,
        help="run the long optional acceptance rows")


@pytest.fixture(scope="session")
def run_extended(request):
    return (request.config.getoption("--run-extended")
            or os.environ.get("SEPDFA_ACCEPT_EXTENDED") == "1")
