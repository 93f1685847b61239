import random
from pathlib import Path

import pytest

from pmcoh.planar_map import generate_family
from pmcoh.random_diagrams import random_diagrams

DATA = Path(__file__).parent / "data"

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def family_cases():
    """Every (family, m) the acceptance criteria mention."""
    cases = [("theta", m) for m in range(1, 7)]
    cases += [("dumbbell", m) for m in range(1, 7)]
    cases += [("prism-L", m) for m in range(2, 7)]
    cases += [("prism-C", 3), ("K4", 1)]
    return cases


@pytest.fixture(scope="session")
def families():
    return {case: generate_family(*case) for case in family_cases()}


@pytest.fixture(scope="session")
def random_set():
    return random_diagrams(seed=20240601, count=100, max_matching=6)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion, printed at session end."""
    store = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        store[number] = (title, ok, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE_KEY, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        title, ok, detail = store[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
