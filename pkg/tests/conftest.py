import os
import random
import sys

import hypothesis
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ojoin.games import GameStore  # noqa: E402

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def store():
    return GameStore()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def criterion(request):
    """Records one pass/fail line per acceptance criterion."""
    state = {}

    def record(name, detail=""):
        state["name"] = name
        state["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE.append((state.get("name", request.node.name), ok, state.get("detail", "")))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
