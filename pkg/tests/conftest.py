import random

import pytest
from hypothesis import strategies as st

from collatz_scenarios import Scenario


def scenario_words(min_size=1, max_size=24):
    return st.text(alphabet="sd", min_size=min_size - 1, max_size=max_size - 1).map(lambda t: "s" + t)


def scenarios(min_size=1, max_size=24):
    return scenario_words(min_size, max_size).map(Scenario)


def random_scenario(rng: random.Random, max_len: int) -> Scenario:
    n = rng.randint(1, max_len)
    return Scenario("s" + "".join(rng.choice("sd") for _ in range(n - 1)))


def all_scenarios(max_len: int):
    """Every scenario word of length 1..max_len."""
    for n in range(1, max_len + 1):
        for bits in range(2 ** (n - 1)):
            tail = "".join("s" if bits >> i & 1 else "d" for i in range(n - 1))
            yield Scenario("s" + tail)


# acceptance criteria report -------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    prev = _CRITERIA.get(key, (marker.args[1], True))
    if rep.when == "call" or rep.failed:
        _CRITERIA[key] = (prev[0], prev[1] and not rep.failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        text, ok = _CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{key}: {text}")
