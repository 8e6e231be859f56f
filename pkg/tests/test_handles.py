import dataclasses
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from collatz_scenarios import (
    DomainError,
    Scenario,
    StopRule,
    apply_scenario,
    extract_scenario,
    is_handle,
    link,
    link_even,
    link_odd,
    sweep_verify,
    verify_link,
)


@pytest.mark.parametrize(
    "n, handle, word, steps",
    [(5, 3, "s", 2), (19, 405, "sddddd", 7), (23, 15, "s", 2), (1, 21, "sddddd", 7)],
)
def test_link_odd(n, handle, word, steps):
    lk = link_odd(n)
    assert (lk.handle, lk.scenario.word, lk.steps) == (handle, word, steps)
    assert verify_link(lk)


def test_link_odd_handle_is_degenerate():
    lk = link_odd(27)
    assert (lk.handle, lk.scenario, lk.steps) == (27, None, 0)
    assert verify_link(lk)


def test_link_odd_domain():
    with pytest.raises(DomainError):
        link_odd(4)


@pytest.mark.parametrize(
    "n, handle, word, steps, ops",
    [
        (28, 9, "s", 1, "u"),
        (4, 21, "sddd", 5, "udddd"),
        (20, 213, "sdddd", 6, "uddddd"),
        (16, 21, "sd", 3, "udd"),  # 36p-20 from 48p-27
        (32, 21, "s", 2, "ud"),  # 36p-4 from 24p-3
        (8, 21, "sdd", 4, "uddd"),  # 36p-28 from 96p-75
        (10, 3, "s", 1, "u"),  # double of 5
        (2, 21, "sddddd", 6, "uddddd"),  # double of 1
    ],
)
def test_link_even(n, handle, word, steps, ops):
    lk = link_even(n)
    assert (lk.handle, lk.scenario.word, lk.steps, lk.ops) == (handle, word, steps, ops)
    assert verify_link(lk)


@pytest.mark.parametrize("n", [6, 12, 7])
def test_link_even_domain(n):
    with pytest.raises(DomainError):
        link_even(n)


def test_even_family_handles_use_p_not_j():
    # the 36p-16 family: handle 384p-171; for n=20 (j=2, p=1) that is 213
    lk = link_even(20)
    assert lk.provenance["j"] == 2 and lk.provenance["p"] == 1
    assert lk.handle == 384 * 1 - 171
    assert 384 * 2 - 171 != lk.handle


def test_verify_link_detects_corruption():
    lk = link(4)
    assert verify_link(lk)
    assert not verify_link(dataclasses.replace(lk, steps=lk.steps + 1))
    assert not verify_link(dataclasses.replace(lk, steps=lk.steps - 1))
    assert not verify_link(dataclasses.replace(lk, handle=lk.handle + 6))
    assert not verify_link(dataclasses.replace(lk, handle=lk.handle + 2))  # not a handle


def test_links_not_minimal():
    lk = link_odd(19)
    assert (lk.handle, lk.steps) == (405, 7)
    # 33 gets there in 6 raw ops via sdsd
    s, t = extract_scenario(33, StopRule(sigma=2))
    assert s.word == "sdsd"
    assert t.end == 19 and t.n_ops == 6
    assert apply_scenario(33, "sdsd").end == 19


@given(st.integers(1, 10**40))
def test_link_any_size(n):
    if n % 6 == 0:
        return
    lk = link(n)
    assert verify_link(lk)
    assert is_handle(lk.handle) and lk.handle % 6 == 3
    assert lk.steps <= (7 if n % 2 else 6)


def test_link_to_dict_is_json_safe():
    d = link(19).to_dict()
    assert json.loads(json.dumps(d)) == d
    assert d["handle"] == "405" and d["scenario"] == "sd^5"


def test_sweep_smallest():
    rep = sweep_verify(18)
    assert rep.ok
    odd_targets = sorted(link_odd(n).target for n in range(1, 18, 2) if n % 3)
    assert odd_targets == [1, 5, 7, 11, 13, 17]
    for n in odd_targets:
        assert link_odd(n).provenance["p"] == 0


def test_sweep_100():
    rep = sweep_verify(100)
    assert rep.failures == []
    assert rep.odd_max_steps == 7 and rep.even_max_steps == 6
    assert rep.checked == sum(1 for n in range(1, 101) if n % 3)


def test_sweep_report_json():
    rep = sweep_verify(100)
    d = json.loads(rep.to_json())
    for key in ("limit", "odd_max_steps", "even_max_steps", "failures", "duration"):
        assert key in d
    assert d["limit"] == 100


def test_sweep_parallel_matches_serial():
    a = sweep_verify(5000)
    b = sweep_verify(5000, workers=3)
    assert (a.odd_max_steps, a.even_max_steps, a.failures, a.checked) == (
        b.odd_max_steps,
        b.even_max_steps,
        b.failures,
        b.checked,
    )


def test_sweep_limit_domain():
    with pytest.raises(DomainError):
        sweep_verify(17)


def test_scenario_in_link_is_hook():
    for n in range(1, 200):
        if n % 3:
            lk = link(n)
            assert isinstance(lk.scenario, Scenario)
            assert len(lk.scenario.hooks()) == 1
