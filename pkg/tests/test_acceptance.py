"""Exit criteria.  Each test carries a ``criterion`` marker; the terminal summary
prints one PASS/FAIL line per criterion."""

import random
import time

import pytest

from collatz_scenarios import (
    Hook,
    StopRule,
    apply_scenario,
    bruteforce_phase_oracle,
    compute_period_phase,
    decompose_hooks,
    extract_scenario,
    link_odd,
    rho_metric,
    sweep_verify,
    verify_realization,
)
from collatz_scenarios.cli import main

from conftest import all_scenarios, random_scenario

# Hook table as printed, including the dotted thousands separators.
PRINTED_HOOK_TABLE = """\
0&4&1&6&1
1&8&7&6&5
2&16&3&6&1
3&32&27&6&5
4&64&11&6&1
5&128&107&6&5
6&256&43&6&1
7&512&427&6&5
8&1.024&171&6&1
9&2.048&1.707&6&5
10&4.096&683&6&1
11&8.192&6.827&6&5
12&16.384&2.731&6&1
13&32.768&27.307&6&5
14&65.536&10.923&6&1
15&131.072&109.227&6&5"""


@pytest.mark.criterion(1, "hooks 15 reproduces the 16-row hook table, < 0.1 s")
def test_ac1_hook_table(capsys):
    t0 = time.perf_counter()
    code = main(["hooks", "15"])
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out
    assert code == 0
    expected = [row.replace(".", "").replace("&", ",") for row in PRINTED_HOOK_TABLE.splitlines()]
    assert out.splitlines()[1:] == expected
    assert elapsed < 0.1


BIG = {
    "A_M": 1267650600228229401496703205376,
    "B_M": 1039655887956965120651972413057,
    "A_N": 2289122546861674989771899392854,
    "B_N": 1877409858577201070748176480485,
}
BIG_REALIZATIONS = [
    (227994712271264280844730792319, 411712688284473919023722912369),
    (1495645312499493682341433997695, 2700835235146148908795622305223),
    (2763295912727723083838137203071, 4989957782007823898567521698077),
]


@pytest.mark.criterion(2, "(s^7d^4)^9 periods, phases and 3 realizations exact, < 0.1 s")
def test_ac2_big_pattern():
    t0 = time.perf_counter()
    pp = compute_period_phase("(s^7d^4)^9")
    reals = [pp.realize(k) for k in (1, 2, 3)]
    elapsed = time.perf_counter() - t0
    assert tuple(pp) == (BIG["A_M"], BIG["B_M"], BIG["A_N"], BIG["B_N"])
    assert [(r.start, r.end) for r in reals] == BIG_REALIZATIONS
    assert elapsed < 0.1


FIGURE_ONE = {
    "ssd": (16, 5, 18, 5),
    "sdsdd": (64, 47, 18, 13),
    "sdds": (32, 3, 18, 1),
    "ssdd": (32, 13, 18, 7),
    "ssdsdd": (128, 117, 54, 49),
    "sdsdds": (128, 47, 54, 19),
    "ssdsdds": (256, 117, 162, 73),
}


@pytest.mark.criterion(3, "the seven Figure-1 scenarios give the printed M_k, N_k formulas")
@pytest.mark.parametrize("word", list(FIGURE_ONE))
def test_ac3_figure_one(word):
    assert tuple(compute_period_phase(word)) == FIGURE_ONE[word]


@pytest.mark.criterion(4, "500 random scenarios (len <= 24) x k=1..40 verify by simulation")
def test_ac4_simulation_equivalence():
    rng = random.Random(4)
    failures = []
    for _ in range(500):
        s = random_scenario(rng, 24)
        for k in range(1, 41):
            v = verify_realization(s, k)
            if not v:
                failures.append((s.word, k, v.detail))
    assert failures == []


@pytest.mark.criterion(5, "oracle == iteration: all len <= 12 plus 100 random len <= 16, < 60 s")
def test_ac5_oracle_equivalence():
    t0 = time.perf_counter()
    words = list(all_scenarios(12))
    assert len(words) == 2**12 - 1
    rng = random.Random(5)
    words += [random_scenario(rng, 16) for _ in range(100)]
    mismatches = [s.word for s in words if bruteforce_phase_oracle(s) != compute_period_phase(s)]
    elapsed = time.perf_counter() - t0
    assert mismatches == []
    assert elapsed < 60


@pytest.mark.criterion(6, "every non-RC0 n <= 10^6 linked: odd <= 7, even <= 6 steps, 0 failures, < 30 s")
def test_ac6_handle_sweep():
    rep = sweep_verify(10**6)
    assert rep.failures == []
    assert rep.odd_max_steps <= 7 and rep.even_max_steps <= 6
    assert rep.checked == 10**6 - 10**6 // 3
    assert rep.duration < 30


ODD_TABLE = [
    # hook delta, k, M, N for p = 0, 1, 2
    (0, [(1, 3, 5), (4, 15, 23), (7, 27, 41)]),
    (1, [(2, 9, 7), (5, 33, 25), (8, 57, 43)]),
    (2, [(3, 45, 17), (6, 93, 35), (9, 141, 53)]),
    (3, [(3, 69, 13), (6, 165, 31), (9, 261, 49)]),
    (4, [(2, 117, 11), (5, 309, 29), (8, 501, 47)]),
    (5, [(1, 21, 1), (4, 405, 19), (7, 789, 37)]),
]


@pytest.mark.criterion(7, "both odd-link tables (p = 0, 1, 2) and the 19 <- 405 / 33 example")
def test_ac7_odd_link_tables():
    for delta, rows in ODD_TABLE:
        pp = compute_period_phase(Hook(delta).scenario())
        for p, (k, m, n) in enumerate(rows):
            r = pp.realize(k)
            assert (r.start, r.end) == (m, n)
            lk = link_odd(n)
            assert (lk.handle, lk.steps, lk.scenario) == (m, 2 + delta, Hook(delta).scenario())
            assert lk.provenance["p"] == p and lk.provenance["k"] == k
            assert apply_scenario(m, lk.scenario).end == n
    lk = link_odd(19)
    assert (lk.handle, lk.steps) == (405, 7)
    s, t = extract_scenario(33, StopRule(sigma=2))
    assert (s.word, t.end, t.n_ops) == ("sdsd", 19, 6)


@pytest.mark.criterion(8, "rho((s^7d^4)^9, 1) = 0.45 +- 0.005, rho(s^7d^4, 1) = 0.064 +- 0.0005")
def test_ac8_rho():
    assert abs(float(rho_metric(compute_period_phase("(s^7d^4)^9"), 1)) - 0.45) <= 0.005
    assert abs(float(rho_metric(compute_period_phase("s^7d^4"), 1)) - 0.064) <= 0.0005


@pytest.mark.criterion(9, "end RC by last hook parity and RC stability under k -> k+3p, 1000 triples")
def test_ac9_residue_invariants():
    rng = random.Random(9)
    for _ in range(1000):
        s = random_scenario(rng, 32)
        k = rng.randint(1, 10**6)
        p = rng.randint(1, 10**6)
        pp = compute_period_phase(s)
        r, r3 = pp.realize(k), pp.realize(k + 3 * p)
        assert r.end % 3 == (2 if decompose_hooks(s)[-1].is_even else 1)
        assert (r.start % 3, r.end % 3) == (r3.start % 3, r3.end % 3)
