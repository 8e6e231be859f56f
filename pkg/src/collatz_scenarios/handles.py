"""Short links from handles (odd multiples of 3) to every other integer.

Odd targets are endnumbers of one of the hooks ``s .. sd^5`` started on a
handle; even targets come from six residue families.  Dispatch is pure residue
arithmetic.  Each link is replayed through the raw simulator before it is
trusted.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .engine import is_handle, run_ops
from .errors import DomainError, ScenarioMismatch
from .periods import hook_period_phase, realize
from .scenario import Hook, Scenario

# end residue mod 18 -> (hook delta, smallest k whose start number is a handle)
_ODD_FAMILIES = {5: (0, 1), 7: (1, 2), 17: (2, 3), 13: (3, 3), 11: (4, 2), 1: (5, 1)}

ODD_MAX_STEPS = 7
EVEN_MAX_STEPS = 6


@dataclass(frozen=True)
class HandleLink:
    """``handle`` reaches ``target`` after the first ``steps`` raw ops of ``scenario``.

    ``scenario`` is None only for the zero-step link of a target that is
    itself a handle.  ``provenance`` records which family produced the link.
    """

    target: int
    handle: int
    scenario: Scenario | None
    steps: int
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def ops(self) -> str:
        if self.scenario is None:
            return ""
        return self.scenario.raw_ops()[: self.steps]

    def to_dict(self) -> dict:
        return {
            "target": str(self.target),
            "handle": str(self.handle),
            "scenario": self.scenario.compressed() if self.scenario else "",
            "steps": self.steps,
            "ops": self.ops,
            "provenance": dict(sorted(self.provenance.items())),
        }


def link_odd(n: int) -> HandleLink:
    """Hook link from a handle to odd ``n``; at most 7 raw ops.

    Not necessarily the shortest link: 19 comes from 405 via ``sd^5`` in 7
    steps although 33 reaches it in 6.
    """
    if n < 1 or n % 2 == 0:
        raise DomainError(f"link_odd needs an odd positive integer, got {n}")
    if n % 3 == 0:
        return HandleLink(n, n, None, 0, {"family": "handle"})
    residue = n % 18
    delta, k0 = _ODD_FAMILIES[residue]
    p = (n - residue) // 18
    hook = Hook(delta)
    r = realize(hook_period_phase(delta), k0 + 3 * p)
    assert r.end == n, (n, r)
    scenario = hook.scenario()
    return HandleLink(
        n, r.start, scenario, scenario.raw_length, {"family": f"sd^{delta}", "k": k0 + 3 * p, "p": p}
    )


# (sub-series offset, j mod 3) -> (handle(p), hook delta or None for a lone 'u', steps)
_EVEN_FAMILIES = {
    (8, 0): (lambda p: 12 * p - 3, None, 1),
    (8, 2): (lambda p: 48 * p - 27, 1, 3),
    (8, 1): (lambda p: 192 * p - 171, 3, 5),
    (4, 0): (lambda p: 24 * p - 3, 0, 2),
    (4, 1): (lambda p: 96 * p - 75, 2, 4),
    (4, 2): (lambda p: 384 * p - 171, 4, 6),
}


def link_even(n: int) -> HandleLink:
    """Link from a handle to even, non-RC0 ``n``; at most 6 raw ops.

    ``n = 2m`` with ``m`` odd is the value one op before the end of the hook
    that reaches ``m``.  Multiples of 4 split into ``12j - 8`` and ``12j - 4``
    and then by ``j mod 3``.
    """
    if n < 1 or n % 2:
        raise DomainError(f"link_even needs an even positive integer, got {n}")
    if n % 3 == 0:
        raise DomainError(f"{n} is RC0; no handle reaches it going forward")
    if n % 4 == 2:
        base = link_odd(n // 2)
        prov = dict(base.provenance, family=base.provenance["family"] + " (penultimate)")
        return HandleLink(n, base.handle, base.scenario, base.steps - 1, prov)
    offset = 8 if n % 12 == 4 else 4
    j = (n + offset) // 12
    handle_of, delta, steps = _EVEN_FAMILIES[offset, j % 3]
    p = -(-j // 3)  # j = 3p, 3p-1 or 3p-2
    scenario = Scenario("s") if delta is None else Hook(delta).scenario()
    family = ("u" if delta is None else f"sd^{delta}") + f" (12j-{offset})"
    return HandleLink(n, handle_of(p), scenario, steps, {"family": family, "j": j, "p": p})


def link(n: int) -> HandleLink:
    """Dispatch on parity; RC0 even numbers have no link."""
    return link_odd(n) if n % 2 else link_even(n)


@dataclass(frozen=True)
class LinkVerdict:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def verify_link(lk: HandleLink) -> LinkVerdict:
    """Replay the link's raw ops from its handle and compare with the target."""
    if lk.handle < 1 or not is_handle(lk.handle):
        return LinkVerdict(False, f"{lk.handle} is not a handle")
    ops = lk.scenario.raw_ops() if lk.scenario is not None else ""
    if not 0 <= lk.steps <= len(ops):
        return LinkVerdict(False, f"steps={lk.steps} outside scenario of {len(ops)} raw ops")
    try:
        traj = run_ops(lk.handle, ops[: lk.steps], cap=1)
    except ScenarioMismatch as exc:
        return LinkVerdict(False, str(exc))
    if traj.end != lk.target:
        return LinkVerdict(False, f"{lk.handle} reaches {traj.end} after {lk.steps} ops, not {lk.target}")
    return LinkVerdict(True, f"{lk.handle} -> {lk.target} in {lk.steps} ops")


@dataclass
class SweepReport:
    limit: int
    odd_max_steps: int = 0
    even_max_steps: int = 0
    failures: list = field(default_factory=list)
    duration: float = 0.0
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: SweepReport) -> SweepReport:
        self.odd_max_steps = max(self.odd_max_steps, other.odd_max_steps)
        self.even_max_steps = max(self.even_max_steps, other.even_max_steps)
        self.failures.extend(other.failures)
        self.checked += other.checked
        return self

    def to_json(self) -> str:
        d = asdict(self)
        d["duration"] = round(self.duration, 3)
        return json.dumps(d, sort_keys=True)


def _sweep_range(lo: int, hi: int) -> SweepReport:
    rep = SweepReport(hi - 1)
    for n in range(lo, hi):
        if n % 3 == 0:
            continue
        lk = link(n)
        verdict = verify_link(lk)
        bound = ODD_MAX_STEPS if n % 2 else EVEN_MAX_STEPS
        if not verdict or lk.steps > bound:
            rep.failures.append({"n": n, "detail": verdict.detail, "steps": lk.steps})
        if n % 2:
            rep.odd_max_steps = max(rep.odd_max_steps, lk.steps)
        else:
            rep.even_max_steps = max(rep.even_max_steps, lk.steps)
        rep.checked += 1
    return rep


def sweep_verify(limit: int, workers: int = 1) -> SweepReport:
    """Build and verify the link of every non-RC0 ``n <= limit``."""
    if limit < 18:
        raise DomainError(f"sweep limit must be >= 18, got {limit}")
    t0 = time.perf_counter()
    report = SweepReport(limit)
    if workers <= 1:
        report.merge(_sweep_range(1, limit + 1))
    else:
        chunk = -(-limit // workers)
        bounds = [(lo, min(lo + chunk, limit + 1)) for lo in range(1, limit + 1, chunk)]
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_sweep_range, *zip(*bounds)):
                report.merge(part)
    report.failures.sort(key=lambda f: f["n"])
    report.duration = time.perf_counter() - t0
    return report


__all__ = [
    "HandleLink",
    "LinkVerdict",
    "SweepReport",
    "link",
    "link_even",
    "link_odd",
    "sweep_verify",
    "verify_link",
]
