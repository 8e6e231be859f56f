"""Forward Collatz simulation with raw ``u`` (3m+1) and ``d`` (m/2) ops.

This is the ground truth every closed form in the package is checked against.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field

from .errors import BudgetExceeded, DomainError, ScenarioMismatch
from .periods import compute_period_phase, realize
from .scenario import SPIKE, Scenario, as_scenario

UP = "u"
DOWN = "d"

DEFAULT_VALUE_CAP = 10**5
DEFAULT_MAX_OPS = 10**6


class ResidueClass(enum.IntEnum):
    RC0 = 0
    RC1 = 1
    RC2 = 2


def classify_rc(n: int) -> ResidueClass:
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    return ResidueClass(n % 3)


def is_handle(n: int) -> bool:
    """Odd multiples of 3 are handles."""
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    return n % 2 == 1 and n % 3 == 0


@dataclass(frozen=True)
class Trajectory:
    """Values visited by a run of raw ops.

    ``values`` and ``ops`` hold at most ``cap`` values; ``n_ops`` and ``end``
    always describe the full run, so long extractions stay cheap.
    """

    values: tuple[int, ...]
    ops: str
    n_ops: int
    end: int

    @property
    def start(self) -> int:
        return self.values[0]

    @property
    def truncated(self) -> bool:
        return len(self.ops) < self.n_ops

    def __len__(self):
        return self.n_ops

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_trajectory_csv(self, buf)
        return buf.getvalue()


class _Recorder:
    def __init__(self, start: int, cap: int):
        if cap < 1:
            raise DomainError(f"value cap must be >= 1, got {cap}")
        self.values = [start]
        self.ops: list[str] = []
        self.cap = cap
        self.n_ops = 0
        self.current = start

    def push(self, op: str, value: int):
        self.n_ops += 1
        self.current = value
        if len(self.values) < self.cap:
            self.values.append(value)
            self.ops.append(op)

    def freeze(self) -> Trajectory:
        return Trajectory(tuple(self.values), "".join(self.ops), self.n_ops, self.current)


def collatz_step(m: int) -> tuple[str, int]:
    if m % 2:
        return UP, 3 * m + 1
    return DOWN, m // 2


def run_ops(m: int, ops: str, cap: int = DEFAULT_VALUE_CAP) -> Trajectory:
    """Replay a raw op string from ``m``, refusing any op the Collatz rules forbid."""
    if m < 1:
        raise DomainError(f"start value must be positive, got {m}")
    rec = _Recorder(m, cap)
    for i, op in enumerate(ops):
        cur = rec.current
        if op == UP:
            if cur % 2 == 0:
                raise ScenarioMismatch(i, cur, "'u' needs an odd value")
            rec.push(UP, 3 * cur + 1)
        elif op == DOWN:
            if cur % 2:
                raise ScenarioMismatch(i, cur, "'d' needs an even value")
            rec.push(DOWN, cur // 2)
        else:
            raise ValueError(f"unknown raw op {op!r}")
    return rec.freeze()


def apply_scenario(m: int, s: Scenario | str, cap: int = DEFAULT_VALUE_CAP) -> Trajectory:
    """Run scenario ``s`` from odd ``m``; each spike expands to ``u`` then ``d``.

    Raises ScenarioMismatch when ``m`` is not a start number of ``s``, i.e. an
    op meets the wrong parity or the run ends on an even value.
    """
    s = as_scenario(s)
    if m < 1 or m % 2 == 0:
        raise DomainError(f"start number must be odd and positive, got {m}")
    traj = run_ops(m, s.raw_ops(), cap)
    if traj.end % 2 == 0:
        raise ScenarioMismatch(traj.n_ops, traj.end, "scenario must end on an odd value")
    return traj


@dataclass(frozen=True)
class StopRule:
    """When ``extract_scenario`` stops.

    With ``sigma`` set, stop on the first odd value after that many spikes;
    otherwise stop when the value reaches 1 (after at least one op).
    ``max_ops`` is a hard budget in both modes.
    """

    sigma: int | None = None
    max_ops: int = DEFAULT_MAX_OPS

    @classmethod
    def parse(cls, text: str, max_ops: int = DEFAULT_MAX_OPS) -> StopRule:
        """Accepts ``"one"`` or ``"sigma=K"``."""
        text = text.strip()
        if text == "one":
            return cls(None, max_ops)
        key, sep, val = text.partition("=")
        if sep and key.strip() == "sigma" and val.strip().isdigit() and int(val) >= 1:
            return cls(int(val), max_ops)
        raise ValueError(f"stop rule must be 'one' or 'sigma=K' with K >= 1, got {text!r}")


def extract_scenario(
    m: int, stop: StopRule | None = None, cap: int = DEFAULT_VALUE_CAP
) -> tuple[Scenario, Trajectory]:
    """Run the raw Collatz rules from odd ``m`` and spell the run as a scenario."""
    stop = stop or StopRule()
    if m < 1 or m % 2 == 0:
        raise DomainError(f"start number must be odd and positive, got {m}")
    rec = _Recorder(m, cap)
    word: list[str] = []
    spikes = 0
    while True:
        cur = rec.current
        if cur % 2:
            if stop.sigma is not None and spikes == stop.sigma:
                break
            if stop.sigma is None and cur == 1 and rec.n_ops:
                break
            if rec.n_ops + 2 > stop.max_ops:
                raise BudgetExceeded(stop.max_ops, cur)
            up = 3 * cur + 1
            rec.push(UP, up)
            rec.push(DOWN, up // 2)
            word.append(SPIKE)
            spikes += 1
        else:
            if rec.n_ops + 1 > stop.max_ops:
                raise BudgetExceeded(stop.max_ops, cur)
            rec.push(DOWN, cur // 2)
            word.append(DOWN)
    return Scenario("".join(word)), rec.freeze()


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome with a human-readable reason; truthy iff ``ok``."""

    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok


def verify_realization(s: Scenario | str, k: int) -> Verdict:
    """Check by simulation that the k-th realization of ``s`` runs from M_k to N_k."""
    s = as_scenario(s)
    r = realize(compute_period_phase(s), k)
    data = {"k": k, "M_k": r.start, "N_k": r.end}
    try:
        traj = apply_scenario(r.start, s, cap=2)
    except (ScenarioMismatch, DomainError) as exc:
        return Verdict(False, f"M_{k}={r.start}: {exc}", data)
    if traj.end != r.end:
        return Verdict(False, f"M_{k}={r.start} ends at {traj.end}, expected N_{k}={r.end}", data)
    return Verdict(True, f"M_{k}={r.start} -> N_{k}={r.end}", data)


def write_trajectory_csv(traj: Trajectory, stream) -> None:
    """Columns ``step,op,value``; the first row carries op ``·``."""
    if traj.truncated:
        raise ValueError("trajectory was truncated; raise the value cap to export it")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["step", "op", "value"])
    writer.writerow([0, "·", str(traj.values[0])])
    for i, (op, value) in enumerate(zip(traj.ops, traj.values[1:]), start=1):
        writer.writerow([i, op, str(value)])


def read_trajectory_csv(stream) -> Trajectory:
    rows = list(csv.DictReader(stream))
    values = tuple(int(r["value"]) for r in rows)
    ops = "".join(r["op"] for r in rows[1:])
    return Trajectory(values, ops, len(ops), values[-1])
