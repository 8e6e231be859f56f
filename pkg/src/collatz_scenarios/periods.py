"""Periods and phases of scenarios.

Every scenario has start numbers ``M_k = A_M*k - B_M`` and end numbers
``N_k = A_N*k - B_N`` for ``k = 1, 2, ...``.  The quadruple is built by
starting from the scenario ``s`` and appending one op at a time; hooks
``s d^delta`` also have a closed form.  ``bruteforce_phase_oracle`` recovers
the same quadruple by scanning odd integers, independently of the append rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InvariantViolation, OracleNotFound
from .scenario import SPIKE, Hook, Scenario, as_scenario

ORACLE_MAX_LENGTH = 20


@dataclass(frozen=True)
class Realization:
    k: int
    start: int
    end: int

    def to_dict(self) -> dict:
        return {"k": str(self.k), "M_k": str(self.start), "N_k": str(self.end)}


@dataclass(frozen=True)
class PeriodPhase:
    """Start/end periods and phases of one scenario.

    Attributes keep the conventional names: ``start_period`` is A_M,
    ``start_phase`` B_M, ``end_period`` A_N and ``end_phase`` B_N.
    """

    start_period: int
    start_phase: int
    end_period: int
    end_phase: int

    def __iter__(self):
        return iter((self.start_period, self.start_phase, self.end_period, self.end_phase))

    def realize(self, k: int) -> Realization:
        return realize(self, k)

    def to_dict(self) -> dict:
        """JSON-safe record; integers are decimal strings."""
        return {
            "A_M": str(self.start_period),
            "B_M": str(self.start_phase),
            "A_N": str(self.end_period),
            "B_N": str(self.end_phase),
        }

    @classmethod
    def from_dict(cls, record: dict) -> PeriodPhase:
        return cls(
            int(record["A_M"]), int(record["B_M"]), int(record["A_N"]), int(record["B_N"])
        )


def check_invariants(pp: PeriodPhase) -> PeriodPhase:
    """Raise InvariantViolation unless ``pp`` has the parity/bound structure of a scenario."""
    a_m, b_m, a_n, b_n = pp
    problems = []
    if a_m <= 0 or a_m % 2:
        problems.append(f"start period {a_m} is not positive even")
    if a_n <= 0 or a_n % 2:
        problems.append(f"end period {a_n} is not positive even")
    if b_m % 2 == 0 or not 0 < b_m < a_m:
        problems.append(f"start phase {b_m} not odd in (0, {a_m})")
    if b_n % 2 == 0 or not 0 < b_n < a_n:
        problems.append(f"end phase {b_n} not odd in (0, {a_n})")
    if b_n % 3 == 0:
        problems.append(f"end phase {b_n} is divisible by 3")
    if problems:
        raise InvariantViolation("; ".join(problems))
    return pp


def base_case() -> PeriodPhase:
    """Quadruple of the scenario ``s``: M_k = 4k - 1, N_k = 6k - 1."""
    return PeriodPhase(4, 1, 6, 1)


def hook_period_phase(delta: int | Hook) -> PeriodPhase:
    """Closed form for the hook ``s d^delta``."""
    if isinstance(delta, Hook):
        delta = delta.delta
    if delta < 0:
        raise DomainError(f"hook delta must be >= 0, got {delta}")
    if delta % 2 == 0:
        return PeriodPhase(2 ** (delta + 2), (2 ** (delta + 1) + 1) // 3, 6, 1)
    return PeriodPhase(2 ** (delta + 2), (5 * 2 ** (delta + 1) + 1) // 3, 6, 5)


def append_s(pp: PeriodPhase, check: bool = __debug__) -> PeriodPhase:
    """Quadruple of the scenario extended by one spike.

    The spike acts directly on the odd end number ``A_N*k - B_N``; the branch
    depends on the parity of ``(3*B_N - 1)/2``.
    """
    a_m, b_m, a_n, b_n = pp
    half = (3 * b_n - 1) // 2
    if half % 2:
        out = PeriodPhase(2 * a_m, b_m, 3 * a_n, half)
    else:
        out = PeriodPhase(2 * a_m, b_m + a_m, 3 * a_n, (3 * b_n + 3 * a_n - 1) // 2)
    return check_invariants(out) if check else out


def append_d(pp: PeriodPhase, check: bool = __debug__) -> PeriodPhase:
    """Quadruple of the scenario extended by one down.

    The start-phase reduction in the even branch is taken modulo the new start
    period ``2*A_M``; modulo the old one gives wrong phases (e.g. 3 instead of
    7 for ``sd``).
    """
    a_m, b_m, a_n, b_n = pp
    half = (b_n + a_n // 2) // 2
    if half % 2:
        out = PeriodPhase(2 * a_m, b_m + a_m // 2, a_n, half)
    else:
        new_a_m = 2 * a_m
        out = PeriodPhase(
            new_a_m,
            (b_m + 3 * a_m // 2) % new_a_m,
            a_n,
            ((b_n + 3 * a_n // 2) // 2) % a_n,
        )
    return check_invariants(out) if check else out


def compute_period_phase(s: Scenario | str, check: bool = __debug__) -> PeriodPhase:
    """Fold the append rules over ``s`` starting from ``base_case()``."""
    s = as_scenario(s)
    pp = base_case()
    for op in s.word[1:]:
        pp = append_s(pp, check) if op == SPIKE else append_d(pp, check)
    if check:
        if pp.start_period != 2 ** (len(s) + 1) or pp.end_period != 2 * 3**s.sigma:
            raise InvariantViolation(
                f"periods ({pp.start_period}, {pp.end_period}) disagree with op counts of {s}"
            )
    return pp


def realize(pp: PeriodPhase, k: int) -> Realization:
    """k-th realization (1-based) of the progression ``pp``."""
    if k < 1:
        raise DomainError(f"realization index must be >= 1, got {k}")
    return Realization(k, pp.start_period * k - pp.start_phase, pp.end_period * k - pp.end_phase)


def concat_periods(pp1: PeriodPhase, pp2: PeriodPhase) -> tuple[int, int]:
    """(start period, end period) of the concatenation of two scenarios.

    Phases of a concatenation have no known closed form and are not returned.
    """
    return pp1.start_period * pp2.start_period // 2, pp1.end_period * pp2.end_period // 2


def _runs(m: int, word: str) -> int | None:
    """End value if ``word`` applies to odd ``m`` and ends odd, else None."""
    for op in word:
        if op == SPIKE:
            if not m & 1:
                return None
            m = (3 * m + 1) >> 1
        else:
            if m & 1:
                return None
            m >>= 1
    return m if m & 1 else None


def bruteforce_phase_oracle(s: Scenario | str, max_length: int = ORACLE_MAX_LENGTH) -> PeriodPhase:
    """Recover the quadruple of ``s`` by scanning odd start values.

    The least odd ``M <= A_M`` carrying ``s`` is the first realization; the
    phases follow as ``A_M - M_1`` and ``A_N - N_1`` with the periods taken
    from the op counts.  Cost grows like ``2**len(s)``, hence ``max_length``.
    """
    s = as_scenario(s)
    if len(s) > max_length:
        raise DomainError(f"scenario length {len(s)} exceeds oracle bound {max_length}")
    a_m = 2 ** (len(s) + 1)
    a_n = 2 * 3**s.sigma
    word = s.word
    for m in range(1, a_m + 1, 2):
        n = _runs(m, word)
        if n is not None:
            return PeriodPhase(a_m, a_m - m, a_n, a_n - n)
    raise OracleNotFound(f"no odd start number <= {a_m} realizes {s}")


def rho_metric(pp: PeriodPhase, k: int) -> Fraction:
    """Exact ``|M_k - N_k| / N_k`` for the k-th realization."""
    r = realize(pp, k)
    if r.end <= 0:
        raise DomainError(f"end number {r.end} is not positive")
    return Fraction(abs(r.start - r.end), r.end)


def render_decimal(value: Fraction, places: int = 4) -> str:
    """Round half-up to ``places`` decimals without going through float."""
    scale = 10**places
    scaled = (value * scale * 2 + 1) // 2
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(int(scaled)), scale)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


__all__ = [
    "PeriodPhase",
    "Realization",
    "append_d",
    "append_s",
    "base_case",
    "bruteforce_phase_oracle",
    "check_invariants",
    "compute_period_phase",
    "concat_periods",
    "hook_period_phase",
    "realize",
    "render_decimal",
    "rho_metric",
]
