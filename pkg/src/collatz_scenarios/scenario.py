"""Scenario words over {s, d} and the compressed repetition grammar.

Grammar (whitespace-insensitive, case-sensitive)::

    scenario := term+
    term     := atom ['^' uint]
    atom     := 's' | 'd' | '(' scenario ')'

Parenthesized powers may nest.  Formatting only ever emits flat words or
plain run-length form such as ``s^2d^3``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ScenarioSyntaxError, ScenarioValidationError

SPIKE = "s"
DOWN = "d"

DEFAULT_MAX_LENGTH = 10**6

_WORD_RE = re.compile(r"s[sd]*\Z")


class ScenarioStats(NamedTuple):
    sigma: int
    delta_total: int


@dataclass(frozen=True)
class Hook:
    """The scenario ``s d^delta``."""

    delta: int

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"hook delta must be >= 0, got {self.delta}")

    @property
    def is_even(self) -> bool:
        return self.delta % 2 == 0

    @property
    def word(self) -> str:
        return SPIKE + DOWN * self.delta

    def scenario(self) -> Scenario:
        return Scenario(self.word)


@dataclass(frozen=True)
class Scenario:
    """A non-empty word over {s, d} that starts with ``s``.

    ``s`` is the spike ``m -> (3m+1)/2`` on an odd value, ``d`` halves an even
    value.  Instances are immutable and hashable.
    """

    word: str

    def __post_init__(self):
        if not isinstance(self.word, str):
            raise TypeError(f"scenario word must be str, got {type(self.word).__name__}")
        if not self.word:
            raise ScenarioValidationError("empty scenario")
        if not _WORD_RE.match(self.word):
            if self.word[0] == DOWN and set(self.word) <= {SPIKE, DOWN}:
                raise ScenarioValidationError(f"scenario must start with 's': {self.word!r}")
            raise ScenarioValidationError(f"not a word over {{s, d}}: {self.word!r}")

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return self.word

    def __add__(self, other: Scenario) -> Scenario:
        if not isinstance(other, Scenario):
            return NotImplemented
        return Scenario(self.word + other.word)

    @property
    def sigma(self) -> int:
        return self.word.count(SPIKE)

    @property
    def delta(self) -> int:
        return self.word.count(DOWN)

    @property
    def stats(self) -> ScenarioStats:
        return ScenarioStats(self.sigma, self.delta)

    @property
    def raw_length(self) -> int:
        """Number of raw u/d operations, ``2*sigma + delta``."""
        return 2 * self.sigma + self.delta

    def raw_ops(self) -> str:
        return self.word.replace(SPIKE, "ud")

    def hooks(self) -> list[Hook]:
        return decompose_hooks(self)

    def compressed(self) -> str:
        return format_scenario(self, compressed=True)


class _Parser:
    def __init__(self, text: str, max_length: int):
        self.text = text
        self.pos = 0
        self.max_length = max_length
        self._skip_ws()

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _advance(self):
        self.pos += 1
        self._skip_ws()

    def parse(self) -> str:
        if not self._peek():
            raise ScenarioValidationError("empty scenario")
        word = self._sequence()
        if self._peek():
            raise ScenarioSyntaxError(f"unexpected {self._peek()!r}", self.pos)
        return word

    def _sequence(self) -> str:
        parts = []
        length = 0
        while self._peek() in (SPIKE, DOWN, "("):
            part = self._term()
            length += len(part)
            self._check_length(length)
            parts.append(part)
        if not parts:
            found = self._peek() or "end of input"
            raise ScenarioSyntaxError(f"expected 's', 'd' or '(', found {found!r}", self.pos)
        return "".join(parts)

    def _term(self) -> str:
        ch = self._peek()
        if ch == "(":
            self._advance()
            atom = self._sequence()
            if self._peek() != ")":
                raise ScenarioSyntaxError("missing ')'", self.pos)
            self._advance()
        else:
            atom = ch
            self._advance()
        if self._peek() != "^":
            return atom
        self._advance()
        exponent = self._uint()
        self._check_length(len(atom) * exponent)
        return atom * exponent

    def _uint(self) -> int:
        start = self.pos
        digits = []
        while self._peek() and self._peek() in "0123456789":
            digits.append(self._peek())
            self.pos += 1
        if not digits:
            raise ScenarioSyntaxError("expected exponent after '^'", start)
        value = int("".join(digits))
        if value == 0:
            raise ScenarioSyntaxError("exponent must be >= 1", start)
        self._skip_ws()
        return value

    def _check_length(self, length: int):
        if length > self.max_length:
            raise ScenarioValidationError(
                f"expanded scenario length {length} exceeds limit {self.max_length}"
            )


def parse_scenario(text: str, max_length: int = DEFAULT_MAX_LENGTH) -> Scenario:
    """Parse scenario text such as ``"ssd"`` or ``"(s^7d^4)^9"`` into a flat Scenario.

    Raises ScenarioSyntaxError for malformed text and ScenarioValidationError
    when the expanded word is empty, starts with ``d`` or exceeds ``max_length``.
    """
    word = _Parser(text, max_length).parse()
    return Scenario(word)


def as_scenario(value: Scenario | Hook | str) -> Scenario:
    """Coerce text or a Hook to a Scenario; Scenarios pass through."""
    if isinstance(value, Scenario):
        return value
    if isinstance(value, Hook):
        return value.scenario()
    if isinstance(value, str):
        return parse_scenario(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a scenario")


def format_scenario(s: Scenario, compressed: bool = False) -> str:
    if not compressed:
        return s.word
    out = []
    for ch, run in itertools.groupby(s.word):
        n = len(list(run))
        out.append(ch if n == 1 else f"{ch}^{n}")
    return "".join(out)


def decompose_hooks(s: Scenario) -> list[Hook]:
    """Split ``s`` into hooks: ``sd^a sd^b ...`` gives ``[Hook(a), Hook(b), ...]``."""
    return [Hook(len(chunk) - 1) for chunk in re.findall(r"sd*", s.word)]


def concat_scenarios(a: Scenario, b: Scenario) -> Scenario:
    return a + b
