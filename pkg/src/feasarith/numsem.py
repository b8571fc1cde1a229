"""Numeric semantics of terms with step and bit accounting.

Every node evaluation is charged in abstract bit operations:

=================  ==========================================
node               steps
=================  ==========================================
0, variable        1
S, half, |.|       bit_length(operand) + 1
s + t              max(|s|, |t|) + 1
s * t              |s| * |t| + 1
s # t              |s| * |t| + 1  (the bit length of the result)
s <= t, s = t      max(|s|, |t|) + 1
=================  ==========================================

``peak_bits`` records the largest bit length of any value produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import BudgetExceeded, UnboundVariable
from .syntax import Add, Eq, Half, Len, Leq, Mul, Smash, Succ, Term, Var, Zero

Valuation = Mapping[str, int]

DEFAULT_MAX_BITS = 1 << 20
DEFAULT_MAX_STEPS = 1 << 32


@dataclass(frozen=True, slots=True)
class Budget:
    max_bits: int = DEFAULT_MAX_BITS
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self):
        if self.max_bits <= 0 or self.max_steps <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True, slots=True)
class CostReport:
    steps: int = 0
    peak_bits: int = 0

    def as_dict(self) -> dict[str, int]:
        return {"steps": self.steps, "peak_bits": self.peak_bits}


def bit_length(n: int) -> int:
    """Number of binary digits of ``n``; bit_length(0) == 0."""
    if n < 0:
        raise ValueError("natural numbers only")
    return n.bit_length()


class Meter:
    """Mutable accumulator threaded through one evaluation."""

    __slots__ = ("budget", "steps", "peak_bits")

    def __init__(self, budget: Budget | None = None):
        self.budget = budget or Budget()
        self.steps = 0
        self.peak_bits = 0

    def charge(self, n: int) -> None:
        self.steps += n
        if self.steps > self.budget.max_steps:
            raise BudgetExceeded("steps", self.budget.max_steps, self.steps)

    def bits(self, nbits: int) -> None:
        if nbits > self.budget.max_bits:
            raise BudgetExceeded("bits", self.budget.max_bits, nbits)
        if nbits > self.peak_bits:
            self.peak_bits = nbits

    def see(self, value: int) -> int:
        self.bits(value.bit_length())
        return value

    def report(self) -> CostReport:
        return CostReport(self.steps, self.peak_bits)


def _eval(t: Term, v: Valuation, m: Meter) -> int:
    if isinstance(t, Succ):
        # walk S-chains iteratively; numerals are long chains
        depth = 0
        while isinstance(t, Succ):
            t = t.t
            depth += 1
        x = _eval(t, v, m)
        for _ in range(depth):
            m.charge(x.bit_length() + 1)
            x = m.see(x + 1)
        return x
    if isinstance(t, Zero):
        m.charge(1)
        return 0
    if isinstance(t, Var):
        m.charge(1)
        try:
            x = v[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
        if x < 0:
            raise ValueError(f"variable {t.name!r} bound to negative value {x}")
        return m.see(x)
    if isinstance(t, Half):
        x = _eval(t.t, v, m)
        m.charge(x.bit_length() + 1)
        return m.see(x >> 1)
    if isinstance(t, Len):
        x = _eval(t.t, v, m)
        m.charge(x.bit_length() + 1)
        return m.see(x.bit_length())
    a = _eval(t.s, v, m)
    b = _eval(t.t, v, m)
    la, lb = a.bit_length(), b.bit_length()
    if isinstance(t, Add):
        m.charge(max(la, lb) + 1)
        return m.see(a + b)
    if isinstance(t, Mul):
        m.charge(la * lb + 1)
        m.bits(max(0, la + lb - 1))  # lower bound on the product's length
        return m.see(a * b)
    if isinstance(t, Smash):
        out = la * lb + 1
        m.charge(out)
        m.bits(out)
        return 1 << (la * lb)
    raise TypeError(f"not a term: {t!r}")


def eval_term(t: Term, v: Valuation | None = None, budget: Budget | None = None) -> tuple[int, CostReport]:
    """Value of ``t`` under ``v`` together with its cost."""
    m = Meter(budget)
    value = _eval(t, v or {}, m)
    return value, m.report()


def value_of(t: Term, v: Valuation, m: Meter) -> int:
    """Evaluate under an existing meter."""
    return _eval(t, v, m)


def eval_atom(a: Leq | Eq, v: Valuation, m: Meter) -> bool:
    x = _eval(a.s, v, m)
    y = _eval(a.t, v, m)
    m.charge(max(x.bit_length(), y.bit_length()) + 1)
    return x <= y if isinstance(a, Leq) else x == y
