"""Realizers for Sigma^b_1 formulas: tuple coding, the realizability
predicate, the realizer constructor and a brute-force truth oracle.

Tuple coding. A sequence <e1, ..., en> is the natural whose binary
expansion is ``"1"`` followed, for every element, by the element's binary
digits each prefixed with ``1`` and then the terminator ``"00"``.  So the
empty sequence is 1, <0> is 0b100 and <5> is 0b1111011100.  Sequence-hood,
length and projection all take one left-to-right scan of the code.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import BudgetExceeded, IndexOutOfRange, NotASequence, NotSigmaB1
from .hierarchy import classify, is_sharply_bounded, nnf
from .numsem import Budget, CostReport, Meter, Valuation, eval_atom, value_of
from .syntax import (
    And,
    Eq,
    ExistsBounded,
    ExistsSharp,
    ForallBounded,
    ForallSharp,
    Formula,
    Implies,
    Leq,
    Not,
    Or,
    Term,
)

Realizer = int

EMPTY_SEQ = 1

# --------------------------------------------------------------- coding


def encode_seq(items: Sequence[int], budget: Budget | None = None) -> Realizer:
    parts = ["1"]
    for e in items:
        if e < 0:
            raise ValueError("sequence elements must be natural numbers")
        if e:
            parts.append("".join("1" + b for b in bin(e)[2:]))
        parts.append("00")
    code = "".join(parts)
    limit = (budget or Budget()).max_bits
    if len(code) > limit:
        raise BudgetExceeded("bits", limit, len(code))
    return int(code, 2)


def _scan(r: int) -> list[int] | None:
    if r <= 0:
        return None
    s = bin(r)[3:]  # drop "0b" and the leading tag bit
    if len(s) % 2:
        return None
    items: list[int] = []
    digits: list[str] = []
    for i in range(0, len(s), 2):
        pair = s[i : i + 2]
        if pair == "00":
            items.append(int("".join(digits), 2) if digits else 0)
            digits = []
        elif pair[0] == "1":
            if not digits and pair[1] == "0":
                return None  # leading zero digit: not canonical
            digits.append(pair[1])
        else:
            return None
    if digits:
        return None  # unterminated element
    return items


def is_seq(r: int) -> bool:
    return _scan(r) is not None


def decode_seq(r: Realizer) -> list[int]:
    items = _scan(r)
    if items is None:
        raise NotASequence(f"{r} is not a sequence code")
    return items


def seq_len(r: Realizer) -> int:
    return len(decode_seq(r))


def beta(i: int, r: Realizer) -> int:
    """The i-th component (1-based) of the sequence coded by ``r``."""
    items = decode_seq(r)
    if not 1 <= i <= len(items):
        raise IndexOutOfRange(f"index {i} outside 1..{len(items)}")
    return items[i - 1]


def _decode_metered(r: int, m: Meter) -> list[int] | None:
    m.see(r)
    m.charge(r.bit_length() + 1)
    return _scan(r)


# -------------------------------------------------------------- oracle


def formula_truth(f: Formula, v: dict[str, int], m: Meter) -> bool:
    """Truth of ``f`` under ``v``, charging ``m``; the valuation is not mutated."""
    if isinstance(f, (Leq, Eq)):
        return eval_atom(f, v, m)
    m.charge(1)
    if isinstance(f, And):
        return formula_truth(f.left, v, m) and formula_truth(f.right, v, m)
    if isinstance(f, Or):
        return formula_truth(f.left, v, m) or formula_truth(f.right, v, m)
    if isinstance(f, Not):
        return not formula_truth(f.body, v, m)
    if isinstance(f, Implies):
        return (not formula_truth(f.left, v, m)) or formula_truth(f.right, v, m)
    bound = value_of(f.bound, v, m)
    if isinstance(f, (ExistsSharp, ForallSharp)):
        m.charge(bound.bit_length() + 1)
        bound = bound.bit_length()
    inner = dict(v)
    want = isinstance(f, (ExistsBounded, ExistsSharp))
    for y in range(bound + 1):
        m.charge(1)
        inner[f.var] = y
        if formula_truth(f.body, inner, m) == want:
            return want
    return not want


def brute_truth(phi: Formula, v: Valuation | None = None, budget: Budget | None = None) -> bool:
    """Classical truth in the standard model by exhaustive quantifier sweeps."""
    return formula_truth(phi, dict(v or {}), Meter(budget))


def brute_truth_cost(phi: Formula, v: Valuation | None = None, budget: Budget | None = None) -> tuple[bool, CostReport]:
    m = Meter(budget)
    return formula_truth(phi, dict(v or {}), m), m.report()


# ------------------------------------------------------------- checker


def _require_sigma(phi: Formula) -> None:
    if not classify(phi).sigma_b1:
        raise NotSigmaB1("formula is not Sigma^b_1")


def _check(f: Formula, r: int, v: dict[str, int], m: Meter) -> bool:
    if is_sharply_bounded(f):
        return formula_truth(f, v, m)
    m.charge(1)
    if isinstance(f, (Not, Implies)):
        return _check(nnf(f), r, v, m)
    if isinstance(f, (And, Or)):
        items = _decode_metered(r, m)
        # beta is total on FA's coding; out-of-range components read as 0
        r1 = items[0] if items and len(items) >= 1 else 0
        r2 = items[1] if items and len(items) >= 2 else 0
        if isinstance(f, And):
            return _check(f.left, r1, v, m) and _check(f.right, r2, v, m)
        return _check(f.left, r1, v, m) or _check(f.right, r2, v, m)
    if isinstance(f, ForallSharp):
        n = value_of(f.bound, v, m)
        m.charge(n.bit_length() + 1)
        n = n.bit_length()
        items = _decode_metered(r, m)
        if items is None or len(items) != n + 1:
            return False
        inner = dict(v)
        for y in range(n + 1):
            inner[f.var] = y
            if not _check(f.body, items[y], inner, m):
                return False
        return True
    if isinstance(f, (ExistsBounded, ExistsSharp)):
        bound = value_of(f.bound, v, m)
        if isinstance(f, ExistsSharp):
            m.charge(bound.bit_length() + 1)
            bound = bound.bit_length()
        items = _decode_metered(r, m)
        if items is None or len(items) != 2:
            return False
        witness, sub = items
        m.charge(max(witness.bit_length(), bound.bit_length()) + 1)
        if witness > bound:
            return False
        return _check(f.body, sub, {**v, f.var: witness}, m)
    if isinstance(f, ForallBounded):
        raise NotSigmaB1("unsharp universal quantifier in a Sigma^b_1 position")
    raise TypeError(f"not a formula: {f!r}")


def check_realizer(
    phi: Formula, r: Realizer, v: Valuation | None = None, budget: Budget | None = None
) -> tuple[bool, CostReport]:
    """Decide whether ``r`` realizes ``phi`` under ``v``.

    Sharply bounded formulas are decided by evaluation and ``r`` is ignored.
    Conjunctions and disjunctions read a pair; a sharp universal reads a
    sequence of |t|+1 sub-realizers; a bounded existential reads
    <witness, sub-realizer> with witness <= t.  Negations and implications
    are first pushed to negation normal form.
    """
    _require_sigma(phi)
    if r < 0:
        raise ValueError("realizers are natural numbers")
    m = Meter(budget)
    ok = _check(phi, r, dict(v or {}), m)
    return ok, m.report()


# ----------------------------------------------------------- constructor


def _build(f: Formula, v: dict[str, int], m: Meter) -> int | None:
    if is_sharply_bounded(f):
        return 0 if formula_truth(f, v, m) else None
    m.charge(1)
    if isinstance(f, (Not, Implies)):
        return _build(nnf(f), v, m)
    if isinstance(f, And):
        r1 = _build(f.left, v, m)
        if r1 is None:
            return None
        r2 = _build(f.right, v, m)
        if r2 is None:
            return None
        return _encode_metered([r1, r2], m)
    if isinstance(f, Or):
        r1 = _build(f.left, v, m)
        if r1 is not None:
            return _encode_metered([r1, 0], m)
        r2 = _build(f.right, v, m)
        if r2 is not None:
            return _encode_metered([0, r2], m)
        return None
    if isinstance(f, ForallSharp):
        n = value_of(f.bound, v, m)
        m.charge(n.bit_length() + 1)
        n = n.bit_length()
        inner = dict(v)
        subs = []
        for y in range(n + 1):
            inner[f.var] = y
            sub = _build(f.body, inner, m)
            if sub is None:
                return None
            subs.append(sub)
        return _encode_metered(subs, m)
    if isinstance(f, (ExistsBounded, ExistsSharp)):
        bound = value_of(f.bound, v, m)
        if isinstance(f, ExistsSharp):
            m.charge(bound.bit_length() + 1)
            bound = bound.bit_length()
        inner = dict(v)
        for y in range(bound + 1):
            m.charge(1)
            inner[f.var] = y
            sub = _build(f.body, inner, m)
            if sub is not None:
                return _encode_metered([y, sub], m)
        return None
    if isinstance(f, ForallBounded):
        raise NotSigmaB1("unsharp universal quantifier in a Sigma^b_1 position")
    raise TypeError(f"not a formula: {f!r}")


def _encode_metered(items: list[int], m: Meter) -> int:
    code = encode_seq(items, m.budget)
    m.charge(code.bit_length() + 1)
    return m.see(code)


def build_realizer(
    phi: Formula, v: Valuation | None = None, budget: Budget | None = None
) -> tuple[Realizer | None, CostReport]:
    """Construct a realizer for ``phi`` under ``v``, or None when ``phi`` is false.

    True sharply bounded formulas get the canonical realizer 0.  Disjunctions
    fill the slot of the leftmost true disjunct and put 0 in the other.
    Existentials take the least witness.
    """
    _require_sigma(phi)
    m = Meter(budget)
    r = _build(phi, dict(v or {}), m)
    return r, m.report()


# ------------------------------------------------------------ functions


def extract_function(
    phi: Formula,
    x_val: int,
    y_bound: Term | int,
    budget: Budget | None = None,
    *,
    x: str = "x",
    y: str = "y",
    params: Mapping[str, int] | None = None,
    meter: Meter | None = None,
) -> int | None:
    """Least ``y <= y_bound`` making ``phi(x_val, y)`` true, if any.

    ``y_bound`` is a term evaluated with ``x`` bound to ``x_val`` or a plain
    number. Extra free variables of ``phi`` are read from ``params``.
    Pass ``meter`` to collect the cost of the search.
    """
    _require_sigma(phi)
    m = meter or Meter(budget)
    env = {**(params or {}), x: x_val}
    limit = y_bound if isinstance(y_bound, int) else value_of(y_bound, env, m)
    for cand in range(limit + 1):
        env[y] = cand
        if formula_truth(phi, env, m):
            return cand
    return None
