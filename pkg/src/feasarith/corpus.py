"""Random Sigma^b_1 formula corpora and the exhaustive agreement harness.

Corpus formulas have at most one free variable, ``x``. Entries cycle
through four shapes in blocks of ten: three Sigma-only formulas with an
unsharp existential, three sharply bounded ones, two built around a
negated or implied Pi^b_1 subformula, and two unconstrained Sigma^b_1
formulas.  Every block of 100 therefore meets the mix quotas.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .hierarchy import FormulaClass, classify
from .numsem import Budget
from .realize import brute_truth, build_realizer, check_realizer
from .syntax import (
    Add,
    And,
    Eq,
    ExistsBounded,
    ExistsSharp,
    ForallBounded,
    ForallSharp,
    Formula,
    Half,
    Implies,
    Len,
    Leq,
    Mul,
    Not,
    Or,
    Smash,
    Succ,
    Term,
    Var,
    free_vars,
    numeral,
    parse_formula,
    pretty,
)

FREE_VAR = "x"
BOUND_NAMES = ("y", "z", "w", "u", "v", "s", "r", "q")
SHAPES = ("sigma_only",) * 3 + ("sharp",) * 3 + ("negated",) * 2 + ("mixed",) * 2


@dataclass(frozen=True, slots=True)
class CorpusSpec:
    seed: int = 1
    max_depth: int = 5
    max_bound_value: int = 64
    count: int = 100

    def header(self) -> str:
        return (
            f"# corpus seed={self.seed} max_depth={self.max_depth} "
            f"max_bound_value={self.max_bound_value} count={self.count}"
        )


def uses_negation(phi: Formula) -> bool:
    if isinstance(phi, (Not, Implies)):
        return True
    if isinstance(phi, (And, Or)):
        return uses_negation(phi.left) or uses_negation(phi.right)
    if isinstance(phi, (Leq, Eq)):
        return False
    return uses_negation(phi.body)


def shape_of(cls: FormulaClass, phi: Formula) -> set[str]:
    tags = set()
    if cls.sigma_b1 and not cls.pi_b1:
        tags.add("sigma_only")
    if cls.sharply_bounded:
        tags.add("sharp")
    if uses_negation(phi):
        tags.add("negated")
    return tags


class _Gen:
    def __init__(self, rng: random.Random, spec: CorpusSpec):
        self.rng = rng
        self.spec = spec
        self.names = 0
        self.unsharp = 0  # unsharp quantifiers left to place

    # terms ---------------------------------------------------------------

    def leaf(self, scope: list[str]) -> Term:
        if scope and self.rng.random() < 0.75:
            return Var(self.rng.choice(scope))
        return numeral(self.rng.randint(0, 3))

    def term(self, scope: list[str], depth: int = 3) -> Term:
        if depth <= 1 or self.rng.random() < 0.35:
            return self.leaf(scope)
        op = self.rng.choice(["S", "+", "*", "#", "len", "half", "+", "S"])
        if op == "S":
            return Succ(self.term(scope, depth - 1))
        if op == "len":
            return Len(self.term(scope, depth - 1))
        if op == "half":
            return Half(self.term(scope, depth - 1))
        cls = {"+": Add, "*": Mul, "#": Smash}[op]
        return cls(self.term(scope, depth - 1), self.term(scope, depth - 1))

    def atom(self, scope: list[str]) -> Formula:
        s, t = self.term(scope), self.term(scope)
        return Leq(s, t) if self.rng.random() < 0.7 else Eq(s, t)

    # quantifier pieces ---------------------------------------------------

    def fresh(self) -> str:
        name = BOUND_NAMES[self.names % len(BOUND_NAMES)]
        if self.names >= len(BOUND_NAMES):
            name += str(self.names // len(BOUND_NAMES))
        self.names += 1
        return name

    def plain_bound(self, scope: list[str]) -> Term:
        if scope and self.rng.random() < 0.7:
            return Var(self.rng.choice(scope))
        return numeral(self.rng.randint(0, self.spec.max_bound_value))

    def sharp_bound(self, scope: list[str]) -> Term:
        return self.term(scope, 2)

    # formulas ------------------------------------------------------------

    def sharp(self, scope: list[str], depth: int) -> Formula:
        if depth <= 1:
            return self.atom(scope)
        k = self.rng.choice(["atom", "and", "or", "not", "imp", "ex", "all", "ex", "all"])
        if k == "atom":
            return self.atom(scope)
        if k in ("and", "or", "imp"):
            cls = {"and": And, "or": Or, "imp": Implies}[k]
            return cls(self.sharp(scope, depth - 1), self.sharp(scope, depth - 1))
        if k == "not":
            return Not(self.sharp(scope, depth - 1))
        bound = self.sharp_bound(scope)
        y = self.fresh()
        body = self.sharp(scope + [y], depth - 1)
        return (ExistsSharp if k == "ex" else ForallSharp)(y, bound, body)

    def sigma(self, scope: list[str], depth: int) -> Formula:
        return self._level(scope, depth, positive=True)

    def pi(self, scope: list[str], depth: int) -> Formula:
        return self._level(scope, depth, positive=False)

    def _level(self, scope: list[str], depth: int, positive: bool) -> Formula:
        """A Sigma^b_1 (positive) or Pi^b_1 formula."""
        if depth <= 1:
            return self.atom(scope)
        same = self.sigma if positive else self.pi
        dual = self.pi if positive else self.sigma
        kinds = ["sharp", "and", "or", "sharpq", "not", "imp"]
        if self.unsharp > 0:
            kinds += ["unsharp", "unsharp"]
        k = self.rng.choice(kinds)
        if k == "sharp":
            return self.sharp(scope, min(depth, 3))
        if k in ("and", "or"):
            return (And if k == "and" else Or)(same(scope, depth - 1), same(scope, depth - 1))
        if k == "not":
            return Not(dual(scope, depth - 1))
        if k == "imp":
            return Implies(dual(scope, depth - 1), same(scope, depth - 1))
        y = self.fresh()
        if k == "unsharp":
            self.unsharp -= 1
            bound = self.plain_bound(scope)
            cls = ExistsBounded if positive else ForallBounded
        else:
            bound = self.sharp_bound(scope)
            cls = ForallSharp if positive else ExistsSharp
        return cls(y, bound, same(scope + [y], depth - 1))

    def unsharp_q(self, scope: list[str], depth: int, positive: bool) -> Formula:
        self.unsharp -= 1
        y = self.fresh()
        cls = ExistsBounded if positive else ForallBounded
        return cls(y, self.plain_bound(scope), self._level(scope + [y], depth - 1, positive))

    def of_shape(self, shape: str) -> Formula:
        d = self.spec.max_depth
        scope = [FREE_VAR]
        self.names = 0
        self.unsharp = 2
        if shape == "sharp":
            return self.sharp(scope, d)
        if shape == "sigma_only":
            core = self.unsharp_q(scope, d - 1, positive=True)
            if self.rng.random() < 0.5:
                return core
            other = self.sharp(scope, 2)
            return And(core, other) if self.rng.random() < 0.5 else Or(other, core)
        if shape == "negated":
            pi_part = self.unsharp_q(scope, d - 1, positive=False)
            if self.rng.random() < 0.5:
                return Not(pi_part)
            return Implies(pi_part, self.sigma(scope, d - 2))
        return self.sigma(scope, d)


def _accept(shape: str, phi: Formula, cls: FormulaClass) -> bool:
    if not cls.sigma_b1 or not free_vars(phi) <= {FREE_VAR}:
        return False
    if shape == "mixed":
        return True
    return shape in shape_of(cls, phi)


def generate(spec: CorpusSpec) -> list[tuple[Formula, FormulaClass]]:
    """Deterministic corpus of ``spec.count`` classified Sigma^b_1 formulas."""
    rng = random.Random(spec.seed)
    gen = _Gen(rng, spec)
    out = []
    for i in range(spec.count):
        shape = SHAPES[i % len(SHAPES)]
        while True:
            phi = gen.of_shape(shape)
            cls = classify(phi)
            if _accept(shape, phi, cls):
                break
        out.append((phi, cls))
    return out


# ------------------------------------------------------------ file format


def dump_corpus(spec: CorpusSpec, formulas: Iterable[Formula]) -> str:
    lines = [spec.header()]
    lines += [pretty(f) for f in formulas]
    return "\n".join(lines) + "\n"


def write_corpus(path: str | Path, spec: CorpusSpec, formulas: Iterable[Formula]) -> None:
    Path(path).write_text(dump_corpus(spec, formulas))


def load_corpus(text: str) -> tuple[CorpusSpec | None, list[Formula]]:
    spec = None
    formulas = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            if spec is None and "seed" in fields:
                spec = CorpusSpec(**{k: int(v) for k, v in fields.items() if k in CorpusSpec.__slots__})
            continue
        formulas.append(parse_formula(line))
    return spec, formulas


def read_corpus(path: str | Path) -> tuple[CorpusSpec | None, list[Formula]]:
    return load_corpus(Path(path).read_text())


# ---------------------------------------------------------------- harness


def valuations(names: Iterable[str], cap: int) -> Iterable[dict[str, int]]:
    names = sorted(names)
    for values in itertools.product(range(cap + 1), repeat=len(names)):
        yield dict(zip(names, values))


def find_disagreement(phi: Formula, value_cap: int, budget: Budget | None = None) -> dict[str, int] | None:
    """First valuation (values <= value_cap) where realizer construction,
    realizer checking and brute-force truth disagree; None if they never do."""
    for v in valuations(free_vars(phi), value_cap):
        truth = brute_truth(phi, v, budget)
        r, _ = build_realizer(phi, v, budget)
        if (r is not None) != truth:
            return v
        if r is not None and not check_realizer(phi, r, v, budget)[0]:
            return v
    return None


def exhaustive_agreement(phi: Formula, value_cap: int, budget: Budget | None = None) -> bool:
    return find_disagreement(phi, value_cap, budget) is None
