"""Syntactic classification into sharply bounded / Sigma^b_1 / Pi^b_1, and
negation normal form."""

from __future__ import annotations

from dataclasses import dataclass

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
    Succ,
)


@dataclass(frozen=True, slots=True)
class FormulaClass:
    sharply_bounded: bool
    sigma_b1: bool
    pi_b1: bool

    @property
    def delta_b1_syntactic(self) -> bool:
        """Both flags set. Not the provable-equivalence notion of Delta^b_1."""
        return self.sigma_b1 and self.pi_b1

    def as_dict(self) -> dict[str, bool]:
        return {"sharp": self.sharply_bounded, "sigma_b1": self.sigma_b1, "pi_b1": self.pi_b1}


def _classify(f: Formula) -> tuple[bool, bool, bool]:
    """(sharp, sigma, pi) in one bottom-up pass."""
    if isinstance(f, (Leq, Eq)):
        return True, True, True
    if isinstance(f, (And, Or)):
        s1, g1, p1 = _classify(f.left)
        s2, g2, p2 = _classify(f.right)
        return s1 and s2, g1 and g2, p1 and p2
    if isinstance(f, Not):
        s, g, p = _classify(f.body)
        return s, p, g
    if isinstance(f, Implies):
        s1, g1, p1 = _classify(f.left)
        s2, g2, p2 = _classify(f.right)
        return s1 and s2, p1 and g2, g1 and p2
    s, g, p = _classify(f.body)
    if isinstance(f, ExistsBounded):
        return False, g, False
    if isinstance(f, ForallBounded):
        return False, False, p
    # a sharp bound |t| is also an ordinary bound, so both clauses apply
    if isinstance(f, (ExistsSharp, ForallSharp)):
        return s, g, p
    raise TypeError(f"not a formula: {f!r}")


def classify(phi: Formula) -> FormulaClass:
    s, g, p = _classify(phi)
    # sharply bounded formulas sit in both classes by the base clauses
    return FormulaClass(s, g or s, p or s)


def is_sharply_bounded(phi: Formula) -> bool:
    return _classify(phi)[0]


def negated_atom_eval_form(a: Leq | Eq) -> Formula:
    """Positive, quantifier-free equivalent of NOT a."""
    if isinstance(a, Leq):
        return Leq(Succ(a.t), a.s)
    if isinstance(a, Eq):
        return Or(Leq(Succ(a.s), a.t), Leq(Succ(a.t), a.s))
    raise TypeError(f"not an atom: {a!r}")


_DUAL = {
    ExistsBounded: ForallBounded,
    ForallBounded: ExistsBounded,
    ExistsSharp: ForallSharp,
    ForallSharp: ExistsSharp,
}


def nnf(phi: Formula) -> Formula:
    """Negation normal form with implications eliminated and negated atoms
    rewritten as positive atoms. The result contains no Not and no Implies."""
    return _pos(phi)


def _pos(f: Formula) -> Formula:
    if isinstance(f, (Leq, Eq)):
        return f
    if isinstance(f, And):
        return And(_pos(f.left), _pos(f.right))
    if isinstance(f, Or):
        return Or(_pos(f.left), _pos(f.right))
    if isinstance(f, Implies):
        return Or(_neg(f.left), _pos(f.right))
    if isinstance(f, Not):
        return _neg(f.body)
    return type(f)(f.var, f.bound, _pos(f.body))


def _neg(f: Formula) -> Formula:
    """nnf of NOT f."""
    if isinstance(f, (Leq, Eq)):
        return negated_atom_eval_form(f)
    if isinstance(f, And):
        return Or(_neg(f.left), _neg(f.right))
    if isinstance(f, Or):
        return And(_neg(f.left), _neg(f.right))
    if isinstance(f, Implies):
        return And(_pos(f.left), _neg(f.right))
    if isinstance(f, Not):
        return _pos(f.body)
    return _DUAL[type(f)](f.var, f.bound, _neg(f.body))
