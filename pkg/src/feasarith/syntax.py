"""Terms and formulas of bounded arithmetic: AST, parser, printer.

Surface grammar (ASCII)::

    term    := "0" | numeral | ident | "S(" term ")" | "half(" term ")"
             | "|" term "|" | "(" term ")" | term "+" term
             | term "*" term | term "#" term
    atom    := term "<=" term | term "=" term
    formula := atom | "NOT" formula | formula "AND" formula
             | formula "OR" formula | formula "IMPLIES" formula
             | ("EX" | "ALL") ident "<=" term "." formula
             | "(" formula ")"

``#`` binds tighter than ``*``, which binds tighter than ``+``; all three
are left-associative.  Among connectives NOT > AND > OR > IMPLIES, with
IMPLIES right-associative.  A quantifier body extends as far right as
possible.  A numeral ``n`` is shorthand for ``S(...S(0)...)``.

A quantifier whose bound is written ``|t|`` is sharp; its node stores the
inner term ``t``.  Bound variables are renamed apart while parsing so no
binder shadows a free variable or another binder.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError

# Succ chains are recursive structures; deeper ones hit the interpreter's
# recursion limit during comparison and hashing.
MAX_NUMERAL = 128

KEYWORDS = frozenset({"EX", "ALL", "NOT", "AND", "OR", "IMPLIES"})
RESERVED = KEYWORDS | {"S", "half"}


# ---------------------------------------------------------------- terms


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Succ:
    t: Term


@dataclass(frozen=True, slots=True)
class Add:
    s: Term
    t: Term


@dataclass(frozen=True, slots=True)
class Mul:
    s: Term
    t: Term


@dataclass(frozen=True, slots=True)
class Len:
    t: Term


@dataclass(frozen=True, slots=True)
class Half:
    t: Term


@dataclass(frozen=True, slots=True)
class Smash:
    s: Term
    t: Term


Term = Union[Zero, Var, Succ, Add, Mul, Len, Half, Smash]
TERM_TYPES = (Zero, Var, Succ, Add, Mul, Len, Half, Smash)


def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> int | None:
    """Return n if ``t`` is the closed chain S^n(0), else None."""
    n = 0
    while isinstance(t, Succ):
        t = t.t
        n += 1
    return n if isinstance(t, Zero) else None


# ------------------------------------------------------------- formulas


@dataclass(frozen=True, slots=True)
class Leq:
    s: Term
    t: Term


@dataclass(frozen=True, slots=True)
class Eq:
    s: Term
    t: Term


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Not:
    body: Formula


@dataclass(frozen=True, slots=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class ExistsBounded:
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True, slots=True)
class ForallBounded:
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True, slots=True)
class ExistsSharp:
    """(EX var <= |bound|) body."""

    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True, slots=True)
class ForallSharp:
    """(ALL var <= |bound|) body."""

    var: str
    bound: Term
    body: Formula


Formula = Union[
    Leq, Eq, And, Or, Not, Implies, ExistsBounded, ForallBounded, ExistsSharp, ForallSharp
]
Atom = Union[Leq, Eq]
Quantifier = Union[ExistsBounded, ForallBounded, ExistsSharp, ForallSharp]
QUANTIFIERS = (ExistsBounded, ForallBounded, ExistsSharp, ForallSharp)
SHARP = (ExistsSharp, ForallSharp)
EXISTS = (ExistsBounded, ExistsSharp)


def is_term(x: object) -> bool:
    return isinstance(x, TERM_TYPES)


def make_quantifier(exists: bool, var: str, bound: Term, body: Formula) -> Quantifier:
    """Build the right quantifier node; a bound of the form |t| makes it sharp."""
    if isinstance(bound, Len):
        return (ExistsSharp if exists else ForallSharp)(var, bound.t, body)
    return (ExistsBounded if exists else ForallBounded)(var, bound, body)


def written_bound(q: Quantifier) -> Term:
    """The bound as it appears in the surface syntax."""
    return Len(q.bound) if isinstance(q, SHARP) else q.bound


# --------------------------------------------------------- traversals


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, (Succ, Len, Half)):
            stack.append(u.t)
        elif isinstance(u, (Add, Mul, Smash)):
            stack.append(u.t)
            stack.append(u.s)


def free_vars(x: Term | Formula) -> frozenset[str]:
    """Variables with at least one free occurrence in ``x``."""
    if is_term(x):
        return frozenset(u.name for u in subterms(x) if isinstance(u, Var))
    if isinstance(x, (Leq, Eq)):
        return free_vars(x.s) | free_vars(x.t)
    if isinstance(x, (And, Or, Implies)):
        return free_vars(x.left) | free_vars(x.right)
    if isinstance(x, Not):
        return free_vars(x.body)
    if isinstance(x, QUANTIFIERS):
        return free_vars(x.bound) | (free_vars(x.body) - {x.var})
    raise TypeError(f"not a term or formula: {x!r}")


def all_names(x: Term | Formula) -> set[str]:
    """Every variable name occurring in ``x``, bound or free."""
    if is_term(x):
        return set(free_vars(x))
    if isinstance(x, (Leq, Eq)):
        return set(free_vars(x))
    if isinstance(x, (And, Or, Implies)):
        return all_names(x.left) | all_names(x.right)
    if isinstance(x, Not):
        return all_names(x.body)
    return {x.var} | all_names(x.bound) | all_names(x.body)


def quantifiers(phi: Formula) -> Iterator[Quantifier]:
    if isinstance(phi, (And, Or, Implies)):
        yield from quantifiers(phi.left)
        yield from quantifiers(phi.right)
    elif isinstance(phi, Not):
        yield from quantifiers(phi.body)
    elif isinstance(phi, QUANTIFIERS):
        yield phi
        yield from quantifiers(phi.body)


def rename_term(t: Term, env: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(env.get(t.name, t.name))
    if isinstance(t, Zero):
        return t
    if isinstance(t, (Succ, Len, Half)):
        return type(t)(rename_term(t.t, env))
    return type(t)(rename_term(t.s, env), rename_term(t.t, env))


def rename_apart(phi: Formula) -> Formula:
    """Give every binder a name distinct from all free variables and from
    every other binder. Binders that already qualify keep their names."""
    taken = set(free_vars(phi))
    everything = all_names(phi)

    def fresh(base: str) -> str:
        stem = base.rstrip("0123456789").rstrip("_") or base
        k = 1
        while f"{stem}_{k}" in taken or f"{stem}_{k}" in everything:
            k += 1
        return f"{stem}_{k}"

    def go(f: Formula, env: dict[str, str]) -> Formula:
        if isinstance(f, (Leq, Eq)):
            return type(f)(rename_term(f.s, env), rename_term(f.t, env))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(go(f.left, env), go(f.right, env))
        if isinstance(f, Not):
            return Not(go(f.body, env))
        bound = rename_term(f.bound, env)
        name = f.var if f.var not in taken else fresh(f.var)
        taken.add(name)
        return type(f)(name, bound, go(f.body, {**env, f.var: name}))

    return go(phi, {})


def alpha_equal(a: Term | Formula, b: Term | Formula) -> bool:
    """Structural equality up to consistent renaming of bound variables."""

    def go(x, y, ex: dict[str, int], ey: dict[str, int], depth: int) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, Var):
            return ex.get(x.name, x.name) == ey.get(y.name, y.name)
        if isinstance(x, Zero):
            return True
        if isinstance(x, (Succ, Len, Half)):
            return go(x.t, y.t, ex, ey, depth)
        if isinstance(x, (Add, Mul, Smash, Leq, Eq)):
            return go(x.s, y.s, ex, ey, depth) and go(x.t, y.t, ex, ey, depth)
        if isinstance(x, (And, Or, Implies)):
            return go(x.left, y.left, ex, ey, depth) and go(x.right, y.right, ex, ey, depth)
        if isinstance(x, Not):
            return go(x.body, y.body, ex, ey, depth)
        return go(x.bound, y.bound, ex, ey, depth) and go(
            x.body, y.body, {**ex, x.var: depth}, {**ey, y.var: depth}, depth + 1
        )

    return go(a, b, {}, {}, 0)


# ------------------------------------------------------------- printer

_TERM_PREC = {Add: 1, Mul: 2, Smash: 3}
_TERM_OP = {Add: "+", Mul: "*", Smash: "#"}
_CONN_PREC = {Implies: 1, Or: 2, And: 3}
_CONN_OP = {Implies: "IMPLIES", Or: "OR", And: "AND"}


def _pterm(t: Term, ctx: int = 0) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        n = as_numeral(t)
        return str(n) if n is not None else f"S({_pterm(t.t)})"
    if isinstance(t, Len):
        return f"|{_pterm(t.t)}|"
    if isinstance(t, Half):
        return f"half({_pterm(t.t)})"
    p = _TERM_PREC[type(t)]
    text = f"{_pterm(t.s, p)} {_TERM_OP[type(t)]} {_pterm(t.t, p + 1)}"
    return f"({text})" if p < ctx else text


def _pformula(f: Formula, ctx: int = 0) -> str:
    if isinstance(f, Leq):
        return f"{_pterm(f.s)} <= {_pterm(f.t)}"
    if isinstance(f, Eq):
        return f"{_pterm(f.s)} = {_pterm(f.t)}"
    if isinstance(f, Not):
        inner = _pformula(f.body, 4)
        return f"NOT {inner}"
    if isinstance(f, QUANTIFIERS):
        q = "EX" if isinstance(f, EXISTS) else "ALL"
        text = f"{q} {f.var} <= {_pterm(written_bound(f))} . {_pformula(f.body)}"
        return f"({text})" if ctx > 0 else text
    p = _CONN_PREC[type(f)]
    if isinstance(f, Implies):
        left, right = _pformula(f.left, p + 1), _pformula(f.right, p)
    else:
        left, right = _pformula(f.left, p), _pformula(f.right, p + 1)
    text = f"{left} {_CONN_OP[type(f)]} {right}"
    return f"({text})" if p < ctx else text


def pretty(x: Term | Formula) -> str:
    """Render a term or formula in the surface grammar."""
    if is_term(x):
        return _pterm(x)
    return _pformula(x)


# -------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym><=|[=+*\#|().])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # num | ident | kw | sym | eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, text)
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "ident" and value in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{msg}, found {found}", tok.line, tok.col, self.text)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("sym", "kw") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def at_end(self) -> None:
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input")

    # terms ---------------------------------------------------------------

    def term(self) -> Term:
        t = self.term_mul()
        while self.accept("+"):
            t = Add(t, self.term_mul())
        return t

    def term_mul(self) -> Term:
        t = self.term_smash()
        while self.accept("*"):
            t = Mul(t, self.term_smash())
        return t

    def term_smash(self) -> Term:
        t = self.term_atom()
        while self.accept("#"):
            t = Smash(t, self.term_atom())
        return t

    def term_atom(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            n = int(tok.text)
            if n > MAX_NUMERAL:
                raise self.error(f"numeral larger than {MAX_NUMERAL}; bind it to a variable", tok)
            return numeral(n)
        if tok.kind == "ident":
            self.i += 1
            if tok.text in ("S", "half"):
                self.expect("(")
                inner = self.term()
                self.expect(")")
                return Succ(inner) if tok.text == "S" else Half(inner)
            return Var(tok.text)
        if self.accept("|"):
            inner = self.term()
            self.expect("|")
            return Len(inner)
        if self.accept("("):
            inner = self.term()
            self.expect(")")
            return inner
        raise self.error("expected a term")

    # formulas ------------------------------------------------------------

    def formula(self) -> Formula:
        left = self.disj()
        if self.accept("IMPLIES"):
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept("OR"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("AND"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept("NOT"):
            return Not(self.unary())
        if self.tok.kind == "kw" and self.tok.text in ("EX", "ALL"):
            exists = self.tok.text == "EX"
            self.i += 1
            if self.tok.kind != "ident" or self.tok.text in RESERVED:
                raise self.error("expected a variable name")
            var = self.tok.text
            self.i += 1
            self.expect("<=")
            bound = self.term()
            self.expect(".")
            return make_quantifier(exists, var, bound, self.formula())
        return self.primary()

    def primary(self) -> Formula:
        start = self.i
        try:
            return self.atom()
        except ParseError as atom_err:
            if self.tokens[start].text != "(" or self.tokens[start].kind != "sym":
                raise
            failed_at = self.i
            self.i = start + 1
            try:
                f = self.formula()
                self.expect(")")
                return f
            except ParseError as paren_err:
                # report whichever reading got further
                if self.i >= failed_at:
                    raise paren_err from None
                raise atom_err from None

    def atom(self) -> Formula:
        s = self.term()
        if self.accept("<="):
            return Leq(s, self.term())
        if self.accept("="):
            return Eq(s, self.term())
        raise self.error("expected '<=' or '='")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.at_end()
    return t


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.at_end()
    return rename_apart(f)


def parse(text: str) -> Term | Formula:
    """Parse either a formula or, failing that, a term."""
    try:
        return parse_formula(text)
    except ParseError as ferr:
        try:
            return parse_term(text)
        except ParseError:
            raise ferr from None


def size(x: Term | Formula) -> int:
    """Node count."""
    if is_term(x):
        return sum(1 for _ in subterms(x))
    if isinstance(x, (Leq, Eq)):
        return 1 + size(x.s) + size(x.t)
    if isinstance(x, (And, Or, Implies)):
        return 1 + size(x.left) + size(x.right)
    if isinstance(x, Not):
        return 1 + size(x.body)
    return 1 + size(x.bound) + size(x.body)
