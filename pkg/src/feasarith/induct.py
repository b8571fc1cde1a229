"""Ground-level checks of polynomial induction (PIND) instances on 0..N."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Mapping

from .errors import NotSigmaB1, UnboundVariable
from .hierarchy import classify
from .numsem import Budget, Meter
from .realize import formula_truth
from .syntax import Formula, free_vars


@dataclass(frozen=True, slots=True)
class PindReport:
    base_ok: bool
    first_step_failure: int | None
    conclusion_ok_up_to: int | None
    checked_bound: int

    def as_dict(self) -> dict:
        return asdict(self)


def _truth_table(phi: Formula, n: int, m: Meter, var: str, params: Mapping[str, int] | None) -> list[bool]:
    if not classify(phi).sigma_b1:
        raise NotSigmaB1("PIND applies to Sigma^b_1 formulas only")
    if n < 0:
        raise ValueError("bound must be a natural number")
    env = dict(params or {})
    env.pop(var, None)
    missing = sorted(free_vars(phi) - {var} - env.keys())
    if missing:
        raise UnboundVariable(missing[0])
    table = []
    for x in range(n + 1):
        env[var] = x
        table.append(formula_truth(phi, env, m))
    return table


def pind_check(
    phi: Formula,
    n: int,
    budget: Budget | None = None,
    *,
    var: str = "x",
    params: Mapping[str, int] | None = None,
    meter: Meter | None = None,
) -> PindReport:
    """Check base case, the step phi(x // 2) -> phi(x), and the conclusion
    for every x <= n."""
    holds = _truth_table(phi, n, meter or Meter(budget), var, params)
    step_failure = next((x for x in range(n + 1) if holds[x // 2] and not holds[x]), None)
    good = None
    for x, ok in enumerate(holds):
        if not ok:
            break
        good = x
    return PindReport(holds[0], step_failure, good, n)


def pind_soundness_demo(
    phi: Formula,
    n: int,
    budget: Budget | None = None,
    *,
    var: str = "x",
    params: Mapping[str, int] | None = None,
) -> bool:
    """True iff (base and every step up to n) implies phi(x) for all x <= n,
    with the conclusion re-evaluated directly rather than read off the report."""
    report = pind_check(phi, n, budget, var=var, params=params)
    if not (report.base_ok and report.first_step_failure is None):
        return True
    env = dict(params or {})
    m = Meter(budget)
    for x in range(n + 1):
        env[var] = x
        if not formula_truth(phi, env, m):
            return False
    return True
