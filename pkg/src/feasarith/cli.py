"""``fa`` command line front end.

Exit codes: 0 success (including "no realizer exists"), 1 domain error,
2 usage or syntax error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .errors import BudgetExceeded, FAError, ParseError
from .hierarchy import classify, nnf
from .induct import pind_check, pind_soundness_demo
from .numsem import DEFAULT_MAX_BITS, DEFAULT_MAX_STEPS, Budget, CostReport, Meter, eval_term
from .realize import brute_truth_cost, build_realizer, check_realizer, decode_seq, extract_function
from .syntax import EXISTS, is_term, parse, parse_formula, parse_term, pretty

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _nat(text: str) -> int:
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return n


def _positive(text: str) -> int:
    n = _nat(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _binding(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), _nat(value.strip())


def _source(arg: str) -> str:
    path = Path(arg)
    try:
        if path.is_file():
            return path.read_text().strip()
    except OSError:
        pass
    return arg


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--let", dest="bindings", action="append", type=_binding, default=[],
                        metavar="NAME=VALUE", help="bind a free variable (repeatable)")
    common.add_argument("--budget-bits", type=_positive, default=DEFAULT_MAX_BITS)
    common.add_argument("--budget-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json", default="json")
    fmt.add_argument("--plain", dest="output", action="store_const", const="plain")

    parser = argparse.ArgumentParser(prog="fa", description="Bounded arithmetic workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Sigma^b_1 / Pi^b_1 classification")
    p.add_argument("formula", help="formula text or a file containing it")

    p = sub.add_parser("eval", parents=[common], help="evaluate a term, or a formula's truth")
    p.add_argument("expr", help="term or formula text, or a file containing it")

    p = sub.add_parser("realize", parents=[common], help="construct a realizer")
    p.add_argument("formula")

    p = sub.add_parser("check", parents=[common], help="check a realizer")
    p.add_argument("formula")
    p.add_argument("--realizer", "-r", type=_nat, required=True, help="decimal or 0x-hex")

    p = sub.add_parser("pind", parents=[common], help="check a PIND instance on 0..N")
    p.add_argument("formula")
    p.add_argument("--bound", type=_nat, required=True, metavar="N")
    p.add_argument("--var", default="x", help="induction variable (default x)")

    p = sub.add_parser("extract-fn", parents=[common], help="least y with phi(x, y)")
    p.add_argument("formula")
    p.add_argument("--bound", help="bound on y: a number or a term in the input (default: the input)")
    p.add_argument("--in", dest="in_var", default="x")
    p.add_argument("--out", dest="out_var", default="y")

    p = sub.add_parser("corpus", parents=[common], help="generate a corpus and optionally sweep it")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=_nat, default=100)
    p.add_argument("--max-depth", type=_positive, default=5)
    p.add_argument("--max-bound", type=_nat, default=64)
    p.add_argument("--out", dest="out_file", help="write the corpus to this file")
    p.add_argument("--from", dest="from_file", help="read a corpus file instead of generating")
    p.add_argument("--cap", type=_nat, help="run exhaustive agreement with values <= CAP")
    return parser


def _formula(args):
    phi = parse_formula(_source(args.formula))
    return phi, classify(phi)


def _valuation(args) -> dict[str, int]:
    return dict(args.bindings)


def cmd_classify(args, budget):
    phi, cls = _formula(args)
    return pretty(phi), cls, cls.as_dict(), None


def cmd_eval(args, budget):
    x = parse(_source(args.expr))
    if is_term(x):
        value, cost = eval_term(x, _valuation(args), budget)
        return pretty(x), None, {"value": str(value)}, cost
    truth, cost = brute_truth_cost(x, _valuation(args), budget)
    return pretty(x), classify(x), {"truth": truth}, cost


def cmd_realize(args, budget):
    phi, cls = _formula(args)
    r, cost = build_realizer(phi, _valuation(args), budget)
    result = {"realized": r is not None, "realizer": None if r is None else str(r)}
    if r is not None and isinstance(nnf(phi), EXISTS) and not cls.sharply_bounded:
        result["witness"] = str(decode_seq(r)[0])
    return pretty(phi), cls, result, cost


def cmd_check(args, budget):
    phi, cls = _formula(args)
    ok, cost = check_realizer(phi, args.realizer, _valuation(args), budget)
    return pretty(phi), cls, {"realizer": str(args.realizer), "realizes": ok}, cost


def cmd_pind(args, budget):
    phi, cls = _formula(args)
    params = _valuation(args)
    meter = Meter(budget)
    report = pind_check(phi, args.bound, var=args.var, params=params, meter=meter)
    sound = pind_soundness_demo(phi, args.bound, budget, var=args.var, params=params)
    return pretty(phi), cls, {**report.as_dict(), "sound": sound}, meter.report()


def cmd_extract_fn(args, budget):
    phi, cls = _formula(args)
    env = _valuation(args)
    if args.in_var not in env:
        raise UsageError(f"extract-fn needs --let {args.in_var}=VALUE")
    x_val = env.pop(args.in_var)
    env.pop(args.out_var, None)
    if args.bound is None:
        bound = x_val
    else:
        try:
            bound = _nat(args.bound)
        except argparse.ArgumentTypeError:
            bound = parse_term(args.bound)
    meter = Meter(budget)
    y = extract_function(phi, x_val, bound, x=args.in_var, y=args.out_var, params=env, meter=meter)
    return pretty(phi), cls, {"input": str(x_val), "value": None if y is None else str(y)}, meter.report()


def cmd_corpus(args, budget):
    if args.from_file:
        spec, formulas = corpus_mod.read_corpus(args.from_file)
        header = spec.header() if spec else f"# corpus from {args.from_file}"
    else:
        spec = corpus_mod.CorpusSpec(args.seed, args.max_depth, args.max_bound, args.count)
        formulas = [f for f, _ in corpus_mod.generate(spec)]
        header = spec.header()
    if args.out_file:
        corpus_mod.write_corpus(args.out_file, spec or corpus_mod.CorpusSpec(count=len(formulas)), formulas)
    result = {"count": len(formulas), "formulas": [pretty(f) for f in formulas]}
    if args.cap is not None:
        failures = []
        for f in formulas:
            v = corpus_mod.find_disagreement(f, args.cap, budget)
            if v is not None:
                failures.append({"formula": pretty(f), "valuation": {k: str(n) for k, n in v.items()}})
        result["agreement"] = {"cap": args.cap, "agreed": len(formulas) - len(failures), "failures": failures}
    return header, None, result, None


COMMANDS = {
    "classify": cmd_classify,
    "eval": cmd_eval,
    "realize": cmd_realize,
    "check": cmd_check,
    "pind": cmd_pind,
    "extract-fn": cmd_extract_fn,
    "corpus": cmd_corpus,
}


def _payload(text, cls, result, cost: CostReport | None) -> dict:
    return {
        "input": text,
        "class": None if cls is None else cls.as_dict(),
        "result": result,
        "cost": (cost or CostReport()).as_dict(),
    }


def _emit(payload: dict, output: str) -> None:
    if output == "json":
        print(json.dumps(payload, indent=2))
        return
    print(payload["input"])
    if payload["class"] is not None:
        print("class: " + ", ".join(f"{k}={v}" for k, v in payload["class"].items()))
    result = payload["result"]
    if isinstance(result, dict):
        for key, value in result.items():
            if isinstance(value, list):
                print(f"{key}:")
                for item in value:
                    print(f"  {item}")
            else:
                print(f"{key}: {value}")
    cost = payload["cost"]
    print(f"cost: steps={cost['steps']} peak_bits={cost['peak_bits']}")


def _error(exc: Exception, output: str, **extra) -> None:
    body = {"error": {"type": type(exc).__name__, "message": str(exc), **extra}}
    if output == "json":
        print(json.dumps(body, indent=2))
    else:
        print(f"error: {exc}", file=sys.stderr)


def run(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        # values are emitted as decimal strings regardless of size
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    budget = Budget(args.budget_bits, args.budget_steps)
    try:
        text, cls, result, cost = COMMANDS[args.command](args, budget)
    except ParseError as exc:
        print(f"fa: syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"fa: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        _error(exc, args.output, kind=exc.kind)
        return EXIT_BUDGET
    except (FAError, OSError) as exc:
        _error(exc, args.output)
        return EXIT_DOMAIN
    _emit(_payload(text, cls, result, cost), args.output)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
