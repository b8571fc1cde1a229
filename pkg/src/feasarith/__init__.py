"""Workbench for Buss's bounded arithmetic S^1_2: parsing, classification,
costed evaluation, realizers and ground-level induction checks."""

from .errors import (
    BudgetExceeded,
    FAError,
    IndexOutOfRange,
    NotASequence,
    NotSigmaB1,
    ParseError,
    UnboundVariable,
)
from .hierarchy import FormulaClass, classify, negated_atom_eval_form, nnf
from .induct import PindReport, pind_check, pind_soundness_demo
from .numsem import Budget, CostReport, bit_length, eval_term
from .realize import (
    beta,
    brute_truth,
    build_realizer,
    check_realizer,
    decode_seq,
    encode_seq,
    extract_function,
    is_seq,
    seq_len,
)
from .syntax import free_vars, parse_formula, parse_term, pretty

__version__ = "0.1.0"
