import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feasarith.errors import IndexOutOfRange, NotASequence, NotSigmaB1
from feasarith.numsem import Budget, eval_term
from feasarith.realize import (
    EMPTY_SEQ,
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
from feasarith.hierarchy import nnf
from feasarith.syntax import parse_formula, parse_term, Var
from feasarith.errors import BudgetExceeded

HALVES = parse_formula("EX y <= x . y + y = x")


def check(text_or_phi, r, **v):
    phi = parse_formula(text_or_phi) if isinstance(text_or_phi, str) else text_or_phi
    return check_realizer(phi, r, v)[0]


def build(text_or_phi, **v):
    phi = parse_formula(text_or_phi) if isinstance(text_or_phi, str) else text_or_phi
    return build_realizer(phi, v)[0]


class TestCoding:
    def test_empty(self):
        code = encode_seq([])
        assert code == EMPTY_SEQ and is_seq(code) and seq_len(code) == 0

    def test_singleton(self):
        c = encode_seq([5])
        assert seq_len(c) == 1 and beta(1, c) == 5
        assert c == 0b1_111011_00

    def test_pair(self):
        c = encode_seq([2, 0])
        assert (beta(1, c), beta(2, c)) == (2, 0)

    def test_beta(self):
        assert beta(1, encode_seq([7])) == 7
        assert beta(2, encode_seq([2, 9])) == 9
        with pytest.raises(IndexOutOfRange):
            beta(3, encode_seq([2, 9]))
        with pytest.raises(IndexOutOfRange):
            beta(0, encode_seq([2, 9]))

    @pytest.mark.parametrize("r", [0, 2, 0b10, 0b101, 0b1_01_00, 0b1_10_00, 0b1_11])
    def test_not_sequences(self, r):
        assert not is_seq(r)
        with pytest.raises(NotASequence):
            decode_seq(r)

    def test_exhaustive_round_trip(self):
        for n in range(3):
            for items in _tuples(n, 1 << 6):
                assert decode_seq(encode_seq(items)) == items

    @given(st.lists(st.integers(0, (1 << 16) - 1), max_size=8))
    def test_round_trip(self, items):
        c = encode_seq(items)
        assert decode_seq(c) == items
        assert seq_len(c) == len(items)
        assert all(beta(i + 1, c) == e for i, e in enumerate(items))
        assert encode_seq(decode_seq(c)) == c

    def test_seq_exactly_the_codes(self):
        codes = {encode_seq(items) for n in range(5) for items in _tuples(n, 4)}
        for r in range(1 << 11):
            if is_seq(r):
                assert encode_seq(decode_seq(r)) == r
        assert all(is_seq(c) for c in codes)

    def test_linear_size(self):
        assert encode_seq([(1 << 100) - 1]).bit_length() == 1 + 200 + 2

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            encode_seq([1 << 100], Budget(max_bits=64))


def _tuples(n, bound):
    if n == 0:
        yield []
        return
    for head in range(bound):
        for rest in _tuples(n - 1, bound):
            yield [head, *rest]


class TestCheckRealizer:
    def test_delta0_ignores_realizer(self):
        for r in (0, 1, 12345):
            assert check("0 <= x", r, x=3)

    def test_correct_witness(self):
        assert check(HALVES, encode_seq([2, 0]), x=4)

    def test_wrong_witness(self):
        assert not check(HALVES, encode_seq([1, 0]), x=4)

    def test_witness_above_bound(self):
        assert not check("EX y <= x . y = y", encode_seq([5, 0]), x=4)

    def test_exists_needs_a_pair(self):
        assert not check(HALVES, encode_seq([2]), x=4)
        assert not check(HALVES, encode_seq([2, 0, 0]), x=4)
        assert not check(HALVES, 0, x=4)

    def test_sharp_forall_length(self):
        phi = parse_formula("ALL y <= |x| . EX z <= x . z = y")
        good = build_realizer(phi, {"x": 4})[0]
        assert seq_len(good) == 4  # |4| + 1
        assert check(phi, good, x=4)
        short = encode_seq(decode_seq(good)[:3])
        assert not check(phi, short, x=4)
        assert not check(phi, encode_seq(decode_seq(good) + [0]), x=4)

    def test_delta0_sharp_forall_is_case_one(self):
        # sharply bounded, so the realizer is never inspected
        phi = "ALL y <= |x| . y <= x"
        assert check(phi, encode_seq([0, 0, 0]), x=4)
        assert build(phi, x=4) == 0

    def test_disjunction_either_slot(self):
        phi = "(EX y <= x . y = 3) OR (EX z <= x . z = 1)"
        assert check(phi, encode_seq([0, encode_seq([1, 0])]), x=2)
        assert not check(phi, encode_seq([0, encode_seq([2, 0])]), x=2)
        assert check(phi, encode_seq([encode_seq([3, 0]), 0]), x=5)

    def test_conjunction(self):
        phi = "(EX y <= x . y = 3) AND (EX z <= x . z = 1)"
        assert check(phi, encode_seq([encode_seq([3, 0]), encode_seq([1, 0])]), x=5)
        assert not check(phi, encode_seq([encode_seq([3, 0])]), x=5)

    def test_negation_normalized(self):
        phi = parse_formula("NOT (ALL y <= x . y <= 2)")
        r = build_realizer(phi, {"x": 5})[0]
        assert decode_seq(r)[0] == 3
        assert check(phi, r, x=5) and check(nnf(phi), r, x=5)

    def test_rejects_non_sigma(self):
        with pytest.raises(NotSigmaB1):
            check_realizer(parse_formula("ALL y <= x . y <= x"), 0, {"x": 1})
        with pytest.raises(NotSigmaB1):
            build_realizer(parse_formula("ALL y <= x . y <= x"), {"x": 1})

    def test_cost_reported(self):
        ok, cost = check_realizer(HALVES, encode_seq([2, 0]), {"x": 4})
        assert ok and cost.steps > 0 and cost.peak_bits >= encode_seq([2, 0]).bit_length()

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            check_realizer(HALVES, encode_seq([2, 0]), {"x": 4}, Budget(max_steps=3))


class TestBuildRealizer:
    def test_false_formula(self):
        for n in range(10):
            assert build("S(x) <= x", x=n) is None

    def test_least_witness(self):
        assert build(HALVES, x=4) == encode_seq([2, 0])

    def test_no_witness(self):
        assert build(HALVES, x=5) is None

    def test_sequence_of_subrealizers(self):
        r = build("ALL y <= |x| . EX z <= x . z = y", x=4)
        assert decode_seq(r) == [encode_seq([y, 0]) for y in range(4)]

    def test_left_biased_disjunction(self):
        r = build("(EX y <= x . y = 1) OR (EX z <= x . z = 2)", x=3)
        assert decode_seq(r) == [encode_seq([1, 0]), 0]
        r = build("(EX y <= x . y = 9) OR (EX z <= x . z = 2)", x=3)
        assert decode_seq(r) == [0, encode_seq([2, 0])]

    def test_deterministic(self):
        phi = parse_formula("EX y <= x . ALL z <= |y| . z <= x")
        assert build_realizer(phi, {"x": 9}) == build_realizer(phi, {"x": 9})


class TestBruteTruth:
    def test_examples(self):
        assert brute_truth(parse_formula("0 = 0"))
        assert not brute_truth(HALVES, {"x": 5})
        assert brute_truth(parse_formula("NOT (EX y <= x . y + y = x)"), {"x": 5})

    def test_native_implication(self):
        phi = parse_formula("(ALL y <= x . y <= 3) IMPLIES x = x + 1")
        assert [brute_truth(phi, {"x": n}) for n in range(6)] == [False] * 4 + [True] * 2

    def test_sharp_bound_is_length(self):
        phi = parse_formula("EX y <= |x| . y = 3")
        assert [brute_truth(phi, {"x": n}) for n in (3, 4, 7, 8)] == [False, True, True, True]


class TestProperties:
    def test_soundness_and_completeness(self, corpus):
        rng = random.Random(7)
        for phi, _ in corpus[:120]:
            for xv in rng.sample(range(65), 12):
                v = {"x": xv}
                r, _ = build_realizer(phi, v)
                assert (r is not None) == brute_truth(phi, v)
                if r is not None:
                    assert check_realizer(phi, r, v)[0]

    def test_corrupted_realizers_never_lie(self, corpus):
        rng = random.Random(11)
        tried = 0
        for phi, _ in corpus[:200]:
            for xv in (0, 3, 17, 32):
                v = {"x": xv}
                r, _ = build_realizer(phi, v)
                if not r:
                    continue
                for _ in range(4):
                    bad = r ^ (1 << rng.randrange(r.bit_length()))
                    tried += 1
                    if check_realizer(phi, bad, v)[0]:
                        assert brute_truth(phi, v)
        assert tried > 100

    def test_false_formulas_reject_everything(self, corpus):
        for phi, _ in corpus[:100]:
            v = {"x": 6}
            if not brute_truth(phi, v):
                for r in range(64):
                    assert not check_realizer(phi, r, v)[0]

    def test_nnf_stable_on_positive_formulas(self, corpus):
        from feasarith.corpus import uses_negation

        positives = [phi for phi, _ in corpus if not uses_negation(phi)]
        assert positives
        for phi in positives[:60]:
            assert nnf(phi) == phi
            for xv in (0, 5, 13):
                r, _ = build_realizer(phi, {"x": xv})
                for cand in {r or 0, 0, 1, (r or 0) ^ 4}:
                    assert check_realizer(phi, cand, {"x": xv}) == check_realizer(nnf(phi), cand, {"x": xv})

    @given(st.integers(0, 200))
    @settings(max_examples=50)
    def test_half_function(self, n):
        assert extract_function(parse_formula("y = half(x)"), n, Var("x")) == n // 2


SCALING = parse_formula("ALL y <= |x| . EX z <= x . (z = y OR z <= y)")


def scaling_steps(bits):
    v = {"x": (1 << bits) - 1}
    r, _ = build_realizer(SCALING, v)
    ok, cost = check_realizer(SCALING, r, v)
    assert ok
    return cost.steps


def test_checker_steps_polynomial():
    steps = {k: scaling_steps(k) for k in (16, 32, 64, 128, 256, 512, 1024)}
    for k in (16, 32, 64, 128, 256, 512):
        assert steps[2 * k] / steps[k] <= 9
    c = steps[16] / 16**3
    assert all(steps[k] <= c * k**3 for k in steps)


class TestExtractFunction:
    def test_length(self):
        # 5 = 101b has three binary digits
        assert extract_function(parse_formula("y = |x|"), 5, Var("x")) == 3 == len(format(5, "b"))

    def test_half(self):
        assert extract_function(parse_formula("y = half(x)"), 19, Var("x")) == 9

    def test_absent(self):
        assert extract_function(parse_formula("y + y = x"), 5, Var("x")) is None

    def test_int_bound_and_params(self):
        monus = parse_formula("y + m = x OR (x <= m AND y = 0)")
        assert extract_function(monus, 10, 10, params={"m": 3}) == 7
        assert extract_function(monus, 2, 10, params={"m": 3}) == 0

    def test_not_sigma(self):
        with pytest.raises(NotSigmaB1):
            extract_function(parse_formula("ALL z <= x . y <= z"), 3, Var("x"))

    def test_reference(self):
        for n in range(64):
            expected = eval_term(parse_term("half(x)"), {"x": n})[0]
            assert extract_function(parse_formula("y = half(x)"), n, Var("x")) == expected
