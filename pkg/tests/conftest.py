import pytest
from hypothesis import strategies as st

from feasarith import syntax as sx
from feasarith.corpus import CorpusSpec, generate

# Seeds fixed for the acceptance runs.
CORPUS_SEED = 20240521
CORPUS_SIZE = 500

NAMES = ["x", "y", "z", "t", "w"]


def terms(names=NAMES, max_leaves=8):
    leaf = st.one_of(st.just(sx.Zero()), st.sampled_from(names).map(sx.Var))
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(sx.Succ),
            sub.map(sx.Len),
            sub.map(sx.Half),
            st.builds(sx.Add, sub, sub),
            st.builds(sx.Mul, sub, sub),
            st.builds(sx.Smash, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def formulas(names=NAMES, max_leaves=6):
    t = terms(names, 4)
    atom = st.one_of(st.builds(sx.Leq, t, t), st.builds(sx.Eq, t, t))
    def quant(exists, sharp, var, bound, body):
        return sx.make_quantifier(exists, var, sx.Len(bound) if sharp else bound, body)

    return st.recursive(
        atom,
        lambda sub: st.one_of(
            sub.map(sx.Not),
            st.builds(sx.And, sub, sub),
            st.builds(sx.Or, sub, sub),
            st.builds(sx.Implies, sub, sub),
            st.builds(quant, st.booleans(), st.booleans(), st.sampled_from(names), t, sub),
        ),
        max_leaves=max_leaves,
    )


def small_terms(names=("x", "y"), max_leaves=5):
    """Terms whose values stay small enough for brute force (no smash, no product)."""
    leaf = st.one_of(
        st.just(sx.Zero()),
        st.sampled_from(list(names)).map(sx.Var),
        st.integers(0, 4).map(sx.numeral),
    )
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(sx.Succ), sub.map(sx.Len), sub.map(sx.Half), st.builds(sx.Add, sub, sub)
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture(scope="session")
def corpus():
    return generate(CorpusSpec(seed=CORPUS_SEED, count=CORPUS_SIZE))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
