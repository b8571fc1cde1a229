import pytest

from feasarith.corpus import (
    CorpusSpec,
    dump_corpus,
    exhaustive_agreement,
    find_disagreement,
    generate,
    load_corpus,
    read_corpus,
    shape_of,
    write_corpus,
)
from feasarith.syntax import free_vars, parse_formula, quantifiers


def test_empty():
    assert generate(CorpusSpec(seed=1, count=0)) == []


def test_deterministic():
    spec = CorpusSpec(seed=1, count=100)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(CorpusSpec(seed=2, count=100))


@pytest.mark.parametrize("seed", [1, 2, 99])
def test_quotas(seed):
    entries = generate(CorpusSpec(seed=seed, count=100))
    assert len(entries) == 100
    tags = [shape_of(cls, phi) for phi, cls in entries]
    assert sum("sigma_only" in t for t in tags) >= 20
    assert sum("sharp" in t for t in tags) >= 20
    assert sum("negated" in t for t in tags) >= 10


def test_well_formed(corpus):
    for phi, cls in corpus:
        assert cls.sigma_b1
        assert free_vars(phi) <= {"x"}
        for q in quantifiers(phi):
            assert q.var not in free_vars(q.bound)
        binders = [q.var for q in quantifiers(phi)]
        assert len(binders) == len(set(binders)) and "x" not in binders


def test_file_round_trip(tmp_path):
    spec = CorpusSpec(seed=5, count=30)
    formulas = [f for f, _ in generate(spec)]
    path = tmp_path / "c.txt"
    write_corpus(path, spec, formulas)
    text = path.read_text()
    assert text.splitlines()[0] == spec.header()
    assert len(text.splitlines()) == 31
    assert read_corpus(path) == (spec, formulas)
    assert load_corpus(dump_corpus(spec, formulas))[1] == formulas


class TestAgreement:
    def test_atom(self):
        assert exhaustive_agreement(parse_formula("0 <= x"), 8)

    def test_halves(self):
        assert exhaustive_agreement(parse_formula("EX y <= x . y + y = x"), 16)

    def test_reports_valuation(self):
        assert find_disagreement(parse_formula("EX y <= x . y * y = x"), 10) is None

    def test_corpus_sample(self, corpus):
        assert all(exhaustive_agreement(phi, 32) for phi, _ in corpus[:50])
