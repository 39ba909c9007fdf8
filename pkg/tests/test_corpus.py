import functools
import itertools
import random

import pytest

from resource_prover.context import Bunch
from resource_prover.corpus import (
    GeneratorConfig, count_mll, enumerate_mll, mll_formulas, provable_corpus, random_formula,
    random_mll_sequent,
)
from resource_prover.formula import CONNECTIVES, Formula, Logic, format_sequent, parse_sequent
from resource_prover.verify import BoundExceeded, brute_force_prove


def naive_count(max_size: int) -> int:
    """Count sequents up to order and atom renaming with plain strings."""
    @functools.cache
    def forms(n):
        if n == 1:
            return ["p", "q", "1", "bot"]
        out = [f"~{a}" for a in forms(n - 1)]
        for k in range(1, n - 1):
            out += [f"({a}{op}{b})" for a in forms(k) for b in forms(n - 1 - k) for op in "*#>"]
        return out

    by_size = [(n, f) for n in range(1, max_size + 1) for f in forms(n)]
    swap = str.maketrans("pq", "qp")
    seen = set()

    def bags(start, budget):
        yield []
        for i in range(start, len(by_size)):
            n, f = by_size[i]
            if n <= budget:
                for rest in bags(i, budget - n):
                    yield [f] + rest

    for items in bags(0, max_size):
        if not items:
            continue
        for mask in itertools.product((0, 1), repeat=len(items)):
            left = tuple(sorted(f for f, m in zip(items, mask) if not m))
            right = tuple(sorted(f for f, m in zip(items, mask) if m))
            other = (tuple(sorted(f.translate(swap) for f in left)),
                     tuple(sorted(f.translate(swap) for f in right)))
            seen.add(min((left, right), other))
    return len(seen)


@pytest.mark.parametrize("size", [1, 2, 3, 4, 5])
def test_count_matches_a_naive_enumeration(size):
    assert count_mll(size) == naive_count(size)


def test_known_counts():
    assert [count_mll(k) for k in range(1, 6)] == [6, 36, 216, 1260, 7924]


def test_size_six_count():
    assert count_mll(6) == 50872


def test_formula_sizes():
    for size in range(1, 5):
        fs = mll_formulas(size)
        assert len(set(fs)) == len(fs)
        assert all(f.size() == size for f in fs)


def test_enumeration_has_no_renamed_duplicates():
    seqs = list(enumerate_mll(4))
    keys = {format_sequent(*s) for s in seqs}
    assert len(keys) == len(seqs)
    assert (tuple(), (Formula("one"),)) in seqs


def test_random_sequents_are_seeded():
    a = [random_mll_sequent(random.Random(7), 10) for _ in range(3)]
    b = [random_mll_sequent(random.Random(7), 10) for _ in range(3)]
    assert a == b


@pytest.mark.parametrize("logic", list(Logic))
def test_random_formula_stays_in_logic(logic):
    rng = random.Random(3)
    for _ in range(200):
        f = random_formula(rng, rng.randint(0, 8), logic)
        assert {g.op for g in f.subformulas()} <= CONNECTIVES[logic]


@pytest.mark.parametrize("logic", list(Logic))
def test_provable_corpus_is_seeded_and_distinct(logic):
    a = provable_corpus(logic, 30, seed=5)
    assert a == provable_corpus(logic, 30, seed=5)
    assert len({repr(s) for s in a}) == 30


@pytest.mark.parametrize("logic", list(Logic))
def test_generated_sequents_parse_back(logic):
    for ante, succ in provable_corpus(logic, 30, seed=2):
        if logic is Logic.BI:
            assert isinstance(ante, Bunch)
        assert parse_sequent(format_sequent(ante, succ), logic) == (ante, succ)


def test_generated_mll_sequents_are_provable_by_the_oracle():
    checked = 0
    for ante, succ in provable_corpus(Logic.MLL, 80, seed=11, cfg=GeneratorConfig(depth=3)):
        try:
            assert brute_force_prove(ante, succ, bound=22), format_sequent(ante, succ)
        except BoundExceeded:
            continue
        checked += 1
    assert checked >= 40
