from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resource_prover.boolexpr import ONE, ZERO, Lit, VarAllocator, lit_expr, parse_expr
from resource_prover.context import (
    AddressError, AFormula, annotate_ll, bunch_formulas, canonical, coherent_equal, comma,
    cumulative, emp_a, emp_m, format_bunch, get, leaf, max_mult_superbunch, replace,
    restrict_bunch, restrict_ll, semi, tag_bunch, tag_bunch_complement, tag_ll, tag_ll_with,
    taggable,
)
from resource_prover.formula import Logic, atom, parse_sequent

from helpers import bunches

p, q, r, s, t = (atom(n) for n in "pqrst")


def test_tag_ll_gives_each_formula_its_own_variable():
    ctx = annotate_ll((p, p, q, q))
    tagged, vars = tag_ll(ctx, VarAllocator())
    assert vars == [1, 2, 3, 4]
    assert [str(a) for a in tagged] == ["p[x1]", "p[x2]", "q[x3]", "q[x4]"]
    other = tag_ll_with(ctx, vars, False)
    assert [str(a) for a in other] == ["p[~x1]", "p[~x2]", "q[~x3]", "q[~x4]"]


def test_zero_tagged_formulas_get_no_variable():
    ctx = (AFormula(p), AFormula(q, ZERO), AFormula(r, parse_expr("x9")))
    tagged, vars = tag_ll(ctx, VarAllocator())
    assert vars == [1, 2]
    assert tagged[1].expr == ZERO
    assert tagged[2].expr == parse_expr("x2.x9")


def test_tag_ll_with_checks_count():
    with pytest.raises(ValueError):
        tag_ll_with(annotate_ll((p, q)), [1], True)


def test_restrict_ll():
    ctx = (AFormula(p, parse_expr("x1")), AFormula(q, parse_expr("~x1")), AFormula(r))
    assert restrict_ll(ctx, {1: 1}) == (p, r)
    assert restrict_ll(ctx, {1: 0}) == (q, r)


@given(st.lists(st.sampled_from([p, q, r]), max_size=6), st.data())
def test_ll_split_partitions_the_context(formulas, data):
    ctx = annotate_ll(formulas)
    left, vars = tag_ll(ctx, VarAllocator())
    right = tag_ll_with(ctx, vars, False)
    a = {v: data.draw(st.integers(0, 1)) for v in vars}
    assert Counter(restrict_ll(left, a)) + Counter(restrict_ll(right, a)) == Counter(formulas)


def test_bi_tagging_example():
    ante, _ = parse_sequent("(r, (p;t), p -* q); s |- q * r", Logic.BI)
    inner = get(ante, (0,))
    tagged, vars = tag_bunch(inner, VarAllocator())
    assert len(vars) == 3
    assert format_bunch(tagged) == "(p -* q)[x3], (p[1]; t[1])[x2], r[x1]"
    assert format_bunch(tag_bunch_complement(inner, vars)) == "(p -* q)[~x3], (p[1]; t[1])[~x2], r[~x1]"


def test_additive_bunch_is_one_position():
    assert taggable(semi(leaf(p), leaf(q))) == [()]
    assert taggable(comma(leaf(p), semi(leaf(q), leaf(r)))) == [(0,), (1,)]
    assert taggable(leaf(p, ZERO)) == []


def test_restrict_bunch():
    b = comma(leaf(r, lit_expr(Lit(1))), semi(leaf(s), leaf(t), expr=lit_expr(Lit(2))))
    assert restrict_bunch(b, {1: 1, 2: 0}) == leaf(r)
    assert restrict_bunch(b, {1: 0, 2: 0}) == emp_m()
    assert format_bunch(restrict_bunch(b, {1: 1, 2: 1})) == "(s; t), r"


def test_canonical_absorbs_units_and_flattens():
    b = comma(leaf(q), comma(leaf(p), emp_m()), emp_m())
    assert canonical(b) == comma(leaf(p), leaf(q))
    assert canonical(semi(emp_a(), leaf(p))) == leaf(p)
    assert canonical(comma(emp_m(), emp_m())) == emp_m()


def test_coherent_equal():
    assert coherent_equal(comma(leaf(p), leaf(q)), comma(leaf(q), comma(leaf(p), emp_m())))
    assert not coherent_equal(comma(leaf(p), leaf(q)), semi(leaf(p), leaf(q)))


@given(bunches())
def test_canonical_is_idempotent(b):
    c = canonical(b)
    assert canonical(c) == c
    assert Counter(map(str, bunch_formulas(c))) == Counter(map(str, bunch_formulas(b)))


def test_cumulative_multiplies_the_path():
    b = semi(comma(leaf(p, lit_expr(Lit(2))), leaf(q), expr=lit_expr(Lit(1))), leaf(s))
    assert cumulative(b, (0, 0)) == parse_expr("x1.x2")
    assert cumulative(b, (1,)) == ONE
    with pytest.raises(AddressError):
        cumulative(b, (3,))


def test_max_mult_superbunch():
    b = semi(comma(leaf(r), semi(leaf(p), leaf(t)), leaf(q)), leaf(s))
    assert max_mult_superbunch(b, (0, 1, 0)) == (0, 1, 0)
    assert max_mult_superbunch(b, (0, 2)) == (0,)
    assert max_mult_superbunch(b, (1,)) == (1,)
    assert max_mult_superbunch(comma(leaf(p), leaf(q)), (1,)) == ()


def test_replace_renormalises():
    b = semi(comma(leaf(r), leaf(q)), leaf(s))
    assert replace(b, (0, 1), comma(leaf(p), leaf(t))) == semi(comma(leaf(p), leaf(r), leaf(t)), leaf(s))
    assert replace(b, (1,), emp_a()) == comma(leaf(q), leaf(r))


def test_bad_address():
    with pytest.raises(AddressError):
        get(comma(leaf(p), leaf(q)), (2,))
