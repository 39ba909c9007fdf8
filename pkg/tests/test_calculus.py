from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resource_prover.boolexpr import ONE, Constraint, VarAllocator, evaluate, parse_constraint, parse_expr
from resource_prover.calculus import (
    INVERTIBLE, SPLITTING, ResourceSequent, RuleError, RuleInstance, applicable, apply, endsequent,
    modal_guard,
)
from resource_prover.context import AFormula, annotate_ll, format_bunch, restrict_bunch, walk
from resource_prover.formula import Logic, atom, parse_formula, parse_sequent

from helpers import formulas

p, q, r = atom("p"), atom("q"), atom("r")


def ll(text, logic=Logic.MLL):
    ante, succ = parse_sequent(text, logic)
    return ResourceSequent(logic, annotate_ll(ante), annotate_ll(succ))


def bi(text):
    ante, succ = parse_sequent(text, Logic.BI)
    return ResourceSequent(Logic.BI, ante, succ)


def test_tensor_right_splits_every_side_formula():
    seq = ll("p, p, q, q |- (p*q)*(p*q)")
    app = apply(seq, RuleInstance("tensorR", "R", 0), VarAllocator())
    assert app.fresh == [1, 2, 3, 4]
    assert [str(s) for s in app.premises] == [
        "p[x1], p[x2], q[x3], q[x4] |- (p * q)[1]",
        "p[~x1], p[~x2], q[~x3], q[~x4] |- (p * q)[1]",
    ]
    assert app.emitted == [parse_constraint("1 = 1")]


def test_axiom_emits_principal_partner_and_zeros():
    ctx = tuple(AFormula(f, parse_expr(e)) for f, e in ((p, "x1.x5"), (p, "x2.x6"), (q, "x3.x7")))
    seq = ResourceSequent(Logic.MLL, ctx, (AFormula(p),))
    app = apply(seq, RuleInstance("Axiom", "L", 0, 0), VarAllocator())
    assert app.premises == []
    assert [str(c) for c in app.emitted] == ["x1.x5 = 1", "1 = 1", "x2.x6 = 0", "x3.x7 = 0"]


def test_axiom_pairing_must_match():
    with pytest.raises(RuleError):
        apply(ll("p, q |- q"), RuleInstance("Axiom", "L", 0, 0), VarAllocator())


def test_plus_right_uses_one_fresh_variable():
    app = apply(ll("p |- p + q", Logic.PLL), RuleInstance("plusR", "R", 0), VarAllocator())
    assert app.fresh == [1]
    assert str(app.premises[0]) == "p[1] |- p[x1], q[~x1]"


def test_with_right_shares_the_context():
    app = apply(ll("p, q |- p & q", Logic.PLL), RuleInstance("withR", "R", 0), VarAllocator())
    assert [str(s) for s in app.premises] == ["p[1], q[1] |- p[1]", "p[1], q[1] |- q[1]"]
    assert app.fresh == []


def test_applicable_lists_axiom_pairings_and_rules():
    names = [str(i) for i in applicable(ll("p, p * q |- p, p # q"))]
    assert names == ["Axiom@L0/0", "tensorL@L1", "parR@R1"]


def test_pll_rules_hidden_in_mll():
    seq = ResourceSequent(Logic.MLL, annotate_ll((p,)), annotate_ll((parse_formula("p + q", Logic.PLL),)))
    assert applicable(seq) == []


def test_modal_guard():
    seq = ll("!p, q |- !p", Logic.PLL)
    inst = RuleInstance("!R", "R", 0)
    assert not modal_guard(seq, inst)
    q_expr = parse_expr("x1")
    seq = ResourceSequent(Logic.PLL, (AFormula(parse_formula("!p", Logic.PLL)), AFormula(q, q_expr)),
                          seq.succedent)
    assert not modal_guard(seq, inst)
    assert modal_guard(seq, inst, {1: 0})
    app = apply(seq, inst, VarAllocator())
    assert Constraint(q_expr, 0) in app.emitted


def test_star_right_on_small_bunch():
    app = apply(bi("r, (s;t) |- r * s"), RuleInstance("starR", "R", ()), VarAllocator())
    assert app.fresh == [1, 2]
    assert [str(s) for s in app.premises] == ["(s[1]; t[1])[x2], r[x1] |- r",
                                              "(s[1]; t[1])[~x2], r[~x1] |- s"]


def test_bi_weakening_keeps_a_child():
    seq, _ = endsequent(Logic.BI, *parse_sequent("(r, (p;t), p -* q); s |- q * r", Logic.BI), VarAllocator())
    app = apply(seq, RuleInstance("W", "", (), 0), VarAllocator(10))
    kept = seq.antecedent.children[0]
    assert app.emitted[0] == Constraint(ONE, 1)
    assert app.emitted[1].target == 1
    assert format_bunch(app.premises[0].antecedent) == format_bunch(kept)


def test_unit_i_right_zeroes_nonempty_slots():
    seq, _ = endsequent(Logic.BI, *parse_sequent("p, emp_m |- I", Logic.BI), VarAllocator())
    app = apply(seq, RuleInstance("IR", "", ()), VarAllocator())
    assert [str(c) for c in app.emitted] == ["x1 = 0"]


def test_bi_rule_must_match():
    with pytest.raises(RuleError):
        apply(bi("p |- q"), RuleInstance("starR", "R", ()), VarAllocator())
    with pytest.raises(RuleError):
        apply(bi("p |- q"), RuleInstance("Axiom", "L", ()), VarAllocator())


def test_endsequent_tags_every_formula():
    seq, vars = endsequent(Logic.MLL, (p, q), (p,), VarAllocator())
    assert vars == [1, 2, 3]
    assert str(seq) == "p[x1], q[x2] |- p[x3]"
    seq, vars = endsequent(Logic.BI, *parse_sequent("r, (s;t) |- r", Logic.BI), VarAllocator())
    assert len(vars) == 3


def ll_sequents(logic):
    side = st.lists(formulas(logic, max_leaves=4), max_size=3)
    return st.tuples(side, side.filter(bool))


@pytest.mark.parametrize("logic", [Logic.MLL, Logic.PLL])
def test_ll_rules_partition_and_use_fresh_variables(logic):
    @given(ll_sequents(logic), st.data())
    def check(sides, data):
        seq = ResourceSequent(logic, annotate_ll(sides[0]), annotate_ll(sides[1]))
        old = {l.var for e in seq.expressions() for l in e.lits}
        for inst in applicable(seq):
            app = apply(seq, inst, VarAllocator())
            assert not set(app.fresh) & old
            if inst.rule not in SPLITTING:
                continue
            a = {v: data.draw(st.integers(0, 1)) for v in app.fresh}
            live = Counter()
            for prem in app.premises:
                for item in prem.antecedent + prem.succedent:
                    if evaluate(item.expr, a):
                        live[item.formula] += 1
            principal = (seq.antecedent if inst.side == "L" else seq.succedent)[inst.index].formula
            expected = Counter(sides[0]) + Counter(sides[1])
            expected[principal] -= 1
            expected += Counter(principal.children)
            assert live == +expected

    check()


def test_invertible_sets_are_disjoint_from_splits():
    for logic, rules in INVERTIBLE.items():
        assert not rules & SPLITTING


def test_star_right_premises_partition_the_bunch():
    seq, _ = endsequent(Logic.BI, *parse_sequent("(r, (p;t), p -* q); s |- q * r", Logic.BI), VarAllocator())
    inner = apply(seq, RuleInstance("W", "", (), 0), VarAllocator(10)).premises[0]
    app = apply(inner, RuleInstance("starR", "R", ()), VarAllocator(20))
    base = {l.var: 1 for _, n in walk(inner.antecedent) for l in n.expr.lits}
    for bits in range(2 ** len(app.fresh)):
        a = {**base, **{v: (bits >> k) & 1 for k, v in enumerate(app.fresh)}}
        kept = [restrict_bunch(prem.antecedent, a) for prem in app.premises]
        leaves = Counter(str(n.formula) for k in kept for _, n in walk(k) if n.kind == "f")
        assert leaves == Counter(["r", "p", "t", "p -* q"])
