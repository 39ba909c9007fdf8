import pytest
from hypothesis import given

from resource_prover.context import Bunch, comma, emp_m, leaf, semi
from resource_prover.formula import (
    CONNECTIVES, Formula, FormulaError, Logic, atom, binary, format_formula, format_sequent,
    parse_formula, parse_sequent, unary,
)

from helpers import formulas

p, q, r, s, t = (atom(n) for n in "pqrst")


def test_star_parses_in_bi():
    assert parse_formula("p * q", Logic.BI) == binary("star", p, q)


def test_par_of_lolli():
    assert parse_formula("(p -o q) # r", Logic.MLL) == binary("par", binary("lolli", p, q), r)


def test_plus_rejected_in_mll():
    with pytest.raises(FormulaError) as exc:
        parse_formula("p + q", Logic.MLL)
    assert exc.value.pos == 2


@pytest.mark.parametrize("text,logic", [("!p", Logic.MLL), ("p -* q", Logic.MLL), ("p & q", Logic.BI),
                                        ("0", Logic.BI), ("emp_m", Logic.MLL)])
def test_foreign_syntax_rejected(text, logic):
    with pytest.raises(FormulaError):
        parse_formula(text, logic)


@pytest.mark.parametrize("text", ["", "p *", "(p", "p q", "* p", "P", "p ) q"])
def test_malformed(text):
    with pytest.raises(FormulaError):
        parse_formula(text, Logic.MLL)


def test_error_points_at_the_problem():
    with pytest.raises(FormulaError) as exc:
        parse_formula("p * (q", Logic.MLL)
    assert exc.value.pos == 6
    assert "position 6" in str(exc.value)


def test_precedence():
    f = parse_formula("p * q # r -o s", Logic.MLL)
    assert f == binary("lolli", binary("par", binary("tensor", p, q), r), s)
    assert parse_formula("~p * q", Logic.MLL) == binary("tensor", unary("neg", p), q)
    assert parse_formula("p /\\ q \\/ r -> s", Logic.BI) == binary(
        "arrow", binary("or", binary("and", p, q), r), s)


def test_left_associative():
    assert parse_formula("p -o q -o r", Logic.MLL) == binary("lolli", binary("lolli", p, q), r)
    assert parse_formula("p * q * q", Logic.MLL) == binary("tensor", binary("tensor", p, q), q)


def test_units_per_logic():
    assert parse_formula("1 * bot", Logic.MLL) == binary("tensor", Formula("one"), Formula("bot"))
    assert parse_formula("0 + top", Logic.PLL) == binary("plus", Formula("zero"), Formula("top"))
    assert parse_formula("I -* 1", Logic.BI) == binary("wand", Formula("unit_i"), Formula("unit_1"))


def test_format_minimal_parentheses():
    assert format_formula(binary("star", p, q)) == "p * q"
    assert format_formula(binary("tensor", p, binary("tensor", q, q))) == "p * (q * q)"
    assert format_formula(binary("tensor", binary("tensor", p, q), q)) == "p * q * q"
    assert format_formula(unary("bang", p)) == "!p"
    assert format_formula(unary("neg", binary("par", p, q))) == "~(p # q)"


def test_formula_checks_arity():
    with pytest.raises(FormulaError):
        Formula("tensor", (p,))
    with pytest.raises(FormulaError):
        Formula("frob")


def test_size_and_connectives():
    f = parse_formula("!(p * q) # 1", Logic.PLL)
    assert f.size() == 6
    assert f.connectives() == 4
    assert f.atoms() == {"p", "q"}


@pytest.mark.parametrize("logic", list(Logic))
def test_round_trip(logic):
    @given(formulas(logic))
    def check(f):
        assert parse_formula(format_formula(f), logic) == f

    check()


@pytest.mark.parametrize("logic", list(Logic))
def test_parse_stays_in_logic(logic):
    @given(formulas(logic))
    def check(f):
        g = parse_formula(format_formula(f), logic)
        assert {h.op for h in g.subformulas()} <= CONNECTIVES[logic]

    check()


def test_bi_sequent_keeps_shape():
    ante, succ = parse_sequent("(r, (p;t), p -* q); s |- q * r", Logic.BI)
    assert ante == semi(comma(leaf(r), semi(leaf(p), leaf(t)), leaf(binary("wand", p, q))), leaf(s))
    assert succ == binary("star", q, r)


def test_ll_sequent_is_two_lists():
    ante, succ = parse_sequent("p, p, q, q |- (p*q)*(p*q)", Logic.MLL)
    assert ante == (p, p, q, q)
    assert succ == (binary("tensor", binary("tensor", p, q), binary("tensor", p, q)),)
    assert parse_sequent("|-", Logic.MLL) == ((), ())
    assert parse_sequent("p |-", Logic.MLL) == ((p,), ())


def test_bi_units_and_empty_antecedent():
    ante, succ = parse_sequent("emp_m |- I", Logic.BI)
    assert isinstance(ante, Bunch) and ante.kind == "em"
    assert succ == Formula("unit_i")
    ante, _ = parse_sequent("|- I", Logic.BI)
    assert ante == emp_m()
    ante, _ = parse_sequent("emp_a; p |- p", Logic.BI)
    assert ante.kind == "s" and ante.children[0].kind == "ea"


def test_bi_sequent_errors():
    with pytest.raises(FormulaError):
        parse_sequent("p |- q, r", Logic.BI)
    with pytest.raises(FormulaError):
        parse_sequent("p, q", Logic.MLL)
    with pytest.raises(FormulaError):
        parse_sequent("p |- q |- r", Logic.MLL)


@pytest.mark.parametrize("text,logic", [("p, q |- p * q", Logic.MLL),
                                        ("(r, (p; t), p -* q); s |- q * r", Logic.BI),
                                        ("!p, ?q |- p & q", Logic.PLL)])
def test_format_sequent_round_trip(text, logic):
    ante, succ = parse_sequent(text, logic)
    assert parse_sequent(format_sequent(ante, succ), logic) == (ante, succ)
