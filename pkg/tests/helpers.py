"""Shared strategies and lookups for the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from resource_prover.boolexpr import BoolExpr, Constraint, Lit
from resource_prover.context import Bunch, comma, emp_a, emp_m, leaf, semi, walk
from resource_prover.formula import ARITY, CONNECTIVES, Formula, Logic, atom

ATOMS = ("p", "q", "r")


def formulas(logic: Logic, atoms=ATOMS, max_leaves: int = 12) -> st.SearchStrategy[Formula]:
    ops = sorted(CONNECTIVES[logic] - {"atom"})
    units = [op for op in ops if ARITY[op] == 0]
    unary = [op for op in ops if ARITY[op] == 1]
    binary = [op for op in ops if ARITY[op] == 2]
    base = st.sampled_from(atoms).map(atom)
    if units:
        base = base | st.sampled_from(units).map(lambda op: Formula(op))

    def extend(inner):
        out = st.tuples(st.sampled_from(binary), inner, inner).map(lambda t: Formula(t[0], (t[1], t[2])))
        if unary:
            out = out | st.tuples(st.sampled_from(unary), inner).map(lambda t: Formula(t[0], (t[1],)))
        return out

    return st.recursive(base, extend, max_leaves=max_leaves)


def bunches(atoms=ATOMS, max_leaves: int = 10) -> st.SearchStrategy[Bunch]:
    base = st.sampled_from(atoms).map(lambda a: leaf(atom(a))) | st.sampled_from([emp_m(), emp_a()])

    def extend(inner):
        kids = st.lists(inner, min_size=2, max_size=3)
        return kids.map(lambda ks: comma(*ks)) | kids.map(lambda ks: semi(*ks))

    return st.recursive(base, extend, max_leaves=max_leaves)


def constraints(max_var: int = 12, max_count: int = 20) -> st.SearchStrategy[list[Constraint]]:
    lit = st.builds(Lit, st.integers(1, max_var), st.booleans())
    expr = st.lists(lit, max_size=4).map(BoolExpr.of)
    return st.lists(st.builds(Constraint, expr, st.integers(0, 1)), max_size=max_count)


def tag_var(b: Bunch, fresh, label: str) -> int:
    """The fresh variable sitting on the node of ``b`` printed as ``label``."""
    from resource_prover.context import format_bunch

    for _, node in walk(b):
        if format_bunch(node.erase()) == label:
            for lit in node.expr.lits:
                if lit.var in fresh and lit.positive:
                    return lit.var
    raise LookupError(f"no fresh variable on {label!r}")


def tag_var_ll(ctx, fresh, index: int) -> int:
    """The positive fresh variable on the ``index``-th formula of a linear context."""
    for lit in ctx[index].expr.lits:
        if lit.var in fresh and lit.positive:
            return lit.var
    raise LookupError(f"no fresh variable at position {index}")


def drop_true(c: Constraint, true_vars) -> Constraint:
    """``c`` with the literals of variables known to be 1 removed."""
    kept = [l for l in c.expr.lits if not (l.positive and l.var in true_vars)]
    if c.expr.zero:
        return c
    return Constraint(BoolExpr.of(kept), c.target)


MLL_EXAMPLE = "p,p,q,q |- (p*q)*(p*q)"
UNPROVABLE_EXAMPLE = "p*q, r |- p*q"
PLL_EXAMPLE = "p,q,q |- (p*q)+(p*q*q)"
BI_EXAMPLE = "(r, (p;t), p -* q); s |- q * r"
BI_SMALL_EXAMPLE = "r,(s;t) |- r*s"
BI_AND_EXAMPLE = "(r, (p;t), p -* q); s |- (q * r) /\\ s"

# the distribution equations of the MLL example, in the names of
# mll_example_names, and the solution they force (free variables at 0)
SIXTEEN_EQUATIONS = [
    "x1.y1 = 1", "x2.y2 = 0", "x3.y3 = 0", "x4.y4 = 0",
    "~x1.z1 = 0", "~x2.z2 = 1", "~x3.z3 = 0", "~x4.z4 = 0",
    "x1.~y1 = 0", "x2.~y2 = 0", "x3.~y3 = 1", "x4.~y4 = 0",
    "~x1.~z1 = 0", "~x2.~z2 = 0", "~x3.~z3 = 0", "~x4.~z4 = 1",
]
MLL_OVERALL = {"x1": 1, "x2": 0, "x3": 1, "x4": 0, "y1": 1, "y2": 0, "y3": 0, "y4": 0,
               "z1": 0, "z2": 1, "z3": 0, "z4": 0}
MLL_FREE = ("y2", "y4", "z1", "z3")


def mll_example_names(proof) -> dict[str, int]:
    """Map the names x1..x4, y1..y4, z1..z4 of the worked MLL example to the
    variables of a found derivation with the same shape.

    x tags the root split, y the split under its left premise and z the
    one under its right premise; index i follows the antecedent order
    p, p, q, q.
    """
    root = proof.derivation.root
    left, right = root.children
    names: dict[str, int] = {}
    for prefix, node, fresh in (("x", left, root.fresh), ("y", left.children[0], left.fresh),
                                ("z", right.children[0], right.fresh)):
        for i in range(4):
            names[f"{prefix}{i + 1}"] = tag_var_ll(node.sequent.antecedent, fresh, i)
    return names


def named_constraint(text: str, names: dict[str, int]) -> Constraint:
    """Parse ``x1.~y2 = 0`` written with example names."""
    lhs, rhs = (s.strip() for s in text.split("="))
    lits = []
    for part in lhs.split("."):
        positive = not part.startswith("~")
        lits.append(Lit(names[part.lstrip("~")], positive))
    return Constraint(BoolExpr.of(lits), int(rhs))
