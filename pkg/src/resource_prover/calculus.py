"""Resource rule sets for MLL, PLL and BI.

A rule never drops a side formula.  Multiplicative splits instead send every
side formula to both premises, tagged with a fresh variable in one premise
and with its complement in the other.  Leaf rules then emit the equations
that decide, after solving, which premise really received each formula.

``applicable`` enumerates rule instances by shape only.  ``apply`` builds
the premises and the emitted constraints.  Rule selection and pruning
belong to the search layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .boolexpr import ONE, BoolExpr, Constraint, Lit, VarAllocator, partial_value
from .context import (
    AFormula, Address, Bunch, LLContext, canonical, comma, cumulative, emp_a, emp_m, get,
    leaf, replace, semi, slots, tag_bunch, tag_bunch_with, tag_ll, tag_ll_with, walk,
)
from .formula import Formula, Logic, format_formula


class RuleError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class ResourceSequent:
    logic: Logic
    antecedent: Union[LLContext, Bunch]
    succedent: Union[LLContext, Formula]

    @property
    def is_bi(self) -> bool:
        return self.logic is Logic.BI

    def expressions(self) -> list[BoolExpr]:
        if self.is_bi:
            return [n.expr for _, n in walk(self.antecedent)]
        return [a.expr for a in self.antecedent] + [a.expr for a in self.succedent]

    def __str__(self) -> str:
        if self.is_bi:
            from .context import format_bunch
            return f"{format_bunch(self.antecedent, annotate=True)} |- {format_formula(self.succedent)}"
        left = ", ".join(str(a) for a in self.antecedent)
        right = ", ".join(str(a) for a in self.succedent)
        return f"{left} |- {right}".strip()


@dataclass(frozen=True, slots=True)
class RuleInstance:
    """``side`` is "L", "R" or "" (structural / leaf pairing).

    ``index`` is a context position (LL) or a bunch address (BI).  ``other``
    carries the rule's extra choice: the succedent partner of an LL Axiom,
    the kept child of a BI W (-1 for weakening to the additive unit), the
    disjunct of a BI or-right, or for a lifted BI ->L the length of the
    address of the ``;`` node it anchors at.
    """

    rule: str
    side: str = ""
    index: Union[int, Address] = ()
    other: int | None = None

    def __str__(self) -> str:
        text = f"{self.rule}@{self.side}{self.index}"
        if self.other is not None:
            text += f"/{self.other}"
        return text


@dataclass(slots=True)
class RuleApplication:
    premises: list[ResourceSequent]
    emitted: list[Constraint]
    fresh: list[int] = field(default_factory=list)


@dataclass(frozen=True, slots=True)
class CalculusOptions:
    # PLL: offer the combined dereliction+contraction rule "!LC"
    combined_dereliction: bool = False


LEAF_RULES = {
    Logic.MLL: frozenset({"Axiom", "botL", "oneR"}),
    Logic.PLL: frozenset({"Axiom", "botL", "oneR", "zeroL", "topR"}),
    Logic.BI: frozenset({"Axiom", "IR", "1R", "botL"}),
}

# rules whose premises are provable whenever the conclusion is
INVERTIBLE = {
    Logic.MLL: frozenset({"tensorL", "parR", "lolliR", "botR", "oneL", "negL", "negR"}),
    Logic.PLL: frozenset({"tensorL", "parR", "lolliR", "botR", "oneL", "negL", "negR", "withR", "plusL"}),
    Logic.BI: frozenset({"starL", "andL", "wandR", "arrowR", "IL", "1L", "andR", "orL"}),
}

# two-premise rules that share the context between premises
ADDITIVE = frozenset({"withR", "plusL", "andR", "orL", "arrowL"})
# two-premise rules that split the context
SPLITTING = frozenset({"tensorR", "parL", "lolliL", "starR", "wandL"})
STRUCTURAL = frozenset({"W", "C", "W!L", "W?R", "C!L", "C?R", "!LC"})
CONTRACTION = frozenset({"C", "C!L", "C?R", "!LC"})


def is_leaf_rule(logic: Logic, rule: str) -> bool:
    return rule in LEAF_RULES[logic]


# --------------------------------------------------------------------------
# linear logic

_LL_LEFT = {
    "tensor": "tensorL", "par": "parL", "lolli": "lolliL", "neg": "negL", "one": "oneL",
    "bot": "botL", "zero": "zeroL", "with": "withL", "plus": "plusL", "bang": "!L", "quest": "?L",
}
_LL_RIGHT = {
    "tensor": "tensorR", "par": "parR", "lolli": "lolliR", "neg": "negR", "one": "oneR",
    "bot": "botR", "top": "topR", "with": "withR", "plus": "plusR", "bang": "!R", "quest": "?R",
}


def _ll_applicable(seq: ResourceSequent, options: CalculusOptions) -> list[RuleInstance]:
    out: list[RuleInstance] = []
    ante, succ = seq.antecedent, seq.succedent
    for i, a in enumerate(ante):
        if a.formula.is_atom:
            for j, s in enumerate(succ):
                if s.formula == a.formula:
                    out.append(RuleInstance("Axiom", "L", i, j))
    for i, a in enumerate(ante):
        rule = _LL_LEFT.get(a.formula.op)
        if rule:
            out.append(RuleInstance(rule, "L", i))
        if a.formula.op == "bang":
            out.append(RuleInstance("W!L", "L", i))
            out.append(RuleInstance("C!L", "L", i))
            if options.combined_dereliction:
                out.append(RuleInstance("!LC", "L", i))
    for j, s in enumerate(succ):
        rule = _LL_RIGHT.get(s.formula.op)
        if rule:
            out.append(RuleInstance(rule, "R", j))
        if s.formula.op == "quest":
            out.append(RuleInstance("W?R", "R", j))
            out.append(RuleInstance("C?R", "R", j))
    allowed = _LL_RULES[seq.logic]
    return [inst for inst in out if inst.rule in allowed]


_LL_RULES = {
    Logic.MLL: frozenset({
        "Axiom", "botL", "botR", "oneL", "oneR", "parL", "parR", "tensorL", "tensorR",
        "lolliL", "lolliR", "negL", "negR",
    }),
}
_LL_RULES[Logic.PLL] = _LL_RULES[Logic.MLL] | {
    "zeroL", "topR", "plusL", "plusR", "withL", "withR", "!L", "!R", "?L", "?R",
    "W!L", "W?R", "C!L", "C?R", "!LC",
}


def _drop(ctx: LLContext, i: int) -> LLContext:
    return ctx[:i] + ctx[i + 1:]


def _put(ctx: LLContext, i: int, *items: AFormula) -> LLContext:
    return ctx[:i] + tuple(items) + ctx[i + 1:]


def modal_guard(seq: ResourceSequent, inst: RuleInstance,
                current: Mapping[int, int] | None = None) -> bool:
    """Side condition of !R and ?L: the other antecedent formulas are all
    ``!``-prefixed and the other succedent formulas ``?``-prefixed.
    Formulas whose expression ``current`` already forces to 0 are ignored."""
    return not _modal_offenders(seq, inst, current or {})


def _modal_offenders(seq: ResourceSequent, inst: RuleInstance,
                     current: Mapping[int, int]) -> list[AFormula]:
    bad = []
    for side, ctx, want in (("L", seq.antecedent, "bang"), ("R", seq.succedent, "quest")):
        for k, a in enumerate(ctx):
            if side == inst.side and k == inst.index:
                continue
            if a.formula.op != want and partial_value(a.expr, current) != 0:
                bad.append(a)
    return bad


def _ll_apply(seq: ResourceSequent, inst: RuleInstance, alloc: VarAllocator) -> RuleApplication:
    ante, succ = seq.antecedent, seq.succedent
    rule, i = inst.rule, inst.index
    ctx = ante if inst.side == "L" else succ
    if not isinstance(i, int) or not 0 <= i < len(ctx):
        raise RuleError(f"bad principal position for {inst}")
    p = ctx[i]
    f, e = p.formula, p.expr
    want = {v: k for k, v in (_LL_LEFT if inst.side == "L" else _LL_RIGHT).items()}
    structural_op = {"W!L": "bang", "C!L": "bang", "!LC": "bang", "W?R": "quest", "C?R": "quest"}
    expected_op = structural_op.get(rule) or want.get(rule)
    if rule == "Axiom":
        expected_op = "atom"
    if f.op != expected_op:
        raise RuleError(f"{rule} does not match principal {f}")
    principal = Constraint(e, 1)
    kids = f.children

    def seq_(a, s):
        return ResourceSequent(seq.logic, a, s)

    def zeros(*skip):
        out = []
        for side, c in (("L", ante), ("R", succ)):
            for k, item in enumerate(c):
                if (side, k) not in skip:
                    out.append(Constraint(item.expr, 0))
        return out

    # leaves
    if rule == "Axiom":
        j = inst.other
        if j is None or not 0 <= j < len(succ) or succ[j].formula != f:
            raise RuleError("Axiom pairing does not match")
        return RuleApplication([], [principal, Constraint(succ[j].expr, 1)] + zeros(("L", i), ("R", j)))
    if rule in ("botL", "oneR"):
        return RuleApplication([], [principal] + zeros((inst.side, i)))
    if rule in ("zeroL", "topR"):
        return RuleApplication([], [principal])

    def part(k):
        return AFormula(kids[k], e)

    L = inst.side == "L"
    # single premise, no split
    if rule in ("botR", "oneL"):
        return RuleApplication([seq_(_drop(ante, i), succ) if L else seq_(ante, _drop(succ, i))], [principal])
    if rule == "parR":
        return RuleApplication([seq_(ante, _put(succ, i, part(0), part(1)))], [principal])
    if rule == "tensorL":
        return RuleApplication([seq_(_put(ante, i, part(0), part(1)), succ)], [principal])
    if rule == "lolliR":
        return RuleApplication([seq_((part(0),) + ante, _put(succ, i, part(1)))], [principal])
    if rule == "negL":
        return RuleApplication([seq_(_drop(ante, i), (part(0),) + succ)], [principal])
    if rule == "negR":
        return RuleApplication([seq_((part(0),) + ante, _drop(succ, i))], [principal])
    if rule in ("plusR", "withL"):
        (x,) = alloc.fresh(1)
        pair = (AFormula(kids[0], e * Lit(x)), AFormula(kids[1], e * Lit(x, False)))
        if L:
            return RuleApplication([seq_(_put(ante, i, *pair), succ)], [principal], [x])
        return RuleApplication([seq_(ante, _put(succ, i, *pair))], [principal], [x])
    if rule in ("withR", "plusL"):
        if L:
            prem = [seq_(_put(ante, i, part(k)), succ) for k in (0, 1)]
        else:
            prem = [seq_(ante, _put(succ, i, part(k))) for k in (0, 1)]
        return RuleApplication(prem, [principal])
    if rule in ("!L", "?R"):
        if L:
            return RuleApplication([seq_(_put(ante, i, part(0)), succ)], [principal])
        return RuleApplication([seq_(ante, _put(succ, i, part(0)))], [principal])
    if rule == "!LC":
        return RuleApplication([seq_(_put(ante, i, part(0), p), succ)], [principal])
    if rule in ("!R", "?L"):
        # the modal side condition becomes zero-constraints on offenders
        guard = [Constraint(a.expr, 0) for a in _modal_offenders(seq, inst, {})]
        if L:
            return RuleApplication([seq_(_put(ante, i, part(0)), succ)], [principal] + guard)
        return RuleApplication([seq_(ante, _put(succ, i, part(0)))], [principal] + guard)
    if rule == "W!L":
        return RuleApplication([seq_(_drop(ante, i), succ)], [principal])
    if rule == "W?R":
        return RuleApplication([seq_(ante, _drop(succ, i))], [principal])
    if rule == "C!L":
        return RuleApplication([seq_(_put(ante, i, p, p), succ)], [principal])
    if rule == "C?R":
        return RuleApplication([seq_(ante, _put(succ, i, p, p))], [principal])

    # multiplicative splits
    gamma = _drop(ante, i) if L else ante
    delta = succ if L else _drop(succ, i)
    g1, V = tag_ll(gamma, alloc)
    d1, W = tag_ll(delta, alloc)
    g2 = tag_ll_with(gamma, V, False)
    d2 = tag_ll_with(delta, W, False)
    if rule == "tensorR":
        prem = [seq_(g1, d1[:i] + (part(0),) + d1[i:]), seq_(g2, d2[:i] + (part(1),) + d2[i:])]
    elif rule == "parL":
        prem = [seq_(g1[:i] + (part(0),) + g1[i:], d1), seq_(g2[:i] + (part(1),) + g2[i:], d2)]
    elif rule == "lolliL":
        prem = [seq_(g1, (part(0),) + d1), seq_(g2[:i] + (part(1),) + g2[i:], d2)]
    else:
        raise RuleError(f"unknown rule {rule}")
    return RuleApplication(prem, [principal], V + W)


# --------------------------------------------------------------------------
# BI

_BI_LEFT = {
    "star": "starL", "and": "andL", "unit_i": "IL", "unit_1": "1L", "or": "orL",
    "wand": "wandL", "arrow": "arrowL",
}
_BI_RIGHT = {"wand": "wandR", "arrow": "arrowR", "star": "starR", "and": "andR"}


def _bi_applicable(seq: ResourceSequent) -> list[RuleInstance]:
    out: list[RuleInstance] = []
    ante, goal = seq.antecedent, seq.succedent
    for addr, node in slots(ante):
        if node.kind == "f" and node.formula == goal:
            out.append(RuleInstance("Axiom", "L", addr))
        if node.kind == "f" and node.formula.op == "bot":
            out.append(RuleInstance("botL", "L", addr))
        if node.kind == "ea" and goal.op == "unit_1":
            out.append(RuleInstance("1R", "L", addr))
    if goal.op == "unit_i":
        out.append(RuleInstance("IR", "", ()))
    for addr, node in walk(ante):
        if node.kind == "f" and node.formula.op in _BI_LEFT:
            out.append(RuleInstance(_BI_LEFT[node.formula.op], "L", addr))
            if node.formula.op == "arrow":
                anchor = _semi_anchor(ante, addr)
                if anchor is not None:
                    out.append(RuleInstance("arrowL", "L", addr, len(anchor)))
    if goal.op in _BI_RIGHT:
        out.append(RuleInstance(_BI_RIGHT[goal.op], "R", ()))
    if goal.op == "or":
        out.append(RuleInstance("orR", "R", (), 0))
        out.append(RuleInstance("orR", "R", (), 1))
    for addr, node in walk(ante):
        if node.kind == "s":
            for k in range(len(node.children)):
                out.append(RuleInstance("W", "", addr, k))
        if node.kind != "ea":
            out.append(RuleInstance("W", "", addr, -1))
        if node.kind not in ("em", "ea"):
            out.append(RuleInstance("C", "", addr))
    return out


def _semi_anchor(ante: Bunch, addr: Address) -> Address | None:
    """The nearest ``;`` ancestor reached through ``,`` nodes only, when the
    direct parent is a ``,``."""
    p = addr[:-1]
    if not addr or get(ante, p).kind != "c":
        return None
    while p:
        p = p[:-1]
        kind = get(ante, p).kind
        if kind == "s":
            return p
        if kind != "c":
            return None
    return None


def _bi_apply(seq: ResourceSequent, inst: RuleInstance, alloc: VarAllocator) -> RuleApplication:
    ante, goal = seq.antecedent, seq.succedent
    rule, a = inst.rule, inst.index
    if not isinstance(a, tuple):
        raise RuleError(f"bad bunch address for {inst}")

    def seq_(b, g=goal):
        return ResourceSequent(seq.logic, canonical(b), g)

    # right rules
    if inst.side == "R":
        if rule == "wandR" and goal.op == "wand":
            return RuleApplication([seq_(comma(ante, leaf(goal.children[0])), goal.children[1])], [])
        if rule == "arrowR" and goal.op == "arrow":
            return RuleApplication([seq_(semi(ante, leaf(goal.children[0])), goal.children[1])], [])
        if rule == "andR" and goal.op == "and":
            return RuleApplication([seq_(ante, goal.children[0]), seq_(ante, goal.children[1])], [])
        if rule == "orR" and goal.op == "or" and inst.other in (0, 1):
            return RuleApplication([seq_(ante, goal.children[inst.other])], [])
        if rule == "starR" and goal.op == "star":
            left, V = tag_bunch(ante, alloc)
            right = tag_bunch_with(ante, V, False)
            return RuleApplication([seq_(left, goal.children[0]), seq_(right, goal.children[1])], [], V)
        raise RuleError(f"{rule} does not match succedent {goal}")

    if rule == "IR":
        if goal.op != "unit_i":
            raise RuleError("IR needs succedent I")
        return RuleApplication([], [Constraint(cumulative(ante, s), 0) for s, n in slots(ante) if n.kind != "em"])

    node = get(ante, a)
    e = cumulative(ante, a)
    principal = Constraint(e, 1)

    if rule in ("Axiom", "botL", "1R"):
        if a not in [s for s, _ in slots(ante)]:
            raise RuleError(f"{rule} needs a top-level position")
        ok = {
            "Axiom": node.kind == "f" and node.formula == goal,
            "botL": node.kind == "f" and node.formula.op == "bot",
            "1R": node.kind == "ea" and goal.op == "unit_1",
        }[rule]
        if not ok:
            raise RuleError(f"{rule} does not match")
        zeros = [Constraint(cumulative(ante, s), 0) for s, _ in slots(ante) if s != a]
        return RuleApplication([], [principal] + zeros)

    if rule == "W":
        k = inst.other
        if k == -1:
            if node.kind == "ea":
                raise RuleError("nothing to weaken")
            return RuleApplication([seq_(replace(ante, a, emp_a(node.expr)))], [principal])
        if node.kind != "s" or k is None or not 0 <= k < len(node.children):
            raise RuleError("W needs an additive bunch and a kept child")
        kept = node.children[k].times(node.expr)
        return RuleApplication([seq_(replace(ante, a, kept))],
                               [principal, Constraint(cumulative(ante, a + (k,)), 1)])
    if rule == "C":
        if node.kind in ("em", "ea"):
            raise RuleError("contraction of a unit")
        return RuleApplication([seq_(replace(ante, a, semi(node.with_expr(ONE), node.with_expr(ONE), expr=node.expr)))],
                               [principal])

    if node.kind != "f" or _BI_LEFT.get(node.formula.op) != rule:
        raise RuleError(f"{rule} does not match {node}")
    f, own = node.formula, node.expr
    kids = f.children
    if rule == "starL":
        return RuleApplication([seq_(replace(ante, a, comma(leaf(kids[0], own), leaf(kids[1], own))))], [principal])
    if rule == "andL":
        return RuleApplication([seq_(replace(ante, a, semi(leaf(kids[0], own), leaf(kids[1], own))))], [principal])
    if rule == "IL":
        return RuleApplication([seq_(replace(ante, a, emp_m(own)))], [principal])
    if rule == "1L":
        return RuleApplication([seq_(replace(ante, a, emp_a(own)))], [principal])
    if rule == "orL":
        return RuleApplication([seq_(replace(ante, a, leaf(kids[k], own))) for k in (0, 1)], [principal])
    if rule == "arrowL" and inst.other is not None:
        # anchor at an enclosing ';' node: everything else on the way must vanish
        anchor = a[:inst.other]
        if _semi_anchor(ante, a) != anchor:
            raise RuleError("->L anchor is not the nearest additive ancestor")
        zeros = []
        for depth in range(len(anchor) + 1, len(a)):
            mid = a[:depth]
            for k in range(len(get(ante, mid).children)):
                if k != a[depth]:
                    zeros.append(Constraint(cumulative(ante, mid + (k,)), 0))
        top = get(ante, anchor)
        sibs = [c for k, c in enumerate(top.children) if k != a[len(anchor)]]
        gamma = semi(*sibs, expr=cumulative(ante, anchor))
        return RuleApplication([seq_(gamma, kids[0]), seq_(replace(ante, a, leaf(kids[1], own)))],
                               [principal] + zeros)
    if rule == "arrowL":
        p = a[:-1]
        if a and get(ante, p).kind == "s":
            parent = get(ante, p)
            sibs = [c for k, c in enumerate(parent.children) if k != a[-1]]
            gamma = semi(*sibs, expr=cumulative(ante, p))
        else:
            gamma = emp_a()
        return RuleApplication([seq_(gamma, kids[0]), seq_(replace(ante, a, leaf(kids[1], own)))], [principal])
    if rule == "wandL":
        p = a[:-1]
        if a and get(ante, p).kind == "c":
            parent = get(ante, p)
            sibs = [c for k, c in enumerate(parent.children) if k != a[-1]]
            gamma, V = tag_bunch(comma(*sibs, expr=cumulative(ante, p)), alloc)
            rest = tag_bunch_with(comma(*sibs), V, False)
            new_parent = comma(rest, leaf(kids[1], own), expr=parent.expr)
            return RuleApplication([seq_(gamma, kids[0]), seq_(replace(ante, p, new_parent))], [principal], V)
        return RuleApplication([seq_(emp_m(), kids[0]), seq_(replace(ante, a, leaf(kids[1], own)))], [principal])
    raise RuleError(f"unknown rule {rule}")


# --------------------------------------------------------------------------

def applicable(seq: ResourceSequent, options: CalculusOptions = CalculusOptions()) -> list[RuleInstance]:
    if seq.is_bi:
        return _bi_applicable(seq)
    return _ll_applicable(seq, options)


def apply(seq: ResourceSequent, inst: RuleInstance, alloc: VarAllocator) -> RuleApplication:
    if seq.is_bi:
        return _bi_apply(seq, inst, alloc)
    return _ll_apply(seq, inst, alloc)


def principal_expr(seq: ResourceSequent, inst: RuleInstance) -> BoolExpr:
    """The expression the instance constrains to 1 (ONE when there is none)."""
    if seq.is_bi:
        if inst.side == "R" or inst.rule == "IR":
            return ONE
        return cumulative(seq.antecedent, inst.index)
    ctx = seq.antecedent if inst.side == "L" else seq.succedent
    return ctx[inst.index].expr


def principal_formula(seq: ResourceSequent, inst: RuleInstance) -> Formula | None:
    if seq.is_bi:
        if inst.side == "R":
            return seq.succedent
        if inst.rule == "IR":
            return None
        node = get(seq.antecedent, inst.index)
        return node.formula
    ctx = seq.antecedent if inst.side == "L" else seq.succedent
    return ctx[inst.index].formula


def endsequent(logic: Logic, ante, succ, alloc: VarAllocator) -> tuple[ResourceSequent, list[int]]:
    """Tag a plain sequent with distinct fresh variables.

    Linear logics tag every formula.  BI tags every formula leaf of the
    canonical antecedent (succedents are never annotated).
    """
    if logic is Logic.BI:
        b = canonical(ante)
        vars = alloc.fresh(sum(1 for _, n in walk(b) if n.kind == "f"))
        out = b
        k = 0
        for addr, node in walk(b):
            if node.kind == "f":
                out = _retag(out, addr, vars[k])
                k += 1
        return ResourceSequent(logic, canonical(out), succ), vars
    a_vars = alloc.fresh(len(ante))
    s_vars = alloc.fresh(len(succ))
    a = tuple(AFormula(f, BoolExpr((Lit(v),))) for f, v in zip(ante, a_vars))
    s = tuple(AFormula(f, BoolExpr((Lit(v),))) for f, v in zip(succ, s_vars))
    return ResourceSequent(logic, a, s), a_vars + s_vars


def _retag(b: Bunch, addr: Address, v: int) -> Bunch:
    from .context import replace_raw
    return replace_raw(b, addr, get(b, addr).times(Lit(v)))


__all__ = [
    "ADDITIVE", "CONTRACTION", "CalculusOptions", "INVERTIBLE", "LEAF_RULES", "ResourceSequent",
    "RuleApplication", "RuleError", "RuleInstance", "SPLITTING", "STRUCTURAL", "applicable", "apply",
    "endsequent", "is_leaf_rule", "modal_guard", "principal_expr", "principal_formula",
]
