"""Annotated antecedents and succedents.

Linear logic contexts are tuples of :class:`AFormula` read as multisets.
BI antecedents are :class:`Bunch` trees built from ``,`` (kind ``"c"``) and
``;`` (kind ``"s"``) over formula leaves and the units ``emp_m`` / ``emp_a``.
Every node carries a Boolean expression; the effective expression of a node
is the product along its path from the root.

Bunches built by the calculus are kept canonical: n-ary nodes are flattened,
units are absorbed by their own constructor, and children are sorted (with
0-tagged children last), so coherent equivalence is plain equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .boolexpr import ONE, ZERO, BoolExpr, Lit, VarAllocator, evaluate
from .formula import Formula, format_formula

Address = tuple[int, ...]


class AddressError(IndexError):
    pass


@dataclass(frozen=True, slots=True)
class AFormula:
    formula: Formula
    expr: BoolExpr = ONE

    def times(self, e: BoolExpr | Lit) -> "AFormula":
        return AFormula(self.formula, self.expr * e)

    def __str__(self) -> str:
        return annotated(self.formula, self.expr)


LLContext = tuple[AFormula, ...]


def annotated(f: Formula, e: BoolExpr) -> str:
    text = format_formula(f)
    if len(f.children) == 2:
        text = f"({text})"
    return f"{text}[{e}]"


# --------------------------------------------------------------------------
# linear contexts

def _ll_slots(ctx: Sequence[AFormula]) -> list[int]:
    # a 0-tagged formula is absent from both premises whatever its tag
    return [i for i, a in enumerate(ctx) if not a.expr.zero]


def tag_ll(ctx: Sequence[AFormula], alloc: VarAllocator) -> tuple[LLContext, list[int]]:
    slots = _ll_slots(ctx)
    vars = alloc.fresh(len(slots))
    return tag_ll_with(ctx, vars, True), vars


def tag_ll_with(ctx: Sequence[AFormula], vars: Sequence[int], positive: bool) -> LLContext:
    slots = _ll_slots(ctx)
    if len(slots) != len(vars):
        raise ValueError(f"context has {len(slots)} taggable items, got {len(vars)} variables")
    out = list(ctx)
    for i, v in zip(slots, vars):
        out[i] = out[i].times(Lit(v, positive))
    return tuple(out)


def restrict_ll(ctx: Sequence[AFormula], assignment: Mapping[int, int]) -> tuple[Formula, ...]:
    return tuple(a.formula for a in ctx if evaluate(a.expr, assignment) == 1)


# --------------------------------------------------------------------------
# bunches

LEAF_KINDS = ("f", "em", "ea")


@dataclass(frozen=True, slots=True)
class Bunch:
    kind: str
    formula: Formula | None = None
    children: tuple["Bunch", ...] = ()
    expr: BoolExpr = ONE

    def __post_init__(self):
        if self.kind not in ("f", "em", "ea", "c", "s"):
            raise ValueError(f"bad bunch kind {self.kind!r}")
        if (self.kind == "f") != (self.formula is not None):
            raise ValueError("only formula leaves carry a formula")
        if self.kind in LEAF_KINDS and self.children:
            raise ValueError("leaves have no children")

    @property
    def is_leaf(self) -> bool:
        return self.kind in LEAF_KINDS

    def times(self, e: BoolExpr | Lit) -> "Bunch":
        if isinstance(e, BoolExpr) and e.is_one:
            return self
        return Bunch(self.kind, self.formula, self.children, self.expr * e)

    def with_expr(self, e: BoolExpr) -> "Bunch":
        return Bunch(self.kind, self.formula, self.children, e)

    def erase(self) -> "Bunch":
        """The same tree with every annotation set to 1."""
        return Bunch(self.kind, self.formula, tuple(c.erase() for c in self.children), ONE)

    def __str__(self) -> str:
        return format_bunch(self)

    def __repr__(self) -> str:
        return f"Bunch({format_bunch(self)!r})"


def leaf(f: Formula, e: BoolExpr = ONE) -> Bunch:
    return Bunch("f", f, (), e)


def emp_m(e: BoolExpr = ONE) -> Bunch:
    return Bunch("em", None, (), e)


def emp_a(e: BoolExpr = ONE) -> Bunch:
    return Bunch("ea", None, (), e)


def comma(*children: Bunch, expr: BoolExpr = ONE) -> Bunch:
    return Bunch("c", None, tuple(children), expr)


def semi(*children: Bunch, expr: BoolExpr = ONE) -> Bunch:
    return Bunch("s", None, tuple(children), expr)


_UNIT_OF = {"c": "em", "s": "ea"}


def _sort_key(b: Bunch) -> tuple[bool, str]:
    return (b.expr.zero, _fmt(b, True, top=False))


def canonical(b: Bunch) -> Bunch:
    """Flatten, absorb units, sort children.  Idempotent."""
    if b.is_leaf:
        return b
    kids: list[Bunch] = []
    for ch in b.children:
        ch = canonical(ch)
        if ch.kind == b.kind:
            kids.extend(g.times(ch.expr) for g in ch.children)
        elif ch.kind == _UNIT_OF[b.kind]:
            continue
        else:
            kids.append(ch)
    if not kids:
        return Bunch(_UNIT_OF[b.kind], None, (), b.expr)
    if len(kids) == 1:
        return kids[0].times(b.expr)
    kids.sort(key=_sort_key)
    return Bunch(b.kind, None, tuple(kids), b.expr)


def coherent_equal(b1: Bunch, b2: Bunch) -> bool:
    return canonical(b1) == canonical(b2)


def format_bunch(b: Bunch, annotate: bool | None = None) -> str:
    """Render a bunch.  Annotations are shown when any node is non-trivially
    tagged (or when ``annotate`` is forced)."""
    if annotate is None:
        annotate = any(not n.expr.is_one for _, n in walk(b))
    return _fmt(b, annotate, top=True)


def _fmt(b: Bunch, annotate: bool, top: bool) -> str:
    if b.kind == "f":
        if annotate:
            return annotated(b.formula, b.expr)
        return format_formula(b.formula)
    if b.kind in ("em", "ea"):
        text = "emp_m" if b.kind == "em" else "emp_a"
        return f"{text}[{b.expr}]" if annotate else text
    sep = ", " if b.kind == "c" else "; "
    inner = sep.join(_fmt(c, annotate, top=False) for c in b.children)
    if top and b.expr.is_one:
        return inner
    text = f"({inner})"
    if annotate and not b.expr.is_one:
        text += f"[{b.expr}]"
    return text


# --------------------------------------------------------------------------
# addressing

def walk(b: Bunch, addr: Address = ()) -> Iterator[tuple[Address, Bunch]]:
    yield addr, b
    for i, c in enumerate(b.children):
        yield from walk(c, addr + (i,))


def get(b: Bunch, addr: Address) -> Bunch:
    node = b
    for i in addr:
        if i < 0 or i >= len(node.children):
            raise AddressError(f"invalid bunch address {addr}")
        node = node.children[i]
    return node


def cumulative(b: Bunch, addr: Address) -> BoolExpr:
    """Product of the expressions from the root down to ``addr``."""
    node = b
    e = node.expr
    for i in addr:
        if i < 0 or i >= len(node.children):
            raise AddressError(f"invalid bunch address {addr}")
        node = node.children[i]
        e = e * node.expr
    return e


def parent_kind(b: Bunch, addr: Address) -> str | None:
    if not addr:
        return None
    return get(b, addr[:-1]).kind


def max_mult_superbunch(b: Bunch, addr: Address) -> Address:
    get(b, addr)
    while addr and get(b, addr[:-1]).kind == "c":
        addr = addr[:-1]
    return addr


def replace_raw(b: Bunch, addr: Address, new: Bunch) -> Bunch:
    """Substitute without re-normalising."""
    if not addr:
        return new
    i = addr[0]
    if i < 0 or i >= len(b.children):
        raise AddressError(f"invalid bunch address {addr}")
    kids = list(b.children)
    kids[i] = replace_raw(kids[i], addr[1:], new)
    return Bunch(b.kind, b.formula, tuple(kids), b.expr)


def replace(b: Bunch, addr: Address, new: Bunch) -> Bunch:
    return canonical(replace_raw(b, addr, new))


def slots(b: Bunch) -> list[tuple[Address, Bunch]]:
    """The top-level multiplicative components of an antecedent."""
    if b.kind == "c":
        return [((i,), c) for i, c in enumerate(b.children)]
    return [((), b)]


# --------------------------------------------------------------------------
# tagging and restriction

def taggable(b: Bunch) -> list[Address]:
    """Positions receiving one variable each under ``b . V``.

    A formula or an additive bunch is a single position; a multiplicative
    bunch distributes over its components.  0-tagged positions are skipped.
    """
    if b.expr.zero:
        return []
    if b.kind == "c":
        out: list[Address] = []
        for i, c in enumerate(b.children):
            out.extend((i,) + a for a in taggable(c))
        return out
    return [()]


def tag_bunch_with(b: Bunch, vars: Sequence[int], positive: bool) -> Bunch:
    positions = taggable(b)
    if len(positions) != len(vars):
        raise ValueError(f"bunch has {len(positions)} multiplicative slots, got {len(vars)} variables")
    out = b
    for addr, v in zip(positions, vars):
        out = replace_raw(out, addr, get(out, addr).times(Lit(v, positive)))
    return canonical(out)


def tag_bunch(b: Bunch, alloc: VarAllocator) -> tuple[Bunch, list[int]]:
    vars = alloc.fresh(len(taggable(b)))
    return tag_bunch_with(b, vars, True), vars


def tag_bunch_complement(b: Bunch, vars: Sequence[int]) -> Bunch:
    return tag_bunch_with(b, vars, False)


def restrict_bunch(b: Bunch, assignment: Mapping[int, int]) -> Bunch:
    """Delete every node whose expression is 0; the result is unannotated
    and canonical.  A fully deleted antecedent is ``emp_m``."""
    r = _restrict(b, assignment)
    return emp_m() if r is None else canonical(r)


def _restrict(b: Bunch, assignment: Mapping[int, int]) -> Bunch | None:
    if evaluate(b.expr, assignment) == 0:
        return None
    if b.is_leaf:
        return Bunch(b.kind, b.formula)
    kids = [r for c in b.children if (r := _restrict(c, assignment)) is not None]
    if not kids:
        return Bunch(_UNIT_OF[b.kind])
    return Bunch(b.kind, None, tuple(kids))


def bunch_vars(b: Bunch) -> set[int]:
    return {lit.var for _, n in walk(b) for lit in n.expr.lits}


def bunch_formulas(b: Bunch) -> list[Formula]:
    return [n.formula for _, n in walk(b) if n.kind == "f"]


def erase_ll(ctx: Sequence[AFormula]) -> tuple[Formula, ...]:
    return tuple(a.formula for a in ctx)


def annotate_ll(formulas: Sequence[Formula], e: BoolExpr = ONE) -> LLContext:
    return tuple(AFormula(f, e) for f in formulas)


__all__ = [
    "AFormula", "Address", "AddressError", "Bunch", "LLContext", "ONE", "ZERO",
    "annotate_ll", "canonical", "coherent_equal", "comma", "cumulative", "emp_a", "emp_m",
    "erase_ll", "format_bunch", "get", "leaf", "max_mult_superbunch", "parent_kind",
    "replace", "replace_raw", "restrict_bunch", "restrict_ll", "semi", "slots",
    "tag_bunch", "tag_bunch_complement", "tag_bunch_with", "tag_ll", "tag_ll_with",
    "taggable", "walk",
]
