"""Boolean literals, product expressions, and constraint equations.

Expressions are products of literals, kept sorted by variable and
deduplicated.  A product mentioning both ``x`` and ``~x`` collapses to the
constant 0.  The empty product is the constant 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple


class Lit(NamedTuple):
    var: int
    positive: bool = True

    def __invert__(self) -> "Lit":
        return Lit(self.var, not self.positive)

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"~x{self.var}"

    def value(self, bit: int) -> int:
        """Value of this literal when its variable is ``bit``."""
        return bit if self.positive else 1 - bit


class UnassignedVariable(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class BoolExpr:
    lits: tuple[Lit, ...] = ()
    zero: bool = False

    @staticmethod
    def of(lits: Iterable[Lit]) -> "BoolExpr":
        by_var: dict[int, bool] = {}
        for lit in lits:
            seen = by_var.get(lit.var)
            if seen is None:
                by_var[lit.var] = lit.positive
            elif seen != lit.positive:
                return ZERO
        return BoolExpr(tuple(Lit(v, by_var[v]) for v in sorted(by_var)))

    @property
    def is_one(self) -> bool:
        return not self.zero and not self.lits

    @property
    def is_const(self) -> bool:
        return self.zero or not self.lits

    def vars(self) -> tuple[int, ...]:
        return tuple(lit.var for lit in self.lits)

    def __mul__(self, other: "BoolExpr | Lit") -> "BoolExpr":
        if isinstance(other, Lit):
            return product(self, other)
        if self.zero or other.zero:
            return ZERO
        if not other.lits:
            return self
        if not self.lits:
            return other
        return BoolExpr.of(self.lits + other.lits)

    def __str__(self) -> str:
        if self.zero:
            return "0"
        if not self.lits:
            return "1"
        return ".".join(str(lit) for lit in self.lits)


ONE = BoolExpr()
ZERO = BoolExpr((), True)


def const(bit: int) -> BoolExpr:
    return ONE if bit else ZERO


def lit_expr(lit: Lit) -> BoolExpr:
    return BoolExpr((lit,))


def product(e: BoolExpr, lit: Lit) -> BoolExpr:
    if e.zero:
        return ZERO
    return BoolExpr.of(e.lits + (lit,))


def complement_set(vars: Iterable[int]) -> list[Lit]:
    return [Lit(v, False) for v in vars]


def evaluate(e: BoolExpr, assignment: Mapping[int, int]) -> int:
    if e.zero:
        return 0
    result = 1
    for lit in e.lits:
        try:
            bit = assignment[lit.var]
        except KeyError:
            raise UnassignedVariable(f"variable x{lit.var} is unassigned") from None
        if lit.value(bit) == 0:
            result = 0
    return result


def partial_value(e: BoolExpr, assignment: Mapping[int, int]) -> int | None:
    """0 or 1 if ``assignment`` already decides ``e``, else None."""
    if e.zero:
        return 0
    undecided = False
    for lit in e.lits:
        bit = assignment.get(lit.var)
        if bit is None:
            undecided = True
        elif lit.value(bit) == 0:
            return 0
    return None if undecided else 1


class VarAllocator:
    """Issues strictly increasing, never reused variable ids."""

    def __init__(self, start: int = 1):
        self.next_id = start

    def fresh(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError("n must be non-negative")
        out = list(range(self.next_id, self.next_id + n))
        self.next_id += n
        return out


class Constraint(NamedTuple):
    expr: BoolExpr
    target: int

    def __str__(self) -> str:
        return f"{self.expr} = {self.target}"

    def holds(self, assignment: Mapping[int, int]) -> bool:
        return evaluate(self.expr, assignment) == self.target


_LIT_RE = re.compile(r"(~?)x([1-9]\d*)")


def parse_expr(text: str) -> BoolExpr:
    text = text.strip()
    if text == "0":
        return ZERO
    if text == "1":
        return ONE
    lits = []
    for part in text.split("."):
        m = _LIT_RE.fullmatch(part.strip())
        if not m:
            raise ValueError(f"bad literal {part!r}")
        lits.append(Lit(int(m.group(2)), not m.group(1)))
    return BoolExpr.of(lits)


def parse_constraint(line: str) -> Constraint:
    lhs, sep, rhs = line.partition("=")
    if not sep or rhs.strip() not in ("0", "1"):
        raise ValueError(f"bad constraint line {line!r}")
    return Constraint(parse_expr(lhs), int(rhs))


def dump_constraints(constraints: Iterable[Constraint]) -> str:
    return "".join(f"{c}\n" for c in constraints)


def load_constraints(text: str) -> list[Constraint]:
    return [parse_constraint(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
