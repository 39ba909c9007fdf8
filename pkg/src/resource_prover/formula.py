"""Formula ASTs for MLL, PLL and BI, with an ASCII parser and printer.

Surface syntax (ASCII only)::

    atoms      [a-z][a-zA-Z0-9_]*
    MLL / PLL  *  #  -o  &  +  !  ?  ~  1  bot  0  top
    BI         *  -*  /\\  \\/  ->  I  1  bot
    bunches    ,  ;  ( )  emp_m  emp_a
    turnstile  |-

Binary connectives associate to the left.  Unary operators bind tightest,
then the conjunction-like connectives (``*``, ``&``, ``/\\``), then the
disjunction-like ones (``#``, ``+``, ``\\/``), then the implications
(``-o``, ``-*``, ``->``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator


class Logic(enum.Enum):
    MLL = "mll"
    PLL = "pll"
    BI = "bi"

    @classmethod
    def parse(cls, name: str) -> "Logic":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown logic {name!r}") from None


class FormulaError(ValueError):
    """Raised for malformed input; ``pos`` is a character offset when known."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


# op -> arity
ARITY = {
    "atom": 0,
    # linear logic
    "tensor": 2, "par": 2, "lolli": 2, "with": 2, "plus": 2,
    "bang": 1, "quest": 1, "neg": 1,
    "one": 0, "bot": 0, "zero": 0, "top": 0,
    # BI
    "star": 2, "wand": 2, "and": 2, "or": 2, "arrow": 2,
    "unit_i": 0, "unit_1": 0,
}

CONNECTIVES = {
    Logic.MLL: frozenset({"atom", "tensor", "par", "lolli", "neg", "one", "bot"}),
    Logic.PLL: frozenset({
        "atom", "tensor", "par", "lolli", "with", "plus", "bang", "quest",
        "neg", "one", "bot", "zero", "top",
    }),
    Logic.BI: frozenset({
        "atom", "star", "wand", "and", "or", "arrow", "unit_i", "unit_1", "bot",
    }),
}

SYMBOLS = {
    "tensor": "*", "par": "#", "lolli": "-o", "with": "&", "plus": "+",
    "bang": "!", "quest": "?", "neg": "~",
    "one": "1", "bot": "bot", "zero": "0", "top": "top",
    "star": "*", "wand": "-*", "and": "/\\", "or": "\\/", "arrow": "->",
    "unit_i": "I", "unit_1": "1",
}

# binding strength of binary connectives; higher binds tighter
PRECEDENCE = {
    "tensor": 3, "star": 3, "and": 3, "with": 3,
    "par": 2, "plus": 2, "or": 2,
    "lolli": 1, "wand": 1, "arrow": 1,
}


@dataclass(frozen=True, slots=True)
class Formula:
    op: str
    children: tuple["Formula", ...] = ()
    name: str | None = None

    def __post_init__(self):
        arity = ARITY.get(self.op)
        if arity is None:
            raise FormulaError(f"unknown connective {self.op!r}")
        if len(self.children) != arity:
            raise FormulaError(f"{self.op} expects {arity} children, got {len(self.children)}")
        if (self.op == "atom") != (self.name is not None):
            raise FormulaError("only atoms carry a name")

    @property
    def is_atom(self) -> bool:
        return self.op == "atom"

    def __str__(self) -> str:
        return format_formula(self)

    def __repr__(self) -> str:
        return f"Formula({format_formula(self)!r})"

    def size(self) -> int:
        """Number of atoms plus connectives (units count as connectives)."""
        return 1 + sum(c.size() for c in self.children)

    def connectives(self) -> int:
        return sum(1 for f in self.subformulas() if f.op != "atom")

    def subformulas(self) -> Iterator["Formula"]:
        yield self
        for c in self.children:
            yield from c.subformulas()

    def atoms(self) -> set[str]:
        return {f.name for f in self.subformulas() if f.op == "atom"}


def atom(name: str) -> Formula:
    return Formula("atom", (), name)


def unit(op: str) -> Formula:
    return Formula(op)


def binary(op: str, left: Formula, right: Formula) -> Formula:
    return Formula(op, (left, right))


def unary(op: str, arg: Formula) -> Formula:
    return Formula(op, (arg,))


def check_logic(f: Formula, logic: Logic) -> None:
    allowed = CONNECTIVES[logic]
    for sub in f.subformulas():
        if sub.op not in allowed:
            raise FormulaError(f"connective {SYMBOLS.get(sub.op, sub.op)!r} ({sub.op}) is not in {logic.name}")


# --------------------------------------------------------------------------
# printing

def format_formula(f: Formula) -> str:
    if f.op == "atom":
        return f.name
    if not f.children:
        return SYMBOLS[f.op]
    if len(f.children) == 1:
        arg = f.children[0]
        inner = format_formula(arg)
        if len(arg.children) == 2:
            inner = f"({inner})"
        return SYMBOLS[f.op] + inner
    left, right = f.children
    prec = PRECEDENCE[f.op]
    ls, rs = format_formula(left), format_formula(right)
    if len(left.children) == 2 and PRECEDENCE[left.op] < prec:
        ls = f"({ls})"
    if len(right.children) == 2 and PRECEDENCE[right.op] <= prec:
        rs = f"({rs})"
    return f"{ls} {SYMBOLS[f.op]} {rs}"


# --------------------------------------------------------------------------
# lexing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<multi>\|-|-o|-\*|->|/\\|\\/)|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<single>[*#&+!?~(),;01]))"
)

_KEYWORDS = {"bot", "top", "emp_m", "emp_a", "I"}


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        if kind == "word" and tok not in _KEYWORDS and not re.fullmatch(r"[a-z][a-zA-Z0-9_]*", tok):
            raise FormulaError(f"bad identifier {tok!r}", start)
        tokens.append(Token(tok, start))
        pos = m.end()
    return tokens


# token -> op, per logic family
_LL_BINARY = {"*": "tensor", "#": "par", "-o": "lolli", "&": "with", "+": "plus"}
_BI_BINARY = {"*": "star", "-*": "wand", "/\\": "and", "\\/": "or", "->": "arrow"}
_LL_UNARY = {"!": "bang", "?": "quest", "~": "neg"}
_LL_UNITS = {"1": "one", "bot": "bot", "0": "zero", "top": "top"}
_BI_UNITS = {"I": "unit_i", "1": "unit_1", "bot": "bot"}


class _Parser:
    def __init__(self, text: str, logic: Logic):
        self.text = text
        self.logic = logic
        self.tokens = tokenize(text)
        self.i = 0
        bi = logic is Logic.BI
        self.binary = _BI_BINARY if bi else _LL_BINARY
        self.unary = {} if bi else _LL_UNARY
        self.units = _BI_UNITS if bi else _LL_UNITS

    # helpers
    def peek(self) -> str | None:
        return self.tokens[self.i].text if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i].pos if self.i < len(self.tokens) else len(self.text)

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaError("unexpected end of input" + (f", expected {expected!r}" if expected else ""), self.pos())
        if expected is not None and tok != expected:
            raise FormulaError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def _make(self, op: str, children: tuple, pos: int) -> Formula:
        if op not in CONNECTIVES[self.logic]:
            raise FormulaError(f"{SYMBOLS[op]!r} ({op}) is not a connective of {self.logic.name}", pos)
        return Formula(op, children)

    # formula grammar: precedence climbing, all binary ops left-associative
    def formula(self, min_prec: int = 1) -> Formula:
        left = self.primary()
        while True:
            tok = self.peek()
            op = self.binary.get(tok) if tok is not None else None
            if op is None:
                # a binary token of the other family
                if tok in _LL_BINARY or tok in _BI_BINARY:
                    raise FormulaError(f"{tok!r} is not a connective of {self.logic.name}", self.pos())
                return left
            prec = PRECEDENCE[op]
            if prec < min_prec:
                return left
            pos = self.pos()
            self.take()
            right = self.formula(prec + 1)
            left = self._make(op, (left, right), pos)

    def primary(self) -> Formula:
        pos = self.pos()
        tok = self.peek()
        if tok is None:
            raise FormulaError("unexpected end of input, expected a formula", pos)
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok in self.unary:
            self.take()
            return self._make(self.unary[tok], (self.primary(),), pos)
        if tok in _LL_UNARY:
            raise FormulaError(f"{tok!r} is not a connective of {self.logic.name}", pos)
        if tok in self.units:
            self.take()
            return self._make(self.units[tok], (), pos)
        if tok in _LL_UNITS or tok in _BI_UNITS:
            raise FormulaError(f"{tok!r} is not a unit of {self.logic.name}", pos)
        if re.fullmatch(r"[a-z][a-zA-Z0-9_]*", tok) and tok not in _KEYWORDS:
            self.take()
            return atom(tok)
        raise FormulaError(f"unexpected token {tok!r}", pos)

    def expect_end(self) -> None:
        if self.peek() is not None:
            raise FormulaError(f"unexpected token {self.peek()!r}", self.pos())


def parse_formula(text: str, logic: Logic) -> Formula:
    p = _Parser(text, logic)
    f = p.formula()
    p.expect_end()
    return f


# --------------------------------------------------------------------------
# sequents

class _SequentParser(_Parser):
    def formula_list(self, stop: set) -> tuple[Formula, ...]:
        if self.peek() in stop:
            return ()
        out = [self.formula()]
        while self.peek() == ",":
            self.take()
            out.append(self.formula())
        return tuple(out)

    def bunch(self):
        from .context import semi

        items = [self.bunch_comma()]
        while self.peek() == ";":
            self.take()
            items.append(self.bunch_comma())
        return items[0] if len(items) == 1 else semi(*items)

    def bunch_comma(self):
        from .context import comma

        items = [self.bunch_item()]
        while self.peek() == ",":
            self.take()
            items.append(self.bunch_item())
        return items[0] if len(items) == 1 else comma(*items)

    def bunch_item(self):
        from .context import emp_a, emp_m, leaf

        tok = self.peek()
        if tok == "emp_m":
            self.take()
            return emp_m()
        if tok == "emp_a":
            self.take()
            return emp_a()
        start = self.i
        try:
            f = self.formula()
            if self.peek() in (None, ",", ";", ")", "|-"):
                return leaf(f)
            raise FormulaError(f"unexpected token {self.peek()!r}", self.pos())
        except FormulaError as err:
            if tok != "(":
                raise
            formula_err = err
        self.i = start
        self.take("(")
        try:
            b = self.bunch()
            self.take(")")
        except FormulaError as err:
            raise max(formula_err, err, key=lambda e: e.pos or 0) from None
        return b


def parse_sequent(text: str, logic: Logic):
    """Parse ``ante |- succ``.

    Linear logics give a pair of formula tuples.  BI gives ``(Bunch, Formula)``
    with the bunch exactly as written (not normalised); an empty antecedent
    is ``emp_m``.
    """
    from .context import emp_m

    p = _SequentParser(text, logic)
    if "|-" not in [t.text for t in p.tokens]:
        raise FormulaError("missing turnstile '|-'", len(text))
    if logic is Logic.BI:
        ante = emp_m() if p.peek() == "|-" else p.bunch()
        p.take("|-")
        succ = p.formula()
        if p.peek() == ",":
            raise FormulaError("BI sequents have exactly one succedent formula", p.pos())
        p.expect_end()
        return ante, succ
    ante = p.formula_list({"|-"})
    p.take("|-")
    succ = p.formula_list({None})
    p.expect_end()
    return ante, succ


def format_sequent(ante, succ) -> str:
    from .context import Bunch, format_bunch

    if isinstance(ante, Bunch):
        left = format_bunch(ante)
    else:
        left = ", ".join(str(a) for a in ante)
    if isinstance(succ, Formula):
        right = format_formula(succ)
    else:
        right = ", ".join(str(s) for s in succ)
    return f"{left} |- {right}".strip()
