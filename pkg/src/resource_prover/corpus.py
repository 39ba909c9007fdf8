"""Sequent corpora: exhaustive enumeration of small MLL sequents and
random provable sequents built from random plain proofs.

A generated proof is assembled from axioms downwards, so the conclusion is
provable by construction.  The generator only needs to produce the
conclusion; the prover has to rediscover a proof.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .context import Bunch, comma, emp_a, emp_m, get, leaf, replace_raw, semi, walk
from .formula import Formula, Logic, atom, binary, format_formula, unary, unit

LLSequent = tuple[tuple[Formula, ...], tuple[Formula, ...]]

_MLL_BINARY = ("tensor", "par", "lolli")
_MLL_UNITS = ("one", "bot")


# --------------------------------------------------------------------------
# exhaustive MLL enumeration

@lru_cache(maxsize=None)
def mll_formulas(size: int, atoms: tuple[str, ...] = ("p", "q")) -> tuple[Formula, ...]:
    """All MLL formulas with exactly ``size`` symbols (atoms plus connectives)."""
    if size < 1:
        return ()
    out: list[Formula] = []
    if size == 1:
        out += [atom(a) for a in atoms] + [unit(u) for u in _MLL_UNITS]
        return tuple(out)
    out += [unary("neg", f) for f in mll_formulas(size - 1, atoms)]
    for left in range(1, size - 1):
        for a in mll_formulas(left, atoms):
            for b in mll_formulas(size - 1 - left, atoms):
                out += [binary(op, a, b) for op in _MLL_BINARY]
    return tuple(out)


def _multisets(pool: list[tuple[int, Formula]], budget: int, start: int = 0) -> Iterator[tuple[tuple[Formula, ...], int]]:
    yield (), 0
    for i in range(start, len(pool)):
        size, f = pool[i]
        if size > budget:
            break
        for rest, used in _multisets(pool, budget - size, i):
            yield (f,) + rest, used + size


def _rename(seq: LLSequent, mapping: dict[str, str]) -> LLSequent:
    def go(f: Formula) -> Formula:
        if f.is_atom:
            return atom(mapping.get(f.name, f.name))
        return Formula(f.op, tuple(go(c) for c in f.children))
    return tuple(go(f) for f in seq[0]), tuple(go(f) for f in seq[1])


def _key(seq: LLSequent) -> tuple:
    return tuple(sorted(map(format_formula, seq[0]))), tuple(sorted(map(format_formula, seq[1])))


def enumerate_mll(max_size: int, atoms: int = 2) -> Iterator[LLSequent]:
    """Every sequent ``G |- D`` whose formulas have at most ``max_size``
    symbols in total, up to multiset order and renaming of atoms.

    The empty sequent is skipped."""
    names = tuple("pqrstu"[:atoms])
    pool = sorted(((s, f) for s in range(1, max_size + 1) for f in mll_formulas(s, names)),
                  key=lambda t: t[0])
    swaps = [dict(zip(names, perm)) for perm in itertools.permutations(names)]
    for ante, used in _multisets(pool, max_size):
        for succ, _ in _multisets(pool, max_size - used):
            if not ante and not succ:
                continue
            seq = (ante, succ)
            key = _key(seq)
            if all(key <= _key(_rename(seq, m)) for m in swaps):
                yield seq


def count_mll(max_size: int, atoms: int = 2) -> int:
    return sum(1 for _ in enumerate_mll(max_size, atoms))


# --------------------------------------------------------------------------
# random sequents

def random_formula(rng: random.Random, connectives: int, logic: Logic = Logic.MLL,
                   atoms: tuple[str, ...] = ("p", "q")) -> Formula:
    """A uniformly shaped random formula with exactly ``connectives``
    connectives (units count as connectives)."""
    if connectives == 0:
        return atom(rng.choice(atoms))
    binary_ops = {Logic.MLL: _MLL_BINARY, Logic.PLL: _MLL_BINARY + ("with", "plus"),
                  Logic.BI: ("star", "wand", "and", "or", "arrow")}[logic]
    unary_ops = {Logic.MLL: ("neg",), Logic.PLL: ("neg", "bang", "quest"), Logic.BI: ()}[logic]
    units = {Logic.MLL: _MLL_UNITS, Logic.PLL: _MLL_UNITS + ("zero", "top"),
             Logic.BI: ("unit_i", "unit_1")}[logic]
    r = rng.random()
    if connectives == 1 and r < 0.2:
        return unit(rng.choice(units))
    if unary_ops and r < 0.35:
        return unary(rng.choice(unary_ops), random_formula(rng, connectives - 1, logic, atoms))
    k = rng.randint(0, connectives - 1)
    return binary(rng.choice(binary_ops), random_formula(rng, k, logic, atoms),
                  random_formula(rng, connectives - 1 - k, logic, atoms))


def random_mll_sequent(rng: random.Random, max_connectives: int, atoms: tuple[str, ...] = ("p", "q")) -> LLSequent:
    total = rng.randint(1, max_connectives)
    n = rng.randint(1, 3)
    cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    fs = [random_formula(rng, c, Logic.MLL, atoms) for c in parts]
    left = rng.randint(0, n)
    return tuple(fs[:left]), tuple(fs[left:])


# --------------------------------------------------------------------------
# random provable sequents

@dataclass
class GeneratorConfig:
    depth: int = 4
    atoms: tuple[str, ...] = ("p", "q", "r")
    max_connectives: int = 8


def _connectives(fs) -> int:
    return sum(f.connectives() for f in fs)


class _LLGen:
    def __init__(self, rng: random.Random, logic: Logic, cfg: GeneratorConfig):
        self.rng, self.logic, self.cfg = rng, logic, cfg

    def gen(self, depth: int) -> LLSequent:
        rng = self.rng
        if depth <= 0 or rng.random() < 0.15:
            return self.leaf()
        if rng.random() < 0.35:
            g1, d1 = self.gen(depth - 1)
            g2, d2 = self.gen(depth - 1)
            out = self.binary(list(g1), list(d1), list(g2), list(d2))
        else:
            g, d = self.gen(depth - 1)
            out = self.unary(list(g), list(d))
        if out is None or _connectives(out[0] + out[1]) > self.cfg.max_connectives:
            return self.gen(depth - 1)
        return out

    def leaf(self) -> LLSequent:
        rng = self.rng
        r = rng.random()
        if r < 0.8:
            p = atom(rng.choice(self.cfg.atoms))
            return (p,), (p,)
        if self.logic is Logic.PLL and r < 0.9:
            junk = (atom(rng.choice(self.cfg.atoms)),)
            return ((unit("zero"),) + junk, ()) if rng.random() < 0.5 else (junk, (unit("top"),))
        return ((), (unit("one"),)) if rng.random() < 0.5 else ((unit("bot"),), ())

    def _take(self, ctx: list[Formula]) -> Formula | None:
        if not ctx:
            return None
        return ctx.pop(self.rng.randrange(len(ctx)))

    def binary(self, g1, d1, g2, d2):
        rng = self.rng
        rule = rng.choice(["tensorR", "parL", "lolliL"] + (["withR", "plusL"] if self.logic is Logic.PLL else []))
        if rule == "tensorR":
            a, b = self._take(d1), self._take(d2)
            if a is None or b is None:
                return None
            return tuple(g1 + g2), tuple(d1 + d2 + [binary("tensor", a, b)])
        if rule == "parL":
            a, b = self._take(g1), self._take(g2)
            if a is None or b is None:
                return None
            return tuple(g1 + g2 + [binary("par", a, b)]), tuple(d1 + d2)
        if rule == "lolliL":
            a, b = self._take(d1), self._take(g2)
            if a is None or b is None:
                return None
            return tuple(g1 + g2 + [binary("lolli", a, b)]), tuple(d1 + d2)
        # additive rules need identical side contexts: reuse the first premise
        if rule == "withR":
            a = self._take(d1)
            if a is None:
                return None
            other = binary("plus", a, random_formula(rng, 0, self.logic, self.cfg.atoms))
            return tuple(g1), tuple(d1 + [binary("with", a, other)])
        a = self._take(g1)
        if a is None:
            return None
        other = binary("with", a, random_formula(rng, 0, self.logic, self.cfg.atoms))
        return tuple(g1 + [binary("plus", a, other)]), tuple(d1)

    def unary(self, g, d):
        rng = self.rng
        rules = ["tensorL", "parR", "lolliR", "negL", "negR", "oneL", "botR"]
        if self.logic is Logic.PLL:
            rules += ["withL", "plusR", "!L", "?R", "W!L", "W?R", "!R", "?L", "C!L"]
        rule = rng.choice(rules)
        side = {"tensorL": g, "parR": d, "negR": g, "negL": d, "withL": g, "plusR": d,
                "!L": g, "?R": d, "?L": g, "!R": d, "C!L": g}.get(rule)
        if rule in ("tensorL", "parR"):
            if len(side) < 2:
                return None
            a, b = self._take(side), self._take(side)
            side.append(binary("tensor" if rule == "tensorL" else "par", a, b))
        elif rule == "lolliR":
            a, b = self._take(g), self._take(d)
            if a is None or b is None:
                return None
            d.append(binary("lolli", a, b))
        elif rule in ("negL", "negR"):
            a = self._take(side)
            if a is None:
                return None
            (g if rule == "negL" else d).append(unary("neg", a))
        elif rule == "oneL":
            g.append(unit("one"))
        elif rule == "botR":
            d.append(unit("bot"))
        elif rule in ("withL", "plusR"):
            a = self._take(side)
            if a is None:
                return None
            b = random_formula(rng, rng.randint(0, 1), self.logic, self.cfg.atoms)
            pair = (a, b) if rng.random() < 0.5 else (b, a)
            side.append(binary("with" if rule == "withL" else "plus", *pair))
        elif rule in ("!L", "?R"):
            a = self._take(side)
            if a is None:
                return None
            side.append(unary("bang" if rule == "!L" else "quest", a))
        elif rule == "W!L":
            g.append(unary("bang", atom(rng.choice(self.cfg.atoms))))
        elif rule == "W?R":
            d.append(unary("quest", atom(rng.choice(self.cfg.atoms))))
        elif rule in ("!R", "?L"):
            principal_side, want_g, want_d = (d, "bang", "quest") if rule == "!R" else (g, "bang", "quest")
            if len(principal_side) != 1 or len(g) + len(d) < 1:
                return None
            others_g = [f for f in g if f is not principal_side[0]] if rule == "?L" else g
            others_d = [f for f in d if f is not principal_side[0]] if rule == "!R" else d
            if any(f.op != want_g for f in others_g) or any(f.op != want_d for f in others_d):
                return None
            a = principal_side.pop()
            principal_side.append(unary("bang" if rule == "!R" else "quest", a))
        elif rule == "C!L":
            bangs = [f for f in g if f.op == "bang"]
            if len(bangs) < 2 or bangs[0] != bangs[1]:
                return None
            g.remove(bangs[0])
        return tuple(g), tuple(d)


class _BIGen:
    def __init__(self, rng: random.Random, cfg: GeneratorConfig):
        self.rng, self.cfg = rng, cfg

    def atom(self) -> Formula:
        return atom(self.rng.choice(self.cfg.atoms))

    def gen(self, depth: int) -> tuple[Bunch, Formula]:
        rng = self.rng
        if depth <= 0 or rng.random() < 0.15:
            return self.leaf()
        if rng.random() < 0.3:
            out = self.binary(self.gen(depth - 1), self.gen(depth - 1))
        else:
            out = self.unary(*self.gen(depth - 1))
        if out is None or _bi_size(out) > self.cfg.max_connectives:
            return self.gen(depth - 1)
        return out

    def leaf(self):
        r = self.rng.random()
        if r < 0.85:
            p = self.atom()
            return leaf(p), p
        if r < 0.93:
            return emp_m(), unit("unit_i")
        return emp_a(), unit("unit_1")

    def _leaves(self, b: Bunch):
        return [(a, n) for a, n in walk(b) if n.kind == "f"]

    def binary(self, left, right):
        rng = self.rng
        (g1, a), (g2, b) = left, right
        rule = rng.choice(["starR", "wandL", "arrowL", "andR"])
        if rule == "starR":
            return comma(g1, g2), binary("star", a, b)
        if rule == "andR":
            # the second conjunct reuses the first premise's context
            return g1, binary("and", a, binary("or", a, self.atom()))
        spots = [(ad, n) for ad, n in self._leaves(g2)]
        if not spots:
            return None
        addr, node = rng.choice(spots)
        f = binary("wand" if rule == "wandL" else "arrow", a, node.formula)
        glue = comma if rule == "wandL" else semi
        return replace_raw(g2, addr, glue(g1, leaf(f))), b

    def unary(self, g: Bunch, c: Formula):
        rng = self.rng
        rule = rng.choice(["starL", "andL", "orL", "wandR", "arrowR", "orR", "W", "IL", "1L"])
        leaves = self._leaves(g)
        if rule == "wandR" or rule == "arrowR":
            if g.kind == ("c" if rule == "wandR" else "s") and any(ch.kind == "f" for ch in g.children):
                idx = [k for k, ch in enumerate(g.children) if ch.kind == "f"]
                k = rng.choice(idx)
                rest = [ch for j, ch in enumerate(g.children) if j != k]
                op = "wand" if rule == "wandR" else "arrow"
                make = comma if rule == "wandR" else semi
                ante = rest[0] if len(rest) == 1 else make(*rest)
                return ante, binary(op, g.children[k].formula, c)
            if g.kind == "f":
                op = "wand" if rule == "wandR" else "arrow"
                return (emp_m() if rule == "wandR" else emp_a()), binary(op, g.formula, c)
            return None
        if rule == "orR":
            return g, binary("or", c, self.atom()) if rng.random() < 0.5 else binary("or", self.atom(), c)
        if rule == "W":
            addr = rng.choice([a for a, _ in walk(g)])
            return replace_raw(g, addr, semi(get(g, addr), leaf(self.atom()))), c
        if rule == "IL":
            return comma(g, leaf(unit("unit_i"))), c
        if rule == "1L":
            return semi(g, leaf(unit("unit_1"))), c
        if not leaves:
            return None
        addr, node = rng.choice(leaves)
        if rule == "andL":
            return replace_raw(g, addr, leaf(binary("and", node.formula, self.atom()))), c
        if rule == "orL":
            alt = binary("and", node.formula, self.atom())
            return replace_raw(g, addr, leaf(binary("or", node.formula, alt))), c
        # starL: merge two leaves that are children of the same comma
        parent = addr[:-1]
        if not addr or get(g, parent).kind != "c":
            return None
        sibs = [k for k, ch in enumerate(get(g, parent).children) if ch.kind == "f" and k != addr[-1]]
        if not sibs:
            return None
        k = rng.choice(sibs)
        pnode = get(g, parent)
        other = pnode.children[k]
        merged = leaf(binary("star", node.formula, other.formula))
        kids = [merged if j == addr[-1] else ch for j, ch in enumerate(pnode.children) if j != k]
        new = kids[0] if len(kids) == 1 else comma(*kids)
        return replace_raw(g, parent, new), c


def _bi_size(seq) -> int:
    b, c = seq
    return sum(n.formula.connectives() for _, n in walk(b) if n.kind == "f") + c.connectives()


def random_provable(rng: random.Random, logic: Logic, cfg: GeneratorConfig = GeneratorConfig()):
    """A provable sequent: ``(ante, succ)`` tuples for the linear logics, a
    ``(Bunch, Formula)`` pair for BI."""
    if logic is Logic.BI:
        return _BIGen(rng, cfg).gen(cfg.depth)
    return _LLGen(rng, logic, cfg).gen(cfg.depth)


def provable_corpus(logic: Logic, n: int, seed: int = 0, cfg: GeneratorConfig = GeneratorConfig(),
                    min_connectives: int = 1) -> list:
    """``n`` distinct generated provable sequents with at least
    ``min_connectives`` connectives."""
    rng = random.Random(seed)
    out, seen = [], set()
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 200 * n:
            raise RuntimeError("generator keeps producing duplicates")
        seq = random_provable(rng, logic, cfg)
        size = _bi_size(seq) if logic is Logic.BI else _connectives(seq[0] + seq[1])
        if size < min_connectives:
            continue
        key = repr(seq)
        if key not in seen:
            seen.add(key)
            out.append(seq)
    return out


__all__ = [
    "GeneratorConfig", "count_mll", "enumerate_mll", "mll_formulas", "provable_corpus",
    "random_formula", "random_mll_sequent", "random_provable",
]
