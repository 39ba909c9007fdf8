"""Oracles that share no code with the search: a plain proof checker and a
brute-force MLL prover.

The checker reads linear logic contexts as multisets.  BI antecedents are
compared syntactically: any reshaping up to coherent equivalence must be an
explicit ``E`` node.  The splitting rules ``*R`` and ``-*L`` pick their
parts as order-preserving sub-sequences of a ``,`` node.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

from .context import Bunch, canonical, comma, emp_a, emp_m, get, leaf, replace_raw, semi, walk
from .extract import PlainNode, PlainProof
from .formula import Formula, Logic, unit

BRUTE_FORCE_BOUND = 14


class BoundExceeded(ValueError):
    pass


# --------------------------------------------------------------------------
# linear logic

_MLL_RULES = {
    "Axiom", "botL", "botR", "oneL", "oneR", "parL", "parR", "tensorL", "tensorR",
    "lolliL", "lolliR", "negL", "negR",
}
_PLL_RULES = _MLL_RULES | {
    "zeroL", "topR", "plusL", "plusR", "withL", "withR", "!L", "!R", "?L", "?R",
    "W!L", "W?R", "C!L", "C?R",
}
_BI_RULES = {
    "Axiom", "botL", "IR", "1R", "IL", "1L", "starL", "starR", "wandL", "wandR",
    "andL", "andR", "orL", "orR", "arrowL", "arrowR", "W", "C", "E",
}
RULES = {Logic.MLL: _MLL_RULES, Logic.PLL: _PLL_RULES, Logic.BI: _BI_RULES}

# connective decomposed by each single-side logical rule
_LEFT_OP = {
    "botL": "bot", "oneL": "one", "parL": "par", "tensorL": "tensor", "lolliL": "lolli",
    "negL": "neg", "zeroL": "zero", "plusL": "plus", "withL": "with", "!L": "bang",
    "?L": "quest", "W!L": "bang", "C!L": "bang",
}
_RIGHT_OP = {
    "botR": "bot", "oneR": "one", "parR": "par", "tensorR": "tensor", "lolliR": "lolli",
    "negR": "neg", "topR": "top", "plusR": "plus", "withR": "with", "!R": "bang",
    "?R": "quest", "W?R": "quest", "C?R": "quest",
}


def _split_ok(rest_a: Counter, rest_s: Counter, prems, extra) -> bool:
    """Two premises split ``rest_a |- rest_s`` after removing the active
    formulas listed in ``extra`` (side, premise index, formula)."""
    (a1, s1), (a2, s2) = prems
    a1, s1, a2, s2 = Counter(a1), Counter(s1), Counter(a2), Counter(s2)
    sides = {("L", 0): a1, ("R", 0): s1, ("L", 1): a2, ("R", 1): s2}
    for side, k, f in extra:
        ctx = sides[(side, k)]
        if ctx[f] < 1:
            return False
        ctx[f] -= 1
    return +(a1 + a2) == rest_a and +(s1 + s2) == rest_s


def _ll_step(ante: Counter, succ: Counter, rule: str, prems: list[tuple[Counter, Counter]]) -> bool:
    n = len(prems)
    if rule == "Axiom":
        return n == 0 and len(+ante) == 1 and ante == succ and next(iter(ante)).is_atom
    if rule in _LEFT_OP:
        side, ctx, op = "L", ante, _LEFT_OP[rule]
    elif rule in _RIGHT_OP:
        side, ctx, op = "R", succ, _RIGHT_OP[rule]
    else:
        return False
    for f in [g for g in ctx if g.op == op]:
        rest = ctx - Counter([f])
        rest_a, rest_s = (rest, succ) if side == "L" else (ante, rest)
        if _ll_instance(rule, side, f, rest_a, rest_s, prems):
            return True
    return False


def _ll_instance(rule, side, f, rest_a, rest_s, prems) -> bool:
    n = len(prems)
    kids = f.children

    def one(a, s) -> bool:
        return n == 1 and prems[0] == (+a, +s)

    if rule in ("botL", "oneR"):
        return n == 0 and not rest_a and not rest_s
    if rule in ("zeroL", "topR"):
        return n == 0
    if rule in ("oneL", "botR", "W!L", "W?R"):
        return one(rest_a, rest_s)
    if rule == "tensorL":
        return one(rest_a + Counter(kids), rest_s)
    if rule == "parR":
        return one(rest_a, rest_s + Counter(kids))
    if rule == "lolliR":
        return one(rest_a + Counter([kids[0]]), rest_s + Counter([kids[1]]))
    if rule == "negL":
        return one(rest_a, rest_s + Counter(kids))
    if rule == "negR":
        return one(rest_a + Counter(kids), rest_s)
    if rule == "withL":
        return any(one(rest_a + Counter([k]), rest_s) for k in kids)
    if rule == "plusR":
        return any(one(rest_a, rest_s + Counter([k])) for k in kids)
    if rule == "!L":
        return one(rest_a + Counter(kids), rest_s)
    if rule == "?R":
        return one(rest_a, rest_s + Counter(kids))
    if rule in ("!R", "?L"):
        if any(g.op != "bang" for g in rest_a) or any(g.op != "quest" for g in rest_s):
            return False
        if rule == "!R":
            return one(rest_a, rest_s + Counter(kids))
        return one(rest_a + Counter(kids), rest_s)
    if rule == "C!L":
        return one(rest_a + Counter([f, f]), rest_s)
    if rule == "C?R":
        return one(rest_a, rest_s + Counter([f, f]))
    if rule == "withR":
        return n == 2 and prems == [(+rest_a, +(rest_s + Counter([k]))) for k in kids]
    if rule == "plusL":
        return n == 2 and prems == [(+(rest_a + Counter([k])), +rest_s) for k in kids]
    if n != 2:
        return False
    a, b = kids
    if rule == "tensorR":
        return _split_ok(rest_a, rest_s, prems, [("R", 0, a), ("R", 1, b)])
    if rule == "parL":
        return _split_ok(rest_a, rest_s, prems, [("L", 0, a), ("L", 1, b)])
    if rule == "lolliL":
        return _split_ok(rest_a, rest_s, prems, [("R", 0, a), ("L", 1, b)])
    return False


def _ll_error(node: PlainNode, logic: Logic) -> str | None:
    if node.rule not in RULES[logic]:
        return f"rule {node.rule} is not part of {logic.name}"
    ante, succ = Counter(node.antecedent), Counter(node.succedent)
    prems = [(Counter(c.antecedent), Counter(c.succedent)) for c in node.children]
    if not _ll_step(ante, succ, node.rule, prems):
        return f"{node.sequent_text()} is not a conclusion of {node.rule} from its premises"
    return None


# --------------------------------------------------------------------------
# BI

def _group(kind: str, items: Sequence[Bunch]) -> Bunch:
    if not items:
        return emp_m() if kind == "c" else emp_a()
    if len(items) == 1:
        return items[0]
    return comma(*items) if kind == "c" else semi(*items)


def _subsequences(items: Sequence[Bunch]) -> Iterator[tuple[list[Bunch], list[int]]]:
    """Every order-preserving choice, with the indices left over."""
    n = len(items)
    for mask in range(1 << n):
        chosen = [items[i] for i in range(n) if mask >> i & 1]
        yield chosen, [i for i in range(n) if not mask >> i & 1]


def _bi_step(ante: Bunch, goal: Formula, rule: str, prems: list[tuple[Bunch, Formula]]) -> bool:
    n = len(prems)
    if rule == "E":
        return n == 1 and prems[0][1] == goal and canonical(prems[0][0]) == canonical(ante)
    if rule == "Axiom":
        return n == 0 and ante == leaf(goal)
    if rule == "botL":
        return n == 0 and any(b.kind == "f" and b.formula.op == "bot" for _, b in walk(ante))
    if rule == "IR":
        return n == 0 and ante.kind == "em" and goal.op == "unit_i"
    if rule == "1R":
        return n == 0 and ante.kind == "ea" and goal.op == "unit_1"

    if rule in ("wandR", "arrowR", "andR", "orR", "starR"):
        op = {"wandR": "wand", "arrowR": "arrow", "andR": "and", "orR": "or", "starR": "star"}[rule]
        if goal.op != op:
            return False
        a, b = goal.children
        if rule == "wandR":
            return prems == [(comma(ante, leaf(a)), b)]
        if rule == "arrowR":
            return prems == [(semi(ante, leaf(a)), b)]
        if rule == "andR":
            return prems == [(ante, a), (ante, b)]
        if rule == "orR":
            return prems in ([(ante, a)], [(ante, b)])
        if n != 2 or prems[0][1] != a or prems[1][1] != b:
            return False
        items = list(ante.children) if ante.kind == "c" else ([] if ante.kind == "em" else [ante])
        for chosen, rest in _subsequences(items):
            if (prems[0][0] == _group("c", chosen)
                    and prems[1][0] == _group("c", [items[i] for i in rest])):
                return True
        return False

    for addr, node in walk(ante):
        if _bi_at(ante, goal, rule, addr, node, prems):
            return True
    return False


_LOCAL = {
    "starL": ("star", lambda a, b: [comma(leaf(a), leaf(b))]),
    "andL": ("and", lambda a, b: [semi(leaf(a), leaf(b))]),
    "orL": ("or", lambda a, b: [leaf(a), leaf(b)]),
}


def _bi_at(ante, goal, rule, addr, node, prems) -> bool:
    n = len(prems)
    if rule == "W":
        if node.kind != "s" or n != 1 or prems[0][1] != goal:
            return False
        kids = node.children
        for chosen, _ in _subsequences(kids):
            if 0 < len(chosen) < len(kids) and prems[0][0] == replace_raw(ante, addr, _group("s", chosen)):
                return True
        return False
    if rule == "C":
        return (n == 1 and node.kind not in ("em", "ea") and prems[0][1] == goal
                and prems[0][0] == replace_raw(ante, addr, semi(node, node)))
    if node.kind != "f":
        return False
    f = node.formula
    if rule == "IL":
        return f.op == "unit_i" and prems == [(replace_raw(ante, addr, emp_m()), goal)]
    if rule == "1L":
        return f.op == "unit_1" and prems == [(replace_raw(ante, addr, emp_a()), goal)]
    if rule in _LOCAL:
        op, make = _LOCAL[rule]
        if f.op != op:
            return False
        return prems == [(replace_raw(ante, addr, b), goal) for b in make(*f.children)]
    if rule not in ("wandL", "arrowL") or n != 2:
        return False
    if f.op != ("wand" if rule == "wandL" else "arrow"):
        return False
    a, b = f.children
    if prems[0][1] != a or prems[1][1] != goal:
        return False
    parent = get(ante, addr[:-1]) if addr else None
    if rule == "arrowL":
        if parent is not None and parent.kind == "s":
            others = [c for k, c in enumerate(parent.children) if k != addr[-1]]
            return (prems[0][0] == _group("s", others)
                    and prems[1][0] == replace_raw(ante, addr, leaf(b)))
        return prems[0][0] == emp_a() and prems[1][0] == replace_raw(ante, addr, leaf(b))
    # wandL
    if parent is None or parent.kind != "c":
        return prems[0][0] == emp_m() and prems[1][0] == replace_raw(ante, addr, leaf(b))
    me = addr[-1]
    others = [(k, c) for k, c in enumerate(parent.children) if k != me]
    for chosen, rest in _subsequences([c for _, c in others]):
        if prems[0][0] != _group("c", chosen):
            continue
        keep = {others[i][0] for i in rest}
        remaining = [leaf(b) if k == me else c for k, c in enumerate(parent.children) if k in keep or k == me]
        if prems[1][0] == replace_raw(ante, addr[:-1], _group("c", remaining)):
            return True
    return False


def _bi_error(node: PlainNode) -> str | None:
    if node.rule not in _BI_RULES:
        return f"rule {node.rule} is not part of BI"
    if not isinstance(node.antecedent, Bunch):
        return "BI antecedent must be a bunch"
    prems = [(c.antecedent, c.succedent) for c in node.children]
    if not _bi_step(node.antecedent, node.succedent, node.rule, prems):
        return f"{node.sequent_text()} is not a conclusion of {node.rule} from its premises"
    return None


# --------------------------------------------------------------------------

def find_error(p: PlainProof, logic: Logic | None = None) -> str | None:
    """The first incorrect inference, or None when the proof checks."""
    logic = logic or p.logic
    for node in p.root.nodes():
        if logic is Logic.BI:
            err = _bi_error(node)
        elif isinstance(node.antecedent, Bunch):
            err = "linear logic contexts must be formula lists"
        else:
            err = _ll_error(node, logic)
        if err:
            return err
    return None


def check_proof(p: PlainProof, logic: Logic | None = None, goal: tuple | None = None) -> bool:
    """True iff every node is an instance of a standard rule.  With ``goal``
    the root must also conclude exactly that sequent (as multisets for the
    linear logics)."""
    if goal is not None:
        ante, succ = goal
        root = p.root
        if (logic or p.logic) is Logic.BI:
            if (root.antecedent, root.succedent) != (ante, succ):
                return False
        elif (Counter(root.antecedent), Counter(root.succedent)) != (Counter(ante), Counter(succ)):
            return False
    return find_error(p, logic) is None


# --------------------------------------------------------------------------
# brute force MLL

def _size(ctx) -> int:
    return sum(f.size() for f in ctx)


def brute_force_prove(ante: Sequence[Formula], succ: Sequence[Formula], logic: Logic = Logic.MLL,
                      bound: int = BRUTE_FORCE_BOUND) -> bool:
    """Exhaustive proof search in the plain MLL calculus, trying every rule
    on every formula and every context split."""
    if logic is not Logic.MLL:
        raise ValueError("the brute-force oracle covers MLL only")
    total = _size(ante) + _size(succ)
    if total > bound:
        raise BoundExceeded(f"sequent size {total} exceeds the bound {bound}")
    return _bf(_key(ante), _key(succ))


def _key(ctx) -> tuple[Formula, ...]:
    return tuple(sorted(ctx, key=str))


@lru_cache(maxsize=None)
def _bf(ante: tuple[Formula, ...], succ: tuple[Formula, ...]) -> bool:
    if len(ante) == 1 and ante == succ and ante[0].is_atom:
        return True
    if ante == (unit("bot"),) and not succ:
        return True
    if not ante and succ == (unit("one"),):
        return True

    def drop(ctx, i):
        return ctx[:i] + ctx[i + 1:]

    def prove(a, s):
        return _bf(_key(a), _key(s))

    for i, f in enumerate(ante):
        rest = drop(ante, i)
        k = f.children
        if f.op == "one" and prove(rest, succ):
            return True
        if f.op == "tensor" and prove(rest + k, succ):
            return True
        if f.op == "neg" and prove(rest, succ + k):
            return True
        if f.op in ("par", "lolli"):
            for a1, a2 in _index_splits(rest):
                for s1, s2 in _index_splits(succ):
                    if f.op == "par" and prove(a1 + (k[0],), s1) and prove(a2 + (k[1],), s2):
                        return True
                    if f.op == "lolli" and prove(a1, s1 + (k[0],)) and prove(a2 + (k[1],), s2):
                        return True
    for j, f in enumerate(succ):
        rest = drop(succ, j)
        k = f.children
        if f.op == "bot" and prove(ante, rest):
            return True
        if f.op == "par" and prove(ante, rest + k):
            return True
        if f.op == "lolli" and prove(ante + (k[0],), rest + (k[1],)):
            return True
        if f.op == "neg" and prove(ante + k, rest):
            return True
        if f.op == "tensor":
            for a1, a2 in _index_splits(ante):
                for s1, s2 in _index_splits(rest):
                    if prove(a1, s1 + (k[0],)) and prove(a2, s2 + (k[1],)):
                        return True
    return False


def _index_splits(ctx: tuple) -> Iterator[tuple[tuple, tuple]]:
    seen = set()
    for mask in range(1 << len(ctx)):
        left = tuple(f for i, f in enumerate(ctx) if mask >> i & 1)
        right = tuple(f for i, f in enumerate(ctx) if not mask >> i & 1)
        key = (_key(left), _key(right))
        if key not in seen:
            seen.add(key)
            yield left, right


__all__ = ["BRUTE_FORCE_BOUND", "BoundExceeded", "RULES", "brute_force_prove", "check_proof", "find_error"]
