"""From a solved resource derivation to a plain sequent proof.

Every formula (or sub-bunch) whose expression evaluates to 0 is deleted.
For the linear logics that is the whole story: each resource node becomes
one plain node with the same rule.  BI needs more care.  Deleting
sub-bunches can leave a bunch that matches the plain rule only up to
coherent equivalence, so extraction builds the exact shape each rule
expects and inserts explicit ``E`` steps where the shapes differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union

from .boolexpr import ZERO, Constraint, UnassignedVariable, VarAllocator, evaluate
from .calculus import (
    ResourceSequent, RuleError, applicable, apply, principal_expr, principal_formula,
)
from .context import (
    AFormula, Address, Bunch, canonical, comma, emp_a, emp_m, format_bunch, get, leaf,
    replace_raw, restrict_ll, semi, taggable, walk,
)
from .formula import Formula, Logic, format_formula
from .search import DerivationNode, ResourceDerivation, ResourceProof


class ExtractionError(ValueError):
    pass


@dataclass
class PlainNode:
    antecedent: Union[tuple[Formula, ...], Bunch]
    succedent: Union[tuple[Formula, ...], Formula]
    rule: str
    principal: str | None = None
    children: list["PlainNode"] = field(default_factory=list)

    def sequent_text(self) -> str:
        if isinstance(self.antecedent, Bunch):
            left = format_bunch(self.antecedent, annotate=False)
            return f"{left} |- {format_formula(self.succedent)}"
        left = ", ".join(format_formula(f) for f in self.antecedent)
        right = ", ".join(format_formula(f) for f in self.succedent)
        return f"{left} |- {right}".strip()

    def nodes(self) -> Iterator["PlainNode"]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def render(self, indent: str = "") -> str:
        lines = [f"{indent}{self.sequent_text()}   [{self.rule}]"]
        for c in self.children:
            lines.append(c.render(indent + "  "))
        return "\n".join(lines)


@dataclass
class PlainProof:
    logic: Logic
    root: PlainNode

    def render(self) -> str:
        return self.root.render()

    def rules(self) -> list[str]:
        return [n.rule for n in self.root.nodes()]


# --------------------------------------------------------------------------
# checks on the resource side

def endsequent_check(d: ResourceDerivation) -> bool:
    """Every endsequent variable and every principal expression is 1.

    Raises UnassignedVariable when the assignment is partial."""
    a = d.assignment
    missing = d.variables() - set(a)
    if missing:
        raise UnassignedVariable(f"assignment is partial: x{min(missing)} unassigned")
    if any(a[v] != 1 for v in d.endsequent_vars):
        return False
    for node in d.root.nodes():
        if node.rule is None:
            return False
        if evaluate(principal_expr(node.sequent, node.rule), a) != 1:
            return False
    return True


class ReplayAllocator(VarAllocator):
    """Hands out a recorded list of variables instead of new ones."""

    def __init__(self, vars: Sequence[int]):
        super().__init__()
        self.vars = list(vars)
        self.pos = 0

    def fresh(self, n: int) -> list[int]:
        out = self.vars[self.pos:self.pos + n]
        if len(out) != n:
            raise ExtractionError("replay asked for more variables than were recorded")
        self.pos += n
        return out


def replay(root: DerivationNode) -> list[Constraint]:
    """Re-apply every recorded rule and return all emitted constraints.

    Raises ExtractionError if a recorded premise differs from what the rule
    produces."""
    out: list[Constraint] = []
    stack = [root]
    while stack:
        node = stack.pop()
        if node.rule is None:
            raise ExtractionError("derivation has an open leaf")
        try:
            app = apply(node.sequent, node.rule, ReplayAllocator(node.fresh))
        except RuleError as err:
            raise ExtractionError(f"rule does not apply on replay: {err}") from None
        if [c.sequent for c in node.children] != app.premises:
            raise ExtractionError(f"premises of {node.rule} differ on replay")
        out.extend(app.emitted)
        stack.extend(reversed(node.children))
    return out


def recheck(proof: ResourceProof) -> bool:
    """Independent re-check of a proof found by search: replay every rule,
    then evaluate the replayed constraints under the assignment."""
    d = proof.derivation
    try:
        constraints = replay(d.root)
    except ExtractionError:
        return False
    a = proof.assignment
    try:
        if not all(c.holds(a) for c in constraints):
            return False
        return endsequent_check(d)
    except UnassignedVariable:
        return False


# --------------------------------------------------------------------------
# weakening by 0-tagged formulas

def _strip_zero(seq: ResourceSequent) -> ResourceSequent:
    if seq.is_bi:
        return ResourceSequent(seq.logic, canonical(_drop_zero(seq.antecedent)), seq.succedent)
    keep = lambda ctx: tuple(a for a in ctx if not a.expr.zero)
    return ResourceSequent(seq.logic, keep(seq.antecedent), keep(seq.succedent))


def _drop_zero(b: Bunch) -> Bunch:
    if b.is_leaf:
        return b
    kids = tuple(_drop_zero(c) for c in b.children if not c.expr.zero)
    return Bunch(b.kind, None, kids, b.expr)


def _nontrivial(cs: list[Constraint]) -> list[Constraint]:
    return [c for c in cs if not (c.expr.zero and c.target == 0)]


def _weaken(seq: ResourceSequent, f: Formula, side: str) -> ResourceSequent:
    junk_expr = ZERO
    if seq.is_bi:
        return ResourceSequent(seq.logic, canonical(comma(seq.antecedent, leaf(f, junk_expr))), seq.succedent)
    junk = (AFormula(f, junk_expr),)
    if side == "L":
        return ResourceSequent(seq.logic, seq.antecedent + junk, seq.succedent)
    return ResourceSequent(seq.logic, seq.antecedent, seq.succedent + junk)


def _replay_like(node: DerivationNode, seq: ResourceSequent) -> DerivationNode:
    """Re-derive ``seq`` (``node.sequent`` plus 0-tagged junk) with the
    same rules, fresh variables and premise shapes as ``node``."""
    inst = node.rule
    if inst is None:
        raise ExtractionError("derivation has an open leaf")
    want = [_strip_zero(c.sequent) for c in node.children]
    cands = applicable(seq)
    # the same position first; for BI the junk may shift addresses
    cands.sort(key=lambda c: c != inst)
    for cand in cands:
        if cand.rule != inst.rule or cand.other != inst.other:
            continue
        try:
            app = apply(seq, cand, ReplayAllocator(node.fresh))
        except (RuleError, ExtractionError):
            continue
        if [_strip_zero(p) for p in app.premises] != want:
            continue
        if _nontrivial(app.emitted) != _nontrivial(node.emitted):
            continue
        kids = [_replay_like(c, p) for c, p in zip(node.children, app.premises)]
        return DerivationNode(seq, cand, app.emitted, list(node.fresh), kids)
    raise ExtractionError(f"cannot replay {inst.rule} after weakening")


def inject_zero(node: DerivationNode, f: Formula, side: str = "L") -> DerivationNode:
    """The subderivation at ``node`` redone with ``f`` added to its
    endsequent under expression 0 (on the given side for linear logic)."""
    return _replay_like(node, _weaken(node.sequent, f, side))


# --------------------------------------------------------------------------
# linear logic

def _ll_node(node: DerivationNode, a: Mapping[int, int]) -> PlainNode:
    seq = node.sequent
    ante = restrict_ll(seq.antecedent, a)
    succ = restrict_ll(seq.succedent, a)
    inst = node.rule
    if inst is None:
        raise ExtractionError("derivation has an open leaf")
    if evaluate(principal_expr(seq, inst), a) != 1:
        raise ExtractionError(f"principal of {inst.rule} is deleted")
    pf = principal_formula(seq, inst)
    principal = format_formula(pf) if pf is not None else None
    kids = [_ll_node(c, a) for c in node.children]
    if inst.rule == "!LC":
        # the combined rule is contraction followed by dereliction
        mid = ante + (pf,)
        return PlainNode(ante, succ, "C!L", principal, [PlainNode(mid, succ, "!L", principal, kids)])
    return PlainNode(ante, succ, inst.rule, principal, kids)


# --------------------------------------------------------------------------
# BI

_UNIT = {"c": "em", "s": "ea"}


def restrict_tracked(b: Bunch, a: Mapping[int, int]) -> tuple[Bunch, dict[Address, Address]]:
    """Delete 0-valued sub-bunches without re-sorting.

    Composite nodes left with one child collapse onto it; emptied ones
    become their unit.  Returns the plain tree and a map from surviving
    addresses of ``b`` to addresses in the result."""
    r = _track(b, a)
    if r is None:
        return emp_m(), {}
    return r


def _track(b: Bunch, a: Mapping[int, int]):
    if evaluate(b.expr, a) == 0:
        return None
    if b.is_leaf:
        return Bunch(b.kind, b.formula), {(): ()}
    kids = []
    for k, c in enumerate(b.children):
        r = _track(c, a)
        if r is not None:
            kids.append((k, r))
    if not kids:
        return Bunch(_UNIT[b.kind]), {(): ()}
    if len(kids) == 1:
        k, (tree, amap) = kids[0]
        out = {(): ()}
        out.update({(k,) + src: dst for src, dst in amap.items()})
        return tree, out
    out = {(): ()}
    children = []
    for j, (k, (tree, amap)) in enumerate(kids):
        children.append(tree)
        out.update({(k,) + src: (j,) + dst for src, dst in amap.items()})
    return Bunch(b.kind, None, tuple(children)), out


def _bridge(target_ante: Bunch, goal: Formula, child: PlainNode) -> PlainNode:
    """``child`` re-labelled to conclude ``target_ante |- goal`` via E.

    A multiplicative context deleted as a whole restricts to ``emp_m``,
    which is not a unit of ``;``.  Such members of additive bunches are
    weakened away first, one W per bunch."""
    if child.antecedent == target_ante:
        return child
    if child.rule == "E":
        child = child.children[0]
        if child.antecedent == target_ante:
            return child
    chain = []
    current = target_ante
    want = canonical(child.antecedent)
    while canonical(current) != want:
        addr = next((ad for ad, n in walk(current)
                     if n.kind == "s" and any(c.kind == "em" for c in n.children)), None)
        if addr is None:
            break
        kids = [c for c in get(current, addr).children if c.kind != "em"] or [emp_m()]
        chain.append(current)
        current = replace_raw(current, addr, kids[0] if len(kids) == 1 else semi(*kids))
    node = child if child.antecedent == current else PlainNode(current, goal, "E", None, [child])
    for concl in reversed(chain):
        node = PlainNode(concl, goal, "W", None, [node])
    return node


def _bi_node(node: DerivationNode, a: Mapping[int, int]) -> PlainNode:
    seq = node.sequent
    inst = node.rule
    if inst is None:
        raise ExtractionError("derivation has an open leaf")
    goal = seq.succedent
    if evaluate(principal_expr(seq, inst), a) != 1:
        raise ExtractionError(f"principal of {inst.rule} is deleted")
    R, amap = restrict_tracked(seq.antecedent, a)
    kids = [_bi_node(c, a) for c in node.children]
    rule = inst.rule
    pf = principal_formula(seq, inst)
    principal = format_formula(pf) if pf is not None else None

    def done(concl: Bunch, premises: list[tuple[Bunch, Formula]], name: str = rule) -> PlainNode:
        bridged = [_bridge(p, g, k) for (p, g), k in zip(premises, kids)]
        out = PlainNode(concl, goal, name, principal, bridged)
        return _bridge(R, goal, out) if concl != R else out

    if rule in ("Axiom", "botL"):
        return done(leaf(pf), [])
    if rule == "IR":
        return done(emp_m(), [])
    if rule == "1R":
        return done(emp_a(), [])

    if inst.side == "R":
        if rule == "wandR":
            return done(R, [(comma(R, leaf(goal.children[0])), goal.children[1])])
        if rule == "arrowR":
            return done(R, [(semi(R, leaf(goal.children[0])), goal.children[1])])
        if rule == "andR":
            return done(R, [(R, goal.children[0]), (R, goal.children[1])])
        if rule == "orR":
            return done(R, [(R, goal.children[inst.other])])
        if rule == "starR":
            d1, d2 = kids[0].antecedent, kids[1].antecedent
            return done(comma(d1, d2), [(d1, goal.children[0]), (d2, goal.children[1])])
        raise ExtractionError(f"unknown right rule {rule}")

    addr = inst.index
    if addr not in amap:
        raise ExtractionError(f"principal of {rule} is deleted")
    at = amap[addr]
    here = get(R, at)

    if rule == "W":
        if inst.other == -1:
            shaped = replace_raw(R, at, semi(emp_a(), here))
            return done(shaped, [(replace_raw(R, at, emp_a()), goal)])
        kept = addr + (inst.other,)
        if kept not in amap:
            raise ExtractionError("W keeps a deleted bunch")
        if amap[kept] == at:
            # everything else in the additive bunch was deleted already
            return _bridge(R, goal, kids[0])
        return done(R, [(replace_raw(R, at, get(R, amap[kept])), goal)])
    if rule == "C":
        return done(R, [(replace_raw(R, at, semi(here, here)), goal)])

    f = pf
    local = {
        "starL": lambda: [comma(leaf(f.children[0]), leaf(f.children[1]))],
        "andL": lambda: [semi(leaf(f.children[0]), leaf(f.children[1]))],
        "IL": lambda: [emp_m()],
        "1L": lambda: [emp_a()],
        "orL": lambda: [leaf(f.children[0]), leaf(f.children[1])],
    }
    if rule in local:
        return done(R, [(replace_raw(R, at, new), goal) for new in local[rule]()])

    parent = addr[:-1]
    if rule == "wandL":
        d1 = kids[0].antecedent
        if addr and get(seq.antecedent, parent).kind == "c":
            # siblings whose split variable is 0 stay with the conclusion
            pnode = get(seq.antecedent, parent)
            sib_addrs = [parent + (k,) for k in range(len(pnode.children)) if k != addr[-1]]
            positions = taggable(comma(*[get(seq.antecedent, s) for s in sib_addrs]))
            var_of = {sib_addrs[pos[0]]: v for pos, v in zip(positions, node.fresh)}
            stay = [get(R, amap[s]) for s in sib_addrs
                    if s in amap and s in var_of and a[var_of[s]] == 0]
            where = amap[parent]
        else:
            stay, where = [], at
        shaped = replace_raw(R, where, comma(*stay, d1, leaf(f)))
        after = comma(*stay, leaf(f.children[1])) if stay else leaf(f.children[1])
        return done(shaped, [(d1, f.children[0]), (replace_raw(R, where, after), goal)])
    if rule == "arrowL":
        d1 = kids[0].antecedent
        anchor = addr[:inst.other] if inst.other is not None else parent
        if addr and get(seq.antecedent, anchor).kind == "s" and amap.get(anchor) != at:
            where = amap[anchor]
        else:
            where = at
        shaped = replace_raw(R, where, semi(d1, leaf(f)))
        return done(shaped, [(d1, f.children[0]), (replace_raw(R, where, semi(d1, leaf(f.children[1]))), goal)])
    raise ExtractionError(f"unknown rule {rule}")


# --------------------------------------------------------------------------

def extract(proof: ResourceProof) -> PlainProof:
    d = proof.derivation
    a = d.assignment
    if not d.total:
        raise ExtractionError("assignment is partial")
    if any(a[v] != 1 for v in d.endsequent_vars):
        raise ExtractionError("an endsequent variable is 0")
    return extract_derivation(d, proof.goal)


def extract_derivation(d: ResourceDerivation, goal: tuple | None = None) -> PlainProof:
    a = d.assignment
    if d.logic is Logic.BI:
        root = _bi_node(d.root, a)
        if goal is not None:
            root = _bridge(goal[0], goal[1], root)
        return PlainProof(d.logic, root)
    return PlainProof(d.logic, _ll_node(d.root, a))


__all__ = [
    "ExtractionError", "PlainNode", "PlainProof", "ReplayAllocator", "endsequent_check", "extract",
    "extract_derivation", "inject_zero", "recheck", "replay", "restrict_tracked",
]
