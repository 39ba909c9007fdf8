"""Backtracking proof search over the resource calculi.

The search keeps one constraint store for the whole derivation.  Every rule
application runs under ``push``/``pop``, so backtracking discards exactly
the constraints and fresh variables of the abandoned attempt.  Strategies
only change *when* satisfiability is checked:

* ``lazy``: after every closed leaf;
* ``intermediate(n)``: after every ``n`` closed leaves.  Placement
  ``leaves`` takes the leaves in depth-first order; placement ``root``
  opens up to ``n`` lanes at the first splits and takes one leaf from each
  lane in turn;
* ``eager``: once, after the whole tree is closed.  Nothing is pruned by
  the solver on the way.  In the linear logics each invertible formula is
  a two-way choice instead of one choice among many orders: decompose it
  now, or declare it deleted (its expression is 0) below this point, so
  nothing later picks a formula whose expression contains a deleted one.
  When the single solve of a closed derivation fails, the failed store is
  cut down to its shortest unsatisfiable prefix of rule applications and
  the search jumps back to the last application in that prefix: every
  derivation in between shares the refuted prefix.  A branch that has no
  rule left stops the attempt before the other branches are worked on;
* ``fact_first``: like lazy, but open goals that can close by an axiom are
  worked on first.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .boolexpr import BoolExpr, Constraint, Lit, VarAllocator, partial_value
from .calculus import (
    ADDITIVE, CONTRACTION, INVERTIBLE, SPLITTING, CalculusOptions, ResourceSequent,
    RuleInstance, applicable, apply, endsequent, is_leaf_rule, principal_expr,
)
from .context import Bunch, get, slots, walk
from .formula import Formula, Logic
from .solver import CONSISTENT, ConstraintStore


class SearchError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Strategy:
    kind: str = "lazy"  # lazy | eager | intermediate | fact_first
    n: int = 1
    placement: str = "leaves"  # intermediate only: leaves | root

    def __post_init__(self):
        if self.kind not in ("lazy", "eager", "intermediate", "fact_first"):
            raise SearchError(f"unknown strategy {self.kind!r}")
        if self.kind == "intermediate" and self.n < 2:
            raise SearchError("intermediate strategies need n >= 2")
        if self.placement not in ("leaves", "root"):
            raise SearchError(f"unknown placement {self.placement!r}")

    @classmethod
    def lazy(cls) -> "Strategy":
        return cls("lazy")

    @classmethod
    def eager(cls) -> "Strategy":
        return cls("eager")

    @classmethod
    def fact_first(cls) -> "Strategy":
        return cls("fact_first")

    @classmethod
    def intermediate(cls, n: int, placement: str = "leaves") -> "Strategy":
        return cls("intermediate", n, placement)

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        """``lazy``, ``eager``, ``fact-first``, ``n=<k>`` or ``n=<k>:root``."""
        t = text.strip().lower().replace("_", "-")
        if t == "lazy":
            return cls.lazy()
        if t == "eager":
            return cls.eager()
        if t == "fact-first":
            return cls.fact_first()
        if t.startswith("n="):
            body, _, placement = t[2:].partition(":")
            try:
                n = int(body)
            except ValueError:
                raise SearchError(f"bad strategy {text!r}") from None
            if n == 1:
                return cls.lazy()
            return cls.intermediate(n, placement or "leaves")
        raise SearchError(f"unknown strategy {text!r}")

    @property
    def batch(self) -> int | None:
        """Closed leaves per satisfiability check; None for eager."""
        if self.kind == "eager":
            return None
        return self.n if self.kind == "intermediate" else 1

    def __str__(self) -> str:
        if self.kind == "intermediate":
            return f"n={self.n}" + (":root" if self.placement == "root" else "")
        return self.kind.replace("_", "-")


@dataclass(frozen=True, slots=True)
class SearchLimits:
    max_depth: int = 64
    contraction_bound: int = 2
    node_budget: int = 100_000

    def __post_init__(self):
        if min(self.max_depth, self.contraction_bound, self.node_budget) < 0:
            raise SearchError("limits must be non-negative")


@dataclass(eq=False)
class DerivationNode:
    sequent: ResourceSequent
    rule: RuleInstance | None = None
    emitted: list[Constraint] = field(default_factory=list)
    fresh: list[int] = field(default_factory=list)
    children: list["DerivationNode"] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        if self.rule is None:
            return False
        return all(c.closed for c in self.children)

    def nodes(self) -> Iterator["DerivationNode"]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def render(self, indent: str = "") -> str:
        label = self.rule.rule if self.rule else "?"
        lines = [f"{indent}{self.sequent}   [{label}]"]
        for c in self.children:
            lines.append(c.render(indent + "  "))
        return "\n".join(lines)


@dataclass
class LeafRecord:
    path: tuple[int, ...]
    sequent: str
    constraints: list[Constraint]


@dataclass
class Batch:
    leaves: list[LeafRecord]
    implied: dict[int, int]  # literals newly fixed in every solution
    satisfiable: bool = True


@dataclass
class SearchStats:
    nodes: int = 0
    leaves_closed: int = 0
    check_sat_calls: int = 0
    solve_calls: int = 0
    derivations_completed: int = 0
    # eager only: satisfiability probes that locate the cause of a failed solve
    conflict_probes: int = 0

    @property
    def solver_calls(self) -> int:
        return self.check_sat_calls + self.solve_calls


@dataclass
class ResourceDerivation:
    logic: Logic
    root: DerivationNode
    store: ConstraintStore
    assignment: dict[int, int]
    endsequent_vars: list[int]

    @property
    def constraints(self) -> list[Constraint]:
        return list(self.store.constraints)

    @property
    def closed(self) -> bool:
        return self.root.closed

    def variables(self) -> set[int]:
        out = set(self.endsequent_vars)
        for node in self.root.nodes():
            out.update(node.fresh)
        return out

    @property
    def total(self) -> bool:
        return self.variables() <= set(self.assignment)


@dataclass
class ResourceProof:
    derivation: ResourceDerivation
    assignment: dict[int, int]
    strategy: Strategy
    stats: SearchStats
    log: list[Batch]
    goal: tuple  # the plain (antecedent, succedent) as given

    @property
    def logic(self) -> Logic:
        return self.derivation.logic

    @property
    def root(self) -> DerivationNode:
        return self.derivation.root

    proved = True


@dataclass
class NotProved:
    reason: str  # exhausted | budget
    strategy: Strategy
    stats: SearchStats
    # constraints of the last fully closed derivation whose final solve
    # failed (eager only)
    last_store: list[Constraint] | None = None
    detail: str = ""

    proved = False


# --------------------------------------------------------------------------

@dataclass(slots=True)
class _Goal:
    node: DerivationNode
    depth: int
    contractions: int
    lane: int
    path: tuple[int, ...]
    origin: int = 0  # trail position of the rule application that opened it


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, logic: Logic, strategy: Strategy, limits: SearchLimits,
                 options: CalculusOptions, record_solutions: bool,
                 trace: Callable[[str], None] | None, stats: SearchStats):
        self.logic = logic
        self.strategy = strategy
        self.limits = limits
        self.options = options
        self.record_solutions = record_solutions
        self.trace = trace
        self.store = ConstraintStore()
        self.alloc = VarAllocator()
        self.stats = stats
        self.contraction_cut = False
        self.prune = strategy.kind != "eager"
        self.batch = strategy.batch
        self.lanes = strategy.kind == "intermediate" and strategy.placement == "root"
        self.n_lanes = 1
        self.lane = 0
        self.pending: list[LeafRecord] = []
        self.log: list[Batch] = []
        self.implied: dict[int, int] = {}
        self.depth_cut = False
        self.last_store: list[Constraint] | None = None
        self.assignment: dict[int, int] | None = None
        # eager bookkeeping.  Rule applications on the current branch are
        # numbered by trail position (0 is the endsequent); a failure leaves
        # in ``conflict`` the applications that cause it
        self.trail: list[list[Constraint]] = [[]]
        self.dead: list[tuple[frozenset[Lit], int]] = []
        self.root_true: set[Lit] = set()
        self.split_invertible = not self.prune and logic is not Logic.BI
        self.conflict: set[int] = set()

    # state snapshots for backtracking ----------------------------------
    def add_root(self, c: Constraint) -> None:
        self.trail[0].append(c)
        if c.target == 1:
            self.root_true.update(c.expr.lits)
        self.store.add(c)

    def _add(self, c: Constraint) -> str:
        self.trail[-1].append(c)
        return self.store.add(c)

    def _mark(self):
        self.store.push()
        self.trail.append([])
        return (self.alloc.next_id, len(self.pending), len(self.log), dict(self.implied),
                self.n_lanes, self.lane, self.stats.leaves_closed, len(self.dead))

    def _undo(self, mark) -> None:
        self.store.pop()
        self.trail.pop()
        next_id, n_pending, n_log, implied, n_lanes, lane, leaves, n_dead = mark
        del self.dead[n_dead:]
        self.alloc.next_id = next_id
        del self.pending[n_pending:]
        del self.log[n_log:]
        self.implied = implied
        self.n_lanes, self.lane = n_lanes, lane
        self.stats.leaves_closed = leaves

    # solving schedule ----------------------------------------------------
    def _check(self) -> bool:
        self.stats.check_sat_calls += 1
        ok = self.store.check_sat()
        implied: dict[int, int] = {}
        if ok and self.record_solutions:
            full = self.store.implied()
            implied = {v: b for v, b in full.items() if self.implied.get(v) != b}
            self.implied = full
        self.log.append(Batch(list(self.pending), implied, ok))
        self.pending.clear()
        return ok

    def _leaf_closed(self, goal: _Goal, constraints: list[Constraint]) -> bool:
        self.stats.leaves_closed += 1
        self.pending.append(LeafRecord(goal.path, str(goal.node.sequent), list(constraints)))
        if self.lanes and self.n_lanes > 1:
            self.lane = (self.lane + 1) % self.n_lanes
        if self.batch is not None and len(self.pending) >= self.batch:
            return self._check()
        return True

    def _finish(self) -> bool:
        self.stats.derivations_completed += 1
        if self.batch is not None and self.pending and not self._check():
            return False
        if self.batch is None:
            # the leaves stay pending: backtracking may reuse most of them
            self.log.append(Batch(list(self.pending), {}, True))
        self.stats.solve_calls += 1
        assignment = self.store.solve(0)
        if assignment is None:
            if self.log:
                self.log[-1].satisfiable = False
            self.last_store = list(self.store.constraints)
            if not self.prune:
                self.conflict = self._unsat_levels()
            return False
        if self.batch is None and self.record_solutions:
            self.log[-1].implied = self.store.implied()
        self.assignment = assignment
        return True

    def _unsat_prefix(self, base: set[int]) -> int:
        """Smallest k such that the applications in ``base`` together with
        applications 0..k are unsatisfiable."""
        self.stats.conflict_probes += 1
        probe = ConstraintStore()
        for level in base:
            probe.add_all(self.trail[level])
        for level, group in enumerate(self.trail):
            if probe.add_all(group) != CONSISTENT:
                return level
        lo, hi = 0, len(self.trail) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            probe = ConstraintStore()
            for level in base:
                probe.add_all(self.trail[level])
            for group in self.trail[:mid + 1]:
                probe.add_all(group)
            self.stats.conflict_probes += 1
            if probe.check_sat():
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _unsat_levels(self) -> set[int]:
        """A set of rule applications whose constraints alone (with the
        endsequent's) are unsatisfiable."""
        out: set[int] = set()
        while True:
            k = self._unsat_prefix(out)
            if k == 0 or k in out:
                return out
            out.add(k)

    # goal selection ------------------------------------------------------
    def _select(self, agenda: list[_Goal]) -> int:
        if self.strategy.kind == "fact_first":
            for k, g in enumerate(agenda):
                if _putative_axiom(g.node.sequent, self.store.current):
                    return k
            return 0
        if self.lanes:
            for k, g in enumerate(agenda):
                if g.lane == self.lane:
                    return k
            self.lane = agenda[0].lane
        return 0

    # rule ordering -------------------------------------------------------
    def _category(self, inst: RuleInstance, seq: ResourceSequent) -> int | None:
        rule = inst.rule
        if is_leaf_rule(self.logic, rule):
            return 0
        if rule in INVERTIBLE[self.logic] and rule not in ADDITIVE:
            return 1
        if rule in ADDITIVE:
            return 2
        if rule in SPLITTING:
            return 3
        if rule in CONTRACTION:
            return 6
        if rule == "W" and _exposes_axiom(seq, inst):
            return 0
        if rule in ("W", "W!L", "W?R"):
            return 5
        return 4

    def _expand(self, goal: _Goal, blame: set[int] | None = None) -> list[RuleInstance]:
        seq = goal.node.sequent
        cands = []
        for inst in applicable(seq, self.options):
            if inst.rule in CONTRACTION and goal.contractions >= self.limits.contraction_bound:
                self.contraction_cut = True
                continue
            if seq.is_bi and not _bi_useful(seq, inst):
                continue
            if self.prune and partial_value(principal_expr(seq, inst), self.store.current) == 0:
                continue
            if self.dead:
                killer = self._killed_at(principal_expr(seq, inst))
                if killer is not None:
                    if blame is not None:
                        blame.add(killer)
                    continue
            cands.append((self._category(inst, seq), len(cands), inst))
        cands.sort(key=lambda t: (t[0], t[1]))
        return [inst for _, _, inst in cands]

    def _killed_at(self, e: BoolExpr) -> int | None:
        """The deletion that forces ``e`` to 0, if any."""
        if e.zero:
            return 0
        lits = set(e.lits)
        for d, level in self.dead:
            if d <= lits:
                return level
        return None

    # main loop -----------------------------------------------------------
    def solve_agenda(self, agenda: list[_Goal]) -> bool:
        if not agenda:
            return self._finish()
        if not self.prune:
            return self._eager(agenda)
        k = self._select(agenda)
        goal = agenda[k]
        if goal.depth >= self.limits.max_depth:
            self.depth_cut = True
            return False
        options = self._expand(goal)
        rest = agenda[:k] + agenda[k + 1:]
        seq = goal.node.sequent
        for inst in options:
            self.stats.nodes += 1
            if self.stats.nodes > self.limits.node_budget:
                raise _Budget()
            e = principal_expr(seq, inst)
            committed = inst.rule in INVERTIBLE[self.logic] and partial_value(e, self.store.current) == 1
            mark = self._mark()
            app = apply(seq, inst, self.alloc)
            self.store.register(app.fresh)
            ok = True
            for c in app.emitted:
                if self._add(c) != CONSISTENT and self.prune:
                    ok = False
                    break
            if self.trace:
                self.trace(f"{'  ' * goal.depth}{inst.rule} {seq}  " + ", ".join(map(str, app.emitted)))
            if ok and not app.premises:
                ok = self._leaf_closed(goal, app.emitted)
            if ok:
                node = goal.node
                node.rule, node.emitted, node.fresh = inst, list(app.emitted), list(app.fresh)
                node.children = [DerivationNode(p) for p in app.premises]
                extra = 1 if inst.rule in CONTRACTION else 0
                children = []
                for j, child in enumerate(node.children):
                    lane = goal.lane
                    if self.lanes and j > 0 and self.n_lanes < self.strategy.n:
                        lane = self.n_lanes
                        self.n_lanes += 1
                    children.append(_Goal(child, goal.depth + 1, goal.contractions + extra, lane,
                                          goal.path + (j,)))
                if self.solve_agenda(children + rest):
                    return True
                node.rule, node.emitted, node.fresh, node.children = None, [], [], []
            self._undo(mark)
            if committed:
                break
        return False

    # eager ---------------------------------------------------------------
    def _pick(self, agenda: list[_Goal]) -> tuple[int, list[RuleInstance], set[int]] | None:
        """Look at every open branch: one with no rule left fails the
        attempt at once (``conflict`` says why).  Otherwise the first
        branch goes next."""
        picked = None
        for k, g in enumerate(agenda):
            blame = {g.origin}
            if g.depth >= self.limits.max_depth:
                self.depth_cut = True
                self.conflict = blame
                return None
            options = self._expand(g, blame)
            if not options:
                self.conflict = blame
                return None
            if picked is None:
                picked = (k, options, blame)
        return picked

    def _eager(self, agenda: list[_Goal]) -> bool:
        if not agenda:
            return self._finish()
        picked = self._pick(agenda)
        if picked is None:
            return False
        k, options, conflict = picked
        goal, rest = agenda[k], agenda[:k] + agenda[k + 1:]
        seq = goal.node.sequent
        level = len(self.trail)
        for inst in options:
            self._tick()
            e = principal_expr(seq, inst)
            invertible = inst.rule in INVERTIBLE[self.logic]
            committed = invertible and set(e.lits) <= self.root_true
            mark = self._mark()
            app = apply(seq, inst, self.alloc)
            self.store.register(app.fresh)
            for c in app.emitted:
                self._add(c)
            if self.trace:
                self.trace(f"{'  ' * goal.depth}{inst.rule} {seq}  " + ", ".join(map(str, app.emitted)))
            if not app.premises:
                self._leaf_closed(goal, app.emitted)
            node = goal.node
            node.rule, node.emitted, node.fresh = inst, list(app.emitted), list(app.fresh)
            node.children = [DerivationNode(p) for p in app.premises]
            extra = 1 if inst.rule in CONTRACTION else 0
            children = [_Goal(child, goal.depth + 1, goal.contractions + extra, 0, goal.path + (j,), level)
                        for j, child in enumerate(node.children)]
            if self._eager(children + rest):
                return True
            node.rule, node.emitted, node.fresh, node.children = None, [], [], []
            self._undo(mark)
            if level not in self.conflict:
                return False
            conflict |= self.conflict - {level}
            if committed:
                break
            if invertible and self.split_invertible:
                # the other half of the choice: this formula is never used
                self._tick()
                mark = self._mark()
                self._add(Constraint(e, 0))
                self.dead.append((frozenset(e.lits), level))
                if self.trace:
                    self.trace(f"{'  ' * goal.depth}delete {e}")
                if self._eager(agenda):
                    return True
                self._undo(mark)
                if level not in self.conflict:
                    return False
                conflict |= self.conflict - {level}
                break
        self.conflict = conflict
        return False

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes > self.limits.node_budget:
            raise _Budget()


def _putative_axiom(seq: ResourceSequent, current: Mapping[int, int]) -> bool:
    if seq.is_bi:
        goal = seq.succedent
        return goal.is_atom and any(n.kind == "f" and n.formula == goal for _, n in walk(seq.antecedent))
    atoms = {a.formula for a in seq.antecedent
             if a.formula.is_atom and partial_value(a.expr, current) != 0}
    return any(s.formula in atoms for s in seq.succedent if partial_value(s.expr, current) != 0)


def _exposes_axiom(seq: ResourceSequent, inst: RuleInstance) -> bool:
    """A W at a top-level position keeping exactly the goal formula."""
    if inst.other is None or inst.other < 0:
        return False
    if inst.index != () and inst.index not in [a for a, _ in slots(seq.antecedent)]:
        return False
    kept = get(seq.antecedent, inst.index).children[inst.other]
    return kept.kind == "f" and kept.formula == seq.succedent


def _relevant(seq: ResourceSequent) -> set[Formula]:
    """Formulas an axiom could still need: subformulas of the goal and of
    every compound antecedent formula."""
    out = set(seq.succedent.subformulas())
    for _, n in walk(seq.antecedent):
        if n.kind == "f" and not n.formula.is_atom:
            out.update(n.formula.subformulas())
    return out


def _subtree_useful(node: Bunch, relevant: set[Formula]) -> bool:
    for _, n in walk(node):
        if n.kind == "f" and (n.formula in relevant or not n.formula.is_atom):
            return True
        if n.kind == "em":
            return True
        if n.kind == "ea" and Formula("unit_1") in relevant:
            return True
    return False


def _bi_useful(seq: ResourceSequent, inst: RuleInstance) -> bool:
    """Goal-directed filter for W and C.

    W may keep a child of an additive bunch only when that child holds
    something a later rule can consume; weakening to the additive unit is
    offered only for the goal ``1``.  C copies compound formulas only.
    """
    ante, goal = seq.antecedent, seq.succedent
    if inst.rule == "W":
        node = get(ante, inst.index)
        if inst.other == -1:
            return goal.op == "unit_1" and (inst.index == () or inst.index in [a for a, _ in slots(ante)])
        return _subtree_useful(node.children[inst.other], _relevant(seq))
    if inst.rule == "C":
        node = get(ante, inst.index)
        return node.kind == "f" and not node.formula.is_atom
    return True


# --------------------------------------------------------------------------

def prove(ante, succ, logic: Logic, strategy: Strategy = Strategy(),
          limits: SearchLimits = SearchLimits(), options: CalculusOptions = CalculusOptions(),
          record_solutions: bool = False,
          trace: Callable[[str], None] | None = None) -> ResourceProof | NotProved:
    """Search for a resource proof of ``ante |- succ``.

    The endsequent is tagged with distinct fresh variables which are
    constrained to 1.  ``record_solutions`` fills each log batch with the
    literals newly fixed in every solution (a backbone computation, so it
    costs extra solver work).
    """
    _check_input(ante, succ, logic)
    stats = SearchStats()
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20000))
    depth_cut = False
    last_store = None
    try:
        # contraction is deepened one level at a time: every pass is a
        # complete search under its bound, and most proofs need none
        for bound in range(limits.contraction_bound + 1):
            pass_limits = SearchLimits(limits.max_depth, bound, limits.node_budget)
            search = _Search(logic, strategy, pass_limits, options, record_solutions, trace, stats)
            root_seq, end_vars = endsequent(logic, ante, succ, search.alloc)
            search.store.register(end_vars)
            for v in end_vars:
                search.add_root(Constraint(BoolExpr((Lit(v),)), 1))
            root = DerivationNode(root_seq)
            found = search.solve_agenda([_Goal(root, 0, 0, 0, ())])
            depth_cut = depth_cut or search.depth_cut
            last_store = search.last_store or last_store
            if found or not search.contraction_cut:
                break
    except _Budget:
        return NotProved("budget", strategy, stats, last_store, "node budget exhausted")
    finally:
        sys.setrecursionlimit(old_limit)
    if not found:
        if depth_cut:
            return NotProved("budget", strategy, stats, last_store, "depth limit reached")
        return NotProved("exhausted", strategy, stats, last_store)
    derivation = ResourceDerivation(logic, root, search.store, search.assignment, end_vars)
    assignment = dict(search.assignment)
    for v in derivation.variables() - set(assignment):
        assignment[v] = 0
    derivation.assignment = dict(sorted(assignment.items()))
    return ResourceProof(derivation, derivation.assignment, strategy, stats, search.log, (ante, succ))


def _check_input(ante, succ, logic: Logic) -> None:
    from .formula import check_logic
    if logic is Logic.BI:
        if not isinstance(ante, Bunch) or not isinstance(succ, Formula):
            raise SearchError("BI sequents are a bunch and one formula")
        for _, n in walk(ante):
            if n.kind == "f":
                check_logic(n.formula, logic)
        check_logic(succ, logic)
        return
    for f in tuple(ante) + tuple(succ):
        if not isinstance(f, Formula):
            raise SearchError("linear sequents are two lists of formulas")
        check_logic(f, logic)


def prove_text(text: str, logic: Logic, strategy: Strategy = Strategy(), **kw) -> ResourceProof | NotProved:
    from .formula import parse_sequent
    ante, succ = parse_sequent(text, logic)
    return prove(ante, succ, logic, strategy, **kw)


# --------------------------------------------------------------------------

def closed_derivations(seq: ResourceSequent, first: RuleInstance | None = None,
                       limits: SearchLimits = SearchLimits(max_depth=16),
                       options: CalculusOptions = CalculusOptions()) -> Iterator[tuple[DerivationNode, list[Constraint]]]:
    """Every closed derivation of ``seq`` (no pruning, no solving), each with
    the constraints it emits.  ``first`` fixes the rule applied at the root.
    Meant for small sequents; the number of derivations grows quickly."""
    alloc = VarAllocator(1 + max((l.var for e in seq.expressions() for l in e.lits), default=0))

    def go(s: ResourceSequent, depth: int, insts=None):
        if depth > limits.max_depth:
            return
        for inst in (insts if insts is not None else applicable(s, options)):
            if inst.rule in CONTRACTION:
                continue
            saved = alloc.next_id
            app = apply(s, inst, alloc)
            for subs in _product([lambda p=p: go(p, depth + 1) for p in app.premises]):
                node = DerivationNode(s, inst, list(app.emitted), list(app.fresh), [n for n, _ in subs])
                yield node, list(app.emitted) + [c for _, cs in subs for c in cs]
            alloc.next_id = max(alloc.next_id, saved)

    yield from go(seq, 0, [first] if first is not None else None)


def _product(gens):
    if not gens:
        yield []
        return
    head, tail = gens[0], gens[1:]
    for h in head():
        for t in _product(tail):
            yield [h] + t


__all__ = [
    "Batch", "DerivationNode", "LeafRecord", "NotProved", "ResourceDerivation", "ResourceProof",
    "SearchError", "SearchLimits", "SearchStats", "Strategy", "closed_derivations", "prove", "prove_text",
]
