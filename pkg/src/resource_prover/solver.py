"""Incremental solving of literal-product equations ``e = 0`` / ``e = 1``.

A one-constraint over a product forces every literal true, so it is turned
into unit assignments at add time.  A zero-constraint is the clause
``~l1 | ... | ~lk`` and is kept in occurrence lists for propagation.
Satisfiability beyond propagation is decided by a small DPLL that branches
only on residual clauses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .boolexpr import Constraint, Lit, evaluate

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"


@dataclass(eq=False, slots=True)
class _Clause:
    lits: tuple[Lit, ...]  # the product; the clause is violated iff all are true


@dataclass(slots=True)
class _Level:
    n_constraints: int
    n_trail: int
    n_clauses: int
    n_vars: int
    inconsistent: bool


@dataclass
class SolverStats:
    adds: int = 0
    check_sat_calls: int = 0
    solve_calls: int = 0


class ConstraintStore:
    def __init__(self):
        self.constraints: list[Constraint] = []
        self.current: dict[int, int] = {}
        self.trail: list[int] = []
        self.inconsistent = False
        self._clauses: list[_Clause] = []
        self._occurs: dict[int, list[_Clause]] = {}
        self._vars: list[int] = []
        self._var_set: set[int] = set()
        self._levels: list[_Level] = []
        self.stats = SolverStats()

    # ------------------------------------------------------------------
    # bookkeeping

    @property
    def variables(self) -> list[int]:
        return list(self._vars)

    def register(self, vars: Iterable[int]) -> None:
        for v in vars:
            if v not in self._var_set:
                self._var_set.add(v)
                self._vars.append(v)

    def push(self) -> None:
        self._levels.append(_Level(len(self.constraints), len(self.trail), len(self._clauses),
                                   len(self._vars), self.inconsistent))

    def pop(self) -> None:
        if not self._levels:
            raise IndexError("pop without matching push")
        lvl = self._levels.pop()
        del self.constraints[lvl.n_constraints:]
        for v in self.trail[lvl.n_trail:]:
            del self.current[v]
        del self.trail[lvl.n_trail:]
        while len(self._clauses) > lvl.n_clauses:
            clause = self._clauses.pop()
            for lit in clause.lits:
                occ = self._occurs[lit.var]
                assert occ[-1] is clause
                occ.pop()
        for v in self._vars[lvl.n_vars:]:
            self._var_set.discard(v)
        del self._vars[lvl.n_vars:]
        self.inconsistent = lvl.inconsistent

    @property
    def depth(self) -> int:
        return len(self._levels)

    # ------------------------------------------------------------------
    # adding constraints

    def add(self, c: Constraint) -> str:
        self.stats.adds += 1
        self.constraints.append(c)
        if self.inconsistent:
            return INCONSISTENT
        expr, target = c.expr, c.target
        if expr.zero:
            if target == 1:
                self.inconsistent = True
            return self.status
        if not expr.lits:
            if target == 0:
                self.inconsistent = True
            return self.status
        self.register(expr.vars())
        if target == 1:
            queue = []
            for lit in expr.lits:
                bit = 1 if lit.positive else 0
                have = self.current.get(lit.var)
                if have is None:
                    self._assign(lit.var, bit)
                    queue.append(lit.var)
                elif have != bit:
                    self.inconsistent = True
                    return INCONSISTENT
            self._propagate(queue)
        else:
            clause = _Clause(expr.lits)
            self._clauses.append(clause)
            for lit in expr.lits:
                self._occurs.setdefault(lit.var, []).append(clause)
            queue = []
            self._visit(clause, queue)
            self._propagate(queue)
        return self.status

    def add_all(self, constraints: Iterable[Constraint]) -> str:
        for c in constraints:
            if self.add(c) == INCONSISTENT:
                return INCONSISTENT
        return self.status

    @property
    def status(self) -> str:
        return INCONSISTENT if self.inconsistent else CONSISTENT

    def _assign(self, var: int, bit: int) -> None:
        self.current[var] = bit
        self.trail.append(var)

    def _visit(self, clause: _Clause, queue: list[int]) -> None:
        undecided = None
        n_undecided = 0
        for lit in clause.lits:
            bit = self.current.get(lit.var)
            if bit is None:
                n_undecided += 1
                undecided = lit
            elif lit.value(bit) == 0:
                return  # product already 0
        if n_undecided == 0:
            self.inconsistent = True
        elif n_undecided == 1:
            # all other literals true: the last one must be false
            self._assign(undecided.var, 0 if undecided.positive else 1)
            queue.append(undecided.var)

    def _propagate(self, queue: list[int]) -> None:
        i = 0
        while i < len(queue) and not self.inconsistent:
            var = queue[i]
            i += 1
            for clause in self._occurs.get(var, ()):
                self._visit(clause, queue)
                if self.inconsistent:
                    return

    def _decide(self, var: int, bit: int) -> None:
        self._assign(var, bit)
        self._propagate([var])

    # ------------------------------------------------------------------
    # solving

    def _branch_var(self) -> int | None:
        """Smallest undecided variable of the first unsatisfied clause."""
        for clause in self._clauses:
            undecided = []
            satisfied = False
            for lit in clause.lits:
                bit = self.current.get(lit.var)
                if bit is None:
                    undecided.append(lit.var)
                elif lit.value(bit) == 0:
                    satisfied = True
                    break
            if not satisfied and undecided:
                return min(undecided)
        return None

    def _search(self, first: int) -> dict[int, int] | None:
        if self.inconsistent:
            return None
        var = self._branch_var()
        if var is None:
            return dict(self.current)
        for bit in (first, 1 - first):
            self.push()
            self._decide(var, bit)
            found = self._search(first)
            self.pop()
            if found is not None:
                return found
        return None

    def check_sat(self) -> bool:
        self.stats.check_sat_calls += 1
        return self._search(0) is not None

    def solve(self, defaults: int = 0, variables: Iterable[int] = ()) -> dict[int, int] | None:
        """A total satisfying assignment over the store's variables (plus
        ``variables``), or None when unsatisfiable."""
        self.stats.solve_calls += 1
        found = self._search(defaults)
        if found is None:
            return None
        for v in list(self._vars) + list(variables):
            found.setdefault(v, defaults)
        return dict(sorted(found.items()))

    def implied(self) -> dict[int, int]:
        """Every variable whose value is the same in all solutions.

        Returns an empty dict for an unsatisfiable store.
        """
        if self._search(0) is None:
            return {}
        out = dict(self.current)
        for v in self._vars:
            if v in out:
                continue
            sat = []
            for bit in (0, 1):
                self.push()
                self._decide(v, bit)
                sat.append(self._search(0) is not None)
                self.pop()
            if sat[0] != sat[1]:
                out[v] = 1 if sat[1] else 0
        return dict(sorted(out.items()))

    def satisfied_by(self, assignment: dict[int, int]) -> bool:
        return all(evaluate(c.expr, assignment) == c.target for c in self.constraints)


def brute_force_sat(constraints: list[Constraint], variables: Iterable[int] | None = None) -> dict[int, int] | None:
    """Truth-table search; the independent oracle for small stores."""
    from itertools import product as cartesian

    vs = sorted(set(variables) if variables is not None else
                {lit.var for c in constraints for lit in c.expr.lits})
    for bits in cartesian((0, 1), repeat=len(vs)):
        a = dict(zip(vs, bits))
        if all(evaluate(c.expr, a) == c.target for c in constraints):
            return a
    return None
