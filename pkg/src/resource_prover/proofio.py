"""JSON form of proofs.

One schema serves both kinds of proof::

    {"logic": "MLL", "endsequent": "p |- p", "assignment": {"x1": 1},
     "tree": {"sequent": ..., "rule": ..., "principal": ...,
              "constraints": [...], "children": [...]}}

Plain proofs leave out ``constraints``; resource proofs carry annotated
sequents and the constraints each rule emitted.
"""

from __future__ import annotations

import json
from typing import Any

from .boolexpr import parse_constraint
from .calculus import principal_formula
from .extract import PlainNode, PlainProof
from .formula import FormulaError, Logic, format_formula, parse_sequent
from .search import DerivationNode, ResourceProof


class ProofFormatError(ValueError):
    pass


def _assignment(a: dict[int, int]) -> dict[str, int]:
    return {f"x{v}": a[v] for v in sorted(a)}


def plain_to_dict(p: PlainProof, goal_text: str | None = None,
                  assignment: dict[int, int] | None = None) -> dict[str, Any]:
    def node(n: PlainNode) -> dict[str, Any]:
        return {"sequent": n.sequent_text(), "rule": n.rule, "principal": n.principal,
                "children": [node(c) for c in n.children]}

    doc: dict[str, Any] = {"logic": p.logic.name, "endsequent": goal_text or p.root.sequent_text()}
    if assignment is not None:
        doc["assignment"] = _assignment(assignment)
    doc["tree"] = node(p.root)
    return doc


def resource_to_dict(r: ResourceProof, goal_text: str) -> dict[str, Any]:
    def node(n: DerivationNode) -> dict[str, Any]:
        pf = principal_formula(n.sequent, n.rule) if n.rule else None
        return {"sequent": str(n.sequent), "rule": n.rule.rule if n.rule else None,
                "principal": format_formula(pf) if pf is not None else None,
                "constraints": [str(c) for c in n.emitted],
                "children": [node(c) for c in n.children]}

    return {"logic": r.logic.name, "endsequent": goal_text,
            "assignment": _assignment(r.assignment), "tree": node(r.derivation.root)}


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2)


def _field(d: Any, key: str, kind):
    if not isinstance(d, dict) or key not in d:
        raise ProofFormatError(f"missing field {key!r}")
    if not isinstance(d[key], kind):
        raise ProofFormatError(f"field {key!r} has the wrong type")
    return d[key]


def load_document(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ProofFormatError(f"invalid JSON: {err}") from None
    if not isinstance(doc, dict):
        raise ProofFormatError("a proof document is a JSON object")
    _field(doc, "logic", str)
    _field(doc, "tree", dict)
    return doc


def document_logic(doc: dict[str, Any]) -> Logic:
    try:
        return Logic.parse(doc["logic"])
    except ValueError as err:
        raise ProofFormatError(str(err)) from None


def is_resource_document(doc: dict[str, Any]) -> bool:
    tree = doc.get("tree")
    return isinstance(tree, dict) and "constraints" in tree


def plain_from_dict(doc: dict[str, Any], logic: Logic | None = None) -> PlainProof:
    logic = logic or document_logic(doc)

    def node(d: Any) -> PlainNode:
        text = _field(d, "sequent", str)
        rule = _field(d, "rule", str)
        principal = d.get("principal")
        if principal is not None and not isinstance(principal, str):
            raise ProofFormatError("field 'principal' must be a string or null")
        try:
            ante, succ = parse_sequent(text, logic)
        except FormulaError as err:
            raise ProofFormatError(f"bad sequent {text!r}: {err}") from None
        kids = [node(c) for c in _field(d, "children", list)]
        return PlainNode(ante, succ, rule, principal, kids)

    return PlainProof(logic, node(doc["tree"]))


def resource_constraints(doc: dict[str, Any]) -> tuple[list, dict[int, int]]:
    """All constraints listed in a resource document, with its assignment."""
    raw = _field(doc, "assignment", dict)
    try:
        assignment = {int(k.lstrip("x")): int(v) for k, v in raw.items()}
    except (ValueError, AttributeError):
        raise ProofFormatError("assignment keys look like 'x3' and values are 0 or 1") from None
    out = []
    stack = [doc["tree"]]
    while stack:
        d = stack.pop()
        for line in _field(d, "constraints", list):
            try:
                out.append(parse_constraint(line))
            except (ValueError, TypeError) as err:
                raise ProofFormatError(f"bad constraint {line!r}: {err}") from None
        stack.extend(_field(d, "children", list))
    return out, assignment


def goal_of(doc: dict[str, Any], logic: Logic):
    text = doc.get("endsequent")
    if not isinstance(text, str):
        return None
    try:
        return parse_sequent(text, logic)
    except FormulaError as err:
        raise ProofFormatError(f"bad endsequent: {err}") from None


__all__ = [
    "ProofFormatError", "document_logic", "dumps", "goal_of", "is_resource_document", "load_document",
    "plain_from_dict", "plain_to_dict", "resource_constraints", "resource_to_dict",
]
