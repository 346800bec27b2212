"""Argumentation graph data model.

A graph is a set of arguments, each carrying a base score in [0, 1],
plus two disjoint directed edge relations: attacks and supports.
Values are immutable after construction; editing operations return new
graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    DanglingEdge,
    DisjointnessViolation,
    DuplicateId,
    RangeViolation,
    SchemaError,
    UnknownId,
    ValidationError,
)

Edge = tuple[str, str]


class Kind(str, Enum):
    CLAIM = "claim"
    EVIDENCE = "evidence"


@dataclass(frozen=True)
class Argument:
    """A node: identifier, content, role, and apriori belief."""

    id: str
    text: str = ""
    kind: Kind = Kind.EVIDENCE
    base_score: float = 0.5

    def __post_init__(self):
        if not self.id:
            raise ValidationError("argument id must be non-empty")
        if not isinstance(self.base_score, (int, float)) or isinstance(self.base_score, bool):
            raise RangeViolation(f"base_score of {self.id!r} must be a number")
        if not 0.0 <= self.base_score <= 1.0:
            raise RangeViolation(
                f"base_score of {self.id!r} is {self.base_score}, outside [0, 1]"
            )
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "base_score", float(self.base_score))


@dataclass(frozen=True)
class QBAF:
    """Immutable argumentation graph. Build through :func:`build_qbaf`."""

    arguments: tuple[Argument, ...]
    attacks: frozenset[Edge]
    supports: frozenset[Edge]

    @cached_property
    def by_id(self) -> Mapping[str, Argument]:
        return {a.id: a for a in self.arguments}

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arguments)

    @cached_property
    def _attackers(self) -> Mapping[str, tuple[str, ...]]:
        return _group_by_target(self.ids, self.attacks)

    @cached_property
    def _supporters(self) -> Mapping[str, tuple[str, ...]]:
        return _group_by_target(self.ids, self.supports)

    def argument(self, arg_id: str) -> Argument:
        try:
            return self.by_id[arg_id]
        except KeyError:
            raise UnknownId(f"no argument with id {arg_id!r}") from None

    def attackers(self, arg_id: str) -> tuple[str, ...]:
        self.argument(arg_id)
        return self._attackers[arg_id]

    def supporters(self, arg_id: str) -> tuple[str, ...]:
        self.argument(arg_id)
        return self._supporters[arg_id]

    def claim_id(self) -> str | None:
        for a in self.arguments:
            if a.kind is Kind.CLAIM:
                return a.id
        return None

    def base_scores(self) -> Mapping[str, float]:
        return {a.id: a.base_score for a in self.arguments}

    def __len__(self) -> int:
        return len(self.arguments)


def _group_by_target(ids: Iterable[str], edges: frozenset[Edge]) -> dict[str, tuple[str, ...]]:
    grouped: dict[str, list[str]] = {i: [] for i in ids}
    for src, dst in sorted(edges):
        grouped[dst].append(src)
    return {k: tuple(v) for k, v in grouped.items()}


def build_qbaf(
    arguments: Iterable[Argument],
    attacks: Iterable[Edge] = (),
    supports: Iterable[Edge] = (),
) -> QBAF:
    """Validate and assemble a graph.

    Duplicate edges collapse (relations are sets). Raises DuplicateId,
    DanglingEdge, DisjointnessViolation, or RangeViolation (the latter
    from Argument construction) on bad input.
    """
    args = sorted(arguments, key=lambda a: a.id)
    seen: set[str] = set()
    for a in args:
        if a.id in seen:
            raise DuplicateId(f"argument id {a.id!r} appears more than once")
        seen.add(a.id)

    att = frozenset((str(s), str(t)) for s, t in attacks)
    sup = frozenset((str(s), str(t)) for s, t in supports)

    for relation, name in ((att, "attack"), (sup, "support")):
        for src, dst in sorted(relation):
            if src not in seen:
                raise DanglingEdge(f"{name} edge ({src!r}, {dst!r}): unknown source id")
            if dst not in seen:
                raise DanglingEdge(f"{name} edge ({src!r}, {dst!r}): unknown target id")

    overlap = att & sup
    if overlap:
        pair = sorted(overlap)[0]
        raise DisjointnessViolation(
            f"edge {pair} is in both the attack and support relations"
        )

    claims = [a.id for a in args if a.kind is Kind.CLAIM]
    if len(claims) > 1:
        raise ValidationError(f"more than one claim argument: {claims}")

    return QBAF(arguments=tuple(args), attacks=att, supports=sup)


def remove_argument(qbaf: QBAF, arg_id: str) -> QBAF:
    """New graph without the argument and without its incident edges."""
    qbaf.argument(arg_id)
    return QBAF(
        arguments=tuple(a for a in qbaf.arguments if a.id != arg_id),
        attacks=frozenset(e for e in qbaf.attacks if arg_id not in e),
        supports=frozenset(e for e in qbaf.supports if arg_id not in e),
    )


def to_dict(qbaf: QBAF) -> dict:
    """Canonical JSON-ready form: ids sorted, edge lists sorted."""
    return {
        "arguments": [
            {
                "id": a.id,
                "text": a.text,
                "kind": a.kind.value,
                "base_score": a.base_score,
            }
            for a in qbaf.arguments
        ],
        "attacks": [list(e) for e in sorted(qbaf.attacks)],
        "supports": [list(e) for e in sorted(qbaf.supports)],
    }


def encode(qbaf: QBAF) -> str:
    return json.dumps(to_dict(qbaf), sort_keys=True)


def from_dict(doc: dict) -> QBAF:
    """Decode the canonical form, reporting the path of any bad field."""
    if not isinstance(doc, dict):
        raise SchemaError("$: expected a JSON object")
    raw_args = doc.get("arguments")
    if not isinstance(raw_args, list):
        raise SchemaError("arguments: expected a list")

    args = []
    for i, entry in enumerate(raw_args):
        path = f"arguments[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{path}: expected an object")
        arg_id = entry.get("id")
        if not isinstance(arg_id, str) or not arg_id:
            raise SchemaError(f"{path}.id: expected a non-empty string")
        text = entry.get("text", "")
        if not isinstance(text, str):
            raise SchemaError(f"{path}.text: expected a string")
        kind = entry.get("kind", "evidence")
        if kind not in (Kind.CLAIM.value, Kind.EVIDENCE.value):
            raise SchemaError(f"{path}.kind: expected 'claim' or 'evidence'")
        score = entry.get("base_score")
        if not isinstance(score, (int, float)) or isinstance(score, bool):
            raise SchemaError(f"{path}.base_score: expected a number")
        args.append(Argument(id=arg_id, text=text, kind=Kind(kind), base_score=score))

    def read_edges(key: str) -> list[Edge]:
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            raise SchemaError(f"{key}: expected a list")
        edges = []
        for i, pair in enumerate(raw):
            if (
                not isinstance(pair, (list, tuple))
                or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)
            ):
                raise SchemaError(f"{key}[{i}]: expected a pair of id strings")
            edges.append((pair[0], pair[1]))
        return edges

    return build_qbaf(args, read_edges("attacks"), read_edges("supports"))


def decode(text: str) -> QBAF:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"$: invalid JSON ({exc})") from exc
    return from_dict(doc)
