"""Gradual-semantics property checks.

Builds constructive instances of the six properties (neutrality,
monotony, franklin, weakening, strengthening, duality) and evaluates
their conclusions against solver output. Premise arguments are
realized as isolated nodes so their final strength equals their base
score, which makes the strength-level premises controllable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import InvalidParams, NonConvergence, PremiseViolation
from .qbaf import QBAF, Argument, build_qbaf
from .semantics import Semantics, SolverParams, solve


class PropertyKind(str, Enum):
    NEUTRALITY = "neutrality"
    MONOTONY = "monotony"
    FRANKLIN = "franklin"
    WEAKENING = "weakening"
    STRENGTHENING = "strengthening"
    DUALITY = "duality"


@dataclass(frozen=True)
class PropertyInstance:
    """A QBAF plus the role bindings a property's premise refers to."""

    kind: PropertyKind
    qbaf: QBAF
    bindings: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PropertyReport:
    kind: PropertyKind
    holds: bool | None
    lhs: float | None
    rhs: float | None
    tolerance: float
    premise_verified: bool
    converged: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "tolerance": self.tolerance,
            "premise_verified": self.premise_verified,
            "converged": self.converged,
            "note": self.note,
        }


def generate_random_qbaf(seed: int, n: int, edge_density: float, acyclic: bool) -> QBAF:
    """Deterministic random QBAF; with acyclic=True ids admit a topological order."""
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise InvalidParams(f"seed must be an integer, got {seed!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidParams(f"n must be a positive integer, got {n!r}")
    if not isinstance(edge_density, (int, float)) or not 0.0 <= edge_density <= 1.0:
        raise InvalidParams(f"edge_density must lie in [0, 1], got {edge_density!r}")
    rng = random.Random(seed)
    ids = [f"a{i}" for i in range(n)]
    args = [Argument(arg_id, base_score=rng.random()) for arg_id in ids]
    attacks = []
    supports = []
    for i in range(n):
        start = i + 1 if acyclic else 0
        for j in range(start, n):
            if i == j:
                continue
            if rng.random() >= edge_density:
                continue
            edge = (ids[i], ids[j])
            if rng.random() < 0.5:
                attacks.append(edge)
            else:
                supports.append(edge)
    return build_qbaf(args, attacks, supports)


def _pool(rng: random.Random, count: int, lo: float = 0.0, hi: float = 1.0) -> list[float]:
    return [lo + (hi - lo) * rng.random() for _ in range(count)]


def make_instance(kind: PropertyKind, seed: int) -> PropertyInstance:
    """Constructive premise-satisfying instance, deterministic in seed.

    Targets a (and b) are sinks; every premise neighbor is isolated.
    Strict-inequality instances are built with an engineered strength
    margin well above the checking tolerance.
    """
    kind = PropertyKind(kind)
    rng = random.Random((hash(kind.value) & 0xFFFF) * 1_000_003 + seed)
    args: list[Argument] = []
    attacks: list[tuple[str, str]] = []
    supports: list[tuple[str, str]] = []
    bindings: dict = {}

    def premise_arg(name: str, score: float) -> str:
        args.append(Argument(name, base_score=score))
        return name

    if kind is PropertyKind.NEUTRALITY:
        args.append(Argument("a", base_score=rng.random()))
        args.append(Argument("b", base_score=args[0].base_score))
        for i, score in enumerate(_pool(rng, rng.randint(0, 2))):
            p = premise_arg(f"p{i}", score)
            attacks += [(p, "a"), (p, "b")]
        for i, score in enumerate(_pool(rng, rng.randint(0, 2))):
            q = premise_arg(f"q{i}", score)
            supports += [(q, "a"), (q, "b")]
        premise_arg("d", 0.0)
        if rng.random() < 0.5:
            attacks.append(("d", "b"))
        else:
            supports.append(("d", "b"))
        bindings = {"a": "a", "b": "b", "d": "d"}

    elif kind is PropertyKind.MONOTONY:
        u = 0.05 + 0.9 * rng.random()
        args.append(Argument("a", base_score=u))
        args.append(Argument("b", base_score=u))
        for i, score in enumerate(_pool(rng, rng.randint(0, 1))):
            p = premise_arg(f"p{i}", score)
            attacks += [(p, "a"), (p, "b")]
        for i, score in enumerate(_pool(rng, rng.randint(0, 1))):
            q = premise_arg(f"q{i}", score)
            supports += [(q, "a"), (q, "b")]
        for i, score in enumerate(_pool(rng, rng.randint(0, 2))):
            attacks.append((premise_arg(f"xb{i}", score), "b"))
        for i, score in enumerate(_pool(rng, rng.randint(0, 2))):
            supports.append((premise_arg(f"ya{i}", score), "a"))
        bindings = {"a": "a", "b": "b"}

    elif kind is PropertyKind.FRANKLIN:
        shared = rng.random()
        args.append(Argument("a", base_score=shared))
        args.append(Argument("b", base_score=shared))
        for i, score in enumerate(_pool(rng, rng.randint(0, 1))):
            p = premise_arg(f"p{i}", score)
            attacks += [(p, "a"), (p, "b")]
        for i, score in enumerate(_pool(rng, rng.randint(0, 1))):
            q = premise_arg(f"q{i}", score)
            supports += [(q, "a"), (q, "b")]
        v = rng.random()
        attacks.append((premise_arg("x", v), "a"))
        supports.append((premise_arg("y", v), "a"))
        bindings = {"a": "a", "b": "b", "x": "x", "y": "y"}

    elif kind is PropertyKind.WEAKENING:
        # Unmatched attacker strength >= 0.4 keeps the final drop far
        # above any reasonable checking tolerance.
        args.append(Argument("a", base_score=0.2 + 0.75 * rng.random()))
        k = rng.randint(1, 3)
        att_ids = []
        for i, score in enumerate(_pool(rng, k, 0.4, 0.9)):
            att_ids.append(premise_arg(f"t{i}", score))
            attacks.append((att_ids[-1], "a"))
        j = rng.randint(0, k - 1)
        pairs = []
        for i in range(j):
            cap = next(a for a in args if a.id == att_ids[i]).base_score
            s = premise_arg(f"s{i}", cap * rng.random())
            supports.append((s, "a"))
            pairs.append((s, att_ids[i]))
        bindings = {"a": "a", "pairs": tuple(pairs)}

    elif kind is PropertyKind.STRENGTHENING:
        args.append(Argument("a", base_score=0.05 + 0.75 * rng.random()))
        k = rng.randint(1, 3)
        sup_ids = []
        for i, score in enumerate(_pool(rng, k, 0.4, 0.9)):
            sup_ids.append(premise_arg(f"s{i}", score))
            supports.append((sup_ids[-1], "a"))
        j = rng.randint(0, k - 1)
        pairs = []
        for i in range(j):
            cap = next(a for a in args if a.id == sup_ids[i]).base_score
            t = premise_arg(f"t{i}", cap * rng.random())
            attacks.append((t, "a"))
            pairs.append((t, sup_ids[i]))
        bindings = {"a": "a", "pairs": tuple(pairs)}

    elif kind is PropertyKind.DUALITY:
        eps = 0.45 * rng.random()
        args.append(Argument("a", base_score=0.5 + eps))
        args.append(Argument("b", base_score=0.5 - eps))
        att_pairs = []
        for i, score in enumerate(_pool(rng, rng.randint(0, 2))):
            x = premise_arg(f"x{i}", score)
            attacks.append((x, "a"))
            supports.append((x, "b"))
            att_pairs.append((x, x))
        sup_pairs = []
        for i, score in enumerate(_pool(rng, rng.randint(0, 2))):
            y = premise_arg(f"y{i}", score)
            supports.append((y, "a"))
            attacks.append((y, "b"))
            sup_pairs.append((y, y))
        bindings = {
            "a": "a",
            "b": "b",
            "eps": eps,
            "att_pairs": tuple(att_pairs),
            "sup_pairs": tuple(sup_pairs),
        }

    qbaf = build_qbaf(args, attacks, supports)
    return PropertyInstance(kind=kind, qbaf=qbaf, bindings=bindings)


def _injective(pairs: Iterable[tuple[str, str]]) -> bool:
    pairs = list(pairs)
    return len({s for s, _ in pairs}) == len(pairs) and len({t for _, t in pairs}) == len(pairs)


def verify_premise(instance: PropertyInstance, strengths: Mapping[str, float] | None = None) -> tuple[bool, str]:
    """Check the property premise; strength-level clauses need ``strengths``.

    Returns (ok, reason). With strengths omitted only the structural
    part is checked.
    """
    q = instance.qbaf
    b = instance.bindings
    kind = instance.kind

    def beta(arg_id: str) -> float:
        return q.argument(arg_id).base_score

    if kind is PropertyKind.NEUTRALITY:
        a, bb, d = b["a"], b["b"], b["d"]
        if beta(d) != 0.0:
            return False, "d must have base score 0"
        att_a, att_b = set(q.attackers(a)), set(q.attackers(bb))
        sup_a, sup_b = set(q.supporters(a)), set(q.supporters(bb))
        if not (att_a <= att_b and sup_a <= sup_b):
            return False, "neighbor sets of a must be contained in b's"
        if (att_b | sup_b) != (att_a | sup_a) | {d}:
            return False, "b must have exactly the extra neighbor d"
        return True, ""

    if kind is PropertyKind.MONOTONY:
        a, bb = b["a"], b["b"]
        if not 0.0 < beta(a) < 1.0 or beta(a) != beta(bb):
            return False, "base scores must be equal and strictly inside (0, 1)"
        if not set(q.attackers(a)) <= set(q.attackers(bb)):
            return False, "attackers of a must be a subset of b's"
        if not set(q.supporters(a)) >= set(q.supporters(bb)):
            return False, "supporters of a must be a superset of b's"
        return True, ""

    if kind is PropertyKind.FRANKLIN:
        a, bb, x, y = b["a"], b["b"], b["x"], b["y"]
        if beta(a) != beta(bb):
            return False, "base scores of a and b must be equal"
        if set(q.attackers(a)) != set(q.attackers(bb)) | {x} or x in q.attackers(bb):
            return False, "a must have exactly the extra attacker x"
        if set(q.supporters(a)) != set(q.supporters(bb)) | {y} or y in q.supporters(bb):
            return False, "a must have exactly the extra supporter y"
        if strengths is not None and abs(strengths[x] - strengths[y]) > 1e-9:
            return False, "x and y must have equal strength"
        return True, ""

    if kind is PropertyKind.WEAKENING or kind is PropertyKind.STRENGTHENING:
        a = b["a"]
        pairs = list(b["pairs"])
        if kind is PropertyKind.WEAKENING:
            if beta(a) <= 0.0:
                return False, "base score of a must be positive"
            domain, codomain = set(q.supporters(a)), set(q.attackers(a))
        else:
            if beta(a) >= 1.0:
                return False, "base score of a must be below 1"
            domain, codomain = set(q.attackers(a)), set(q.supporters(a))
        if {s for s, _ in pairs} != domain or not {t for _, t in pairs} <= codomain:
            return False, "pairs must map the whole domain into the codomain"
        if not _injective(pairs):
            return False, "pair map must be injective"
        if strengths is not None:
            if any(strengths[s] > strengths[t] for s, t in pairs):
                return False, "mapped strengths must dominate"
            surplus = codomain - {t for _, t in pairs}
            has_surplus = any(strengths[t] > 0.0 for t in surplus)
            has_strict = any(strengths[s] < strengths[t] for s, t in pairs)
            if not (has_surplus or has_strict):
                return False, "need a positive surplus or a strict domination"
        return True, ""

    if kind is PropertyKind.DUALITY:
        a, bb = b["a"], b["b"]
        eps = beta(a) - 0.5
        if not 0.0 <= eps <= 0.5 or abs((beta(bb) - 0.5) + eps) > 1e-12:
            return False, "base scores must be 0.5 +/- eps"
        att_pairs, sup_pairs = list(b["att_pairs"]), list(b["sup_pairs"])
        if {s for s, _ in att_pairs} != set(q.attackers(a)) or {t for _, t in att_pairs} != set(q.supporters(bb)):
            return False, "att_pairs must biject attackers of a onto supporters of b"
        if {s for s, _ in sup_pairs} != set(q.supporters(a)) or {t for _, t in sup_pairs} != set(q.attackers(bb)):
            return False, "sup_pairs must biject supporters of a onto attackers of b"
        if not (_injective(att_pairs) and _injective(sup_pairs)):
            return False, "pair maps must be bijective"
        if strengths is not None:
            for s, t in att_pairs + sup_pairs:
                if abs(strengths[s] - strengths[t]) > 1e-9:
                    return False, "mirrored neighbors must have equal strength"
        return True, ""

    raise InvalidParams(f"unknown property kind {kind!r}")


def _solved(qbaf: QBAF, semantics, params):
    result = solve(qbaf, semantics, params)
    if not result.converged:
        raise NonConvergence("solver hit max_time before the residual dropped")
    return result


def check_property(
    instance: PropertyInstance,
    semantics=Semantics.QE,
    params: SolverParams | None = None,
    tolerance: float = 1e-4,
) -> PropertyReport:
    """Solve the instance QBAF and evaluate the property conclusion.

    Equalities hold when |lhs - rhs| <= tolerance; strict inequalities
    when they clear the tolerance as a margin. A non-converged solve
    yields an inconclusive report (holds=None) rather than a failure.
    """
    ok, reason = verify_premise(instance)
    if not ok:
        raise PremiseViolation(f"{instance.kind.value}: {reason}")

    try:
        result = _solved(instance.qbaf, semantics, params)
    except NonConvergence:
        return PropertyReport(
            kind=instance.kind,
            holds=None,
            lhs=None,
            rhs=None,
            tolerance=tolerance,
            premise_verified=True,
            converged=False,
            note="solver did not converge; inconclusive",
        )

    strengths = result.strengths
    ok, reason = verify_premise(instance, strengths)
    if not ok:
        return PropertyReport(
            kind=instance.kind,
            holds=None,
            lhs=None,
            rhs=None,
            tolerance=tolerance,
            premise_verified=False,
            converged=True,
            note=reason,
        )

    b = instance.bindings
    beta = {arg.id: arg.base_score for arg in instance.qbaf.arguments}
    note = ""
    kind = instance.kind
    if kind in (PropertyKind.NEUTRALITY, PropertyKind.FRANKLIN):
        lhs, rhs = strengths[b["a"]], strengths[b["b"]]
        holds = abs(lhs - rhs) <= tolerance
    elif kind is PropertyKind.MONOTONY:
        lhs, rhs = strengths[b["a"]], strengths[b["b"]]
        holds = lhs >= rhs - tolerance
    elif kind is PropertyKind.WEAKENING:
        lhs, rhs = strengths[b["a"]], beta[b["a"]]
        holds = lhs < rhs - tolerance
    elif kind is PropertyKind.STRENGTHENING:
        lhs, rhs = strengths[b["a"]], beta[b["a"]]
        holds = lhs > rhs + tolerance
    else:
        lhs = strengths[b["a"]] - beta[b["a"]]
        rhs = -(strengths[b["b"]] - beta[b["b"]])
        holds = abs(lhs - rhs) <= tolerance
        same_sign_gap = abs((strengths[b["a"]] - beta[b["a"]]) - (strengths[b["b"]] - beta[b["b"]]))
        note = f"same-sign form residual {same_sign_gap:.6g}"

    return PropertyReport(
        kind=kind,
        holds=holds,
        lhs=lhs,
        rhs=rhs,
        tolerance=tolerance,
        premise_verified=True,
        converged=True,
        note=note,
    )


def run_property_suite(
    kinds: Iterable[PropertyKind] | None = None,
    count: int = 1000,
    semantics=Semantics.QE,
    params: SolverParams | None = None,
    tolerance: float = 1e-4,
    seed: int = 0,
) -> dict[PropertyKind, list[PropertyReport]]:
    """Run ``count`` seeded instances per property kind."""
    if kinds is None:
        kinds = list(PropertyKind)
    if count < 1:
        raise InvalidParams(f"count must be positive, got {count!r}")
    out: dict[PropertyKind, list[PropertyReport]] = {}
    for kind in kinds:
        kind = PropertyKind(kind)
        reports = []
        for i in range(count):
            instance = make_instance(kind, seed + i)
            reports.append(check_property(instance, semantics, params, tolerance))
        out[kind] = reports
    return out


def suite_summary(reports: Mapping[PropertyKind, list[PropertyReport]]) -> dict:
    """Per-kind counts in a JSON-friendly shape."""
    summary = {}
    for kind, items in reports.items():
        summary[kind.value] = {
            "total": len(items),
            "holds": sum(1 for r in items if r.holds is True),
            "violations": sum(1 for r in items if r.holds is False),
            "inconclusive": sum(1 for r in items if r.holds is None),
        }
    return summary
