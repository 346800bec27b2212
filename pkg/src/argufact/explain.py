"""Dialogue-style explanations and contestation edits.

Explanations name the strongest supporter and attacker of an argument
straight from solved strengths, so they are faithful by construction.
Contestation applies base-score or polarity edits to a copy of the
QBAF, re-solves, and reports the before/after comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InvalidParams, RangeViolation, UnknownId
from .pipeline import DecidedBy, Verdict, VerdictLabel
from .qbaf import QBAF, Kind, build_qbaf
from .semantics import Semantics, SolveResult, SolverParams, solve

ACCEPTANCE_THRESHOLD = 0.5


@dataclass(frozen=True)
class Explanation:
    target: str
    status: str  # "accepted" | "rejected"
    because: str | None
    even_though: str | None
    rendered: str

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "status": self.status,
            "because": self.because,
            "even_though": self.even_though,
            "rendered": self.rendered,
        }


def _strongest(ids, strengths) -> str | None:
    # argmax strength, ties broken by smallest id
    best = None
    for arg_id in ids:
        s = strengths[arg_id]
        if best is None or s > best[0] or (s == best[0] and arg_id < best[1]):
            best = (s, arg_id)
    return best[1] if best else None


def _snippet(qbaf: QBAF, arg_id: str, limit: int) -> str:
    text = qbaf.argument(arg_id).text
    if not text:
        return arg_id
    if len(text) > limit:
        text = text[: limit - 3] + "..."
    return f"{arg_id}: {text}"


def explain_argument(
    qbaf: QBAF, result: SolveResult, arg_id: str, snippet_len: int = 80
) -> Explanation:
    """Strongest-neighbor explanation for one argument.

    Accepted (strength >= 0.5): because = strongest supporter,
    even_though = strongest attacker. Rejected: roles switch. A clause
    is omitted when its neighbor set is empty.
    """
    qbaf.argument(arg_id)
    if set(result.ids) != set(qbaf.ids):
        raise InvalidParams("solve result does not cover this QBAF")
    strengths = result.strengths

    accepted = strengths[arg_id] >= ACCEPTANCE_THRESHOLD
    strongest_sup = _strongest(qbaf.supporters(arg_id), strengths)
    strongest_att = _strongest(qbaf.attackers(arg_id), strengths)
    if accepted:
        status, because, even_though = "accepted", strongest_sup, strongest_att
    else:
        status, because, even_though = "rejected", strongest_att, strongest_sup

    parts = [f"[{_snippet(qbaf, arg_id, snippet_len)}] is {status}"]
    if because is not None:
        parts.append(f"because [{_snippet(qbaf, because, snippet_len)}]")
    if even_though is not None:
        parts.append(f"even though [{_snippet(qbaf, even_though, snippet_len)}]")
    return Explanation(
        target=arg_id,
        status=status,
        because=because,
        even_though=even_though,
        rendered=" ".join(parts),
    )


@dataclass(frozen=True)
class SetBaseScore:
    arg_id: str
    base_score: float

    def to_dict(self) -> dict:
        return {"kind": "set_base_score", "arg_id": self.arg_id, "base_score": self.base_score}


@dataclass(frozen=True)
class SetPolarity:
    src: str
    dst: str
    polarity: str  # "attack" | "support" | "neutral"

    def __post_init__(self):
        if self.polarity not in ("attack", "support", "neutral"):
            raise InvalidParams(f"polarity must be attack, support or neutral, got {self.polarity!r}")

    def to_dict(self) -> dict:
        return {"kind": "set_polarity", "src": self.src, "dst": self.dst, "polarity": self.polarity}


Edit = SetBaseScore | SetPolarity


def edit_from_dict(raw: dict) -> Edit:
    kind = raw.get("kind")
    if kind == "set_base_score":
        if not isinstance(raw.get("arg_id"), str):
            raise InvalidParams("set_base_score needs an arg_id string")
        if isinstance(raw.get("base_score"), bool) or not isinstance(raw.get("base_score"), (int, float)):
            raise RangeViolation(f"base_score must be a number, got {raw.get('base_score')!r}")
        return SetBaseScore(raw["arg_id"], float(raw["base_score"]))
    if kind == "set_polarity":
        if not isinstance(raw.get("src"), str) or not isinstance(raw.get("dst"), str):
            raise InvalidParams("set_polarity needs src and dst strings")
        return SetPolarity(raw["src"], raw["dst"], raw.get("polarity"))
    raise InvalidParams(f"unknown edit kind {kind!r}")


def apply_edit(qbaf: QBAF, edit: Edit) -> QBAF:
    """Return a new QBAF with one edit applied; the input is unchanged."""
    if isinstance(edit, SetBaseScore):
        target = qbaf.argument(edit.arg_id)
        args = [replace(a, base_score=edit.base_score) if a.id == target.id else a for a in qbaf.arguments]
        return build_qbaf(args, qbaf.attacks, qbaf.supports)
    if isinstance(edit, SetPolarity):
        qbaf.argument(edit.src)
        qbaf.argument(edit.dst)
        if edit.src == edit.dst:
            raise InvalidParams("polarity edits need two distinct arguments")
        pair = (edit.src, edit.dst)
        attacks = set(qbaf.attacks) - {pair}
        supports = set(qbaf.supports) - {pair}
        if edit.polarity == "attack":
            attacks.add(pair)
        elif edit.polarity == "support":
            supports.add(pair)
        return build_qbaf(list(qbaf.arguments), sorted(attacks), sorted(supports))
    raise InvalidParams(f"unsupported edit {edit!r}")


@dataclass(frozen=True)
class ContestReport:
    edits: tuple[Edit, ...]
    before: SolveResult
    after: SolveResult
    before_verdict: Verdict | None
    after_verdict: Verdict | None
    flipped: bool
    after_qbaf: QBAF

    def to_dict(self) -> dict:
        serialized = [e.to_dict() for e in self.edits]
        return {
            "edit": serialized[0] if len(serialized) == 1 else serialized,
            "before": {
                "strengths": {a: self.before.strengths[a] for a in self.before.ids},
                "label": self.before_verdict.label.value if self.before_verdict else None,
            },
            "after": {
                "strengths": {a: self.after.strengths[a] for a in self.after.ids},
                "label": self.after_verdict.label.value if self.after_verdict else None,
            },
            "flipped": self.flipped,
        }


def claim_verdict(qbaf: QBAF, result: SolveResult, tau: float) -> Verdict | None:
    claim_id = qbaf.claim_id()
    if claim_id is None:
        return None
    strength = result.strengths[claim_id]
    return Verdict(
        label=VerdictLabel.TRUE if strength >= tau else VerdictLabel.FALSE,
        decided_by=DecidedBy.QBAF,
        claim_strength=strength,
        converged=result.converged,
    )


def contest(
    qbaf: QBAF,
    edit: Edit | list[Edit],
    semantics=Semantics.QE,
    params: SolverParams | None = None,
    tau: float = 0.5,
) -> ContestReport:
    """Apply one or more edits, re-solve, and compare outcomes."""
    edits = tuple(edit) if isinstance(edit, (list, tuple)) else (edit,)
    if not edits:
        raise InvalidParams("contest needs at least one edit")
    if isinstance(tau, bool) or not isinstance(tau, (int, float)) or not 0.0 <= tau <= 1.0:
        raise InvalidParams(f"tau must lie in [0, 1], got {tau!r}")

    before = solve(qbaf, semantics, params)
    after_qbaf = qbaf
    for e in edits:
        after_qbaf = apply_edit(after_qbaf, e)
    after = solve(after_qbaf, semantics, params)

    before_verdict = claim_verdict(qbaf, before, tau)
    after_verdict = claim_verdict(after_qbaf, after, tau)
    flipped = (
        before_verdict is not None
        and after_verdict is not None
        and before_verdict.label != after_verdict.label
    )
    return ContestReport(
        edits=edits,
        before=before,
        after=after,
        before_verdict=before_verdict,
        after_verdict=after_verdict,
        flipped=flipped,
        after_qbaf=after_qbaf,
    )
