"""End-to-end claim verification.

retrieve -> classify evidence -> (optionally) extract evidence pairs
-> build QBAF -> solve -> threshold verdict. When no relevant evidence
survives Step 1 the verdict falls back to a direct true/false model
query.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum

from .annotate import (
    CompletionClient,
    Label,
    RelationAnnotation,
    classify_claim_relations,
    extract_evidence_pairs,
    merge_annotations,
)
from .errors import AnnotationMismatch, InvalidParams, MalformedResponse, UnknownId
from .qbaf import QBAF, Argument, Kind, build_qbaf, to_dict as qbaf_to_dict
from .retrieval import CorpusIndex, RetrievalResult, retrieve
from .semantics import Semantics, SolveResult, SolverParams, solve

logger = logging.getLogger(__name__)

CLAIM_ID = "claim"
FALLBACK_MAX_TOKENS = 15

_FALLBACK_TEMPLATE = """You are a fact-checking expert.

For each input claim, output only true if the claim is factually correct, or false if it is not.
Respond with a single word (true or false) — no explanations, justifications, or additional text.

Claim: {claim}
Answer:"""


class RelationsMode(str, Enum):
    FULL = "full"
    CLAIM_ONLY = "claim_only"


class BaseInit(str, Enum):
    UNIFORM = "uniform"
    RETRIEVER_SCORE = "retriever_score"


class VerdictLabel(str, Enum):
    TRUE = "true"
    FALSE = "false"


class DecidedBy(str, Enum):
    QBAF = "qbaf"
    FALLBACK = "fallback_llm"


@dataclass(frozen=True)
class PipelineConfig:
    top_k: int = 5
    tau: float = 0.5
    relations_mode: RelationsMode = RelationsMode.FULL
    base_init: BaseInit = BaseInit.UNIFORM
    semantics: Semantics = Semantics.QE
    solver: SolverParams = SolverParams()

    def __post_init__(self):
        if not isinstance(self.top_k, int) or isinstance(self.top_k, bool) or self.top_k < 1:
            raise InvalidParams(f"top_k must be a positive integer, got {self.top_k!r}")
        if (
            isinstance(self.tau, bool)
            or not isinstance(self.tau, (int, float))
            or not 0.0 <= self.tau <= 1.0
        ):
            raise InvalidParams(f"tau must lie in [0, 1], got {self.tau!r}")
        for name, enum_cls in (
            ("relations_mode", RelationsMode),
            ("base_init", BaseInit),
            ("semantics", Semantics),
        ):
            try:
                object.__setattr__(self, name, enum_cls(getattr(self, name)))
            except ValueError:
                raise InvalidParams(f"invalid {name}: {getattr(self, name)!r}") from None
        if not isinstance(self.solver, SolverParams):
            raise InvalidParams("solver must be a SolverParams instance")

    def to_dict(self) -> dict:
        return {
            "top_k": self.top_k,
            "tau": self.tau,
            "relations_mode": self.relations_mode.value,
            "base_init": self.base_init.value,
            "semantics": self.semantics.value,
            "solver": {
                "step": self.solver.step,
                "epsilon": self.solver.epsilon,
                "max_time": self.solver.max_time,
            },
        }


@dataclass(frozen=True)
class Verdict:
    label: VerdictLabel
    decided_by: DecidedBy
    claim_strength: float | None = None
    converged: bool | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "decided_by": self.decided_by.value,
            "claim_strength": self.claim_strength,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class VerificationRecord:
    """Everything one verification produced, for explanation and audit."""

    claim: str
    verdict: Verdict
    qbaf: QBAF
    annotation: RelationAnnotation
    retrieval: RetrievalResult
    config: PipelineConfig
    result: SolveResult | None = None
    claim_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "claim": self.claim,
            "verdict": self.verdict.to_dict(),
            "qbaf": qbaf_to_dict(self.qbaf),
            "solve": None if self.result is None else self.result.to_dict(),
            "annotation": self.annotation.to_dict(),
            "retrieval": [
                {
                    "doc_id": r.doc_id,
                    "raw_score": r.raw_score,
                    "normalized_score": r.normalized_score,
                }
                for r in self.retrieval.ranked
            ],
            "config": self.config.to_dict(),
        }


def build_qbaf_from_annotations(
    claim: Argument,
    evidence: list[Argument],
    annotation: RelationAnnotation,
    base_init: BaseInit = BaseInit.UNIFORM,
    retrieval: RetrievalResult | None = None,
) -> QBAF:
    """Assemble the verification QBAF from Step 1/2 output.

    Irrelevant evidence is dropped, claim labels become edges onto the
    claim, pairs become bidirectional evidence-evidence edges. Pairs
    touching dropped evidence are discarded with a warning. The claim
    keeps base score 0.5 regardless of base_init.
    """
    base_init = BaseInit(base_init)
    ids = [e.id for e in evidence]
    if set(annotation.claim_labels) != set(ids):
        raise AnnotationMismatch(
            f"labels cover {sorted(annotation.claim_labels)} but evidence is {sorted(ids)}"
        )
    if base_init is BaseInit.RETRIEVER_SCORE:
        if retrieval is None:
            raise InvalidParams("retriever_score initialization needs a retrieval result")
        norm = {r.doc_id: r.normalized_score for r in retrieval.ranked}

    claim = replace(claim, kind=Kind.CLAIM, base_score=0.5)
    args = [claim]
    relevant = set()
    for ev in evidence:
        if annotation.claim_labels[ev.id] is Label.IRRELEVANT:
            continue
        relevant.add(ev.id)
        if base_init is BaseInit.RETRIEVER_SCORE:
            if ev.id not in norm:
                raise UnknownId(f"evidence {ev.id!r} missing from retrieval result")
            score = norm[ev.id]
        else:
            score = 0.5
        args.append(replace(ev, kind=Kind.EVIDENCE, base_score=score))

    attacks = []
    supports = []
    for ev_id, label in annotation.claim_labels.items():
        if label is Label.SUPPORT:
            supports.append((ev_id, claim.id))
        elif label is Label.CONTRADICT:
            attacks.append((ev_id, claim.id))

    for pairs, edges in ((annotation.sup_pairs, supports), (annotation.att_pairs, attacks)):
        for left, right in sorted(pairs):
            if left not in relevant or right not in relevant:
                logger.warning("dropping pair (%s, %s): member not relevant", left, right)
                continue
            edges.append((left, right))
            edges.append((right, left))

    return build_qbaf(args, attacks, supports)


def fallback_prompt(claim_text: str) -> str:
    return _FALLBACK_TEMPLATE.format(claim=claim_text)


def fallback_verdict(client: CompletionClient, claim_text: str) -> Verdict:
    """Direct single-word true/false query, strictly parsed."""
    prompt = fallback_prompt(claim_text)
    response = client.complete(prompt, max_tokens=FALLBACK_MAX_TOKENS, temperature=0.0)
    word = response.strip().lower()
    if word not in ("true", "false"):
        raise MalformedResponse(f"fallback answer must be true or false, got {response!r}")
    return Verdict(label=VerdictLabel(word), decided_by=DecidedBy.FALLBACK)


def verify(
    claim_text: str,
    index: CorpusIndex | None,
    config: PipelineConfig,
    client: CompletionClient,
    retrieval: RetrievalResult | None = None,
    claim_id: str | None = None,
) -> VerificationRecord:
    """Run the full verification pipeline for one claim.

    ``retrieval`` overrides index retrieval with a precomputed ranking;
    the index is still needed to resolve document texts.
    """
    if retrieval is None:
        if index is None:
            raise InvalidParams("either an index or a precomputed retrieval is required")
        retrieval = retrieve(index, claim_text, config.top_k)
    if index is None:
        raise InvalidParams("an index is required to resolve document texts")

    evidence_pairs = [(doc_id, index.document(doc_id).text) for doc_id in retrieval.doc_ids()]
    claim_arg = Argument(CLAIM_ID, text=claim_text, kind=Kind.CLAIM, base_score=0.5)
    evidence_args = [Argument(doc_id, text=text) for doc_id, text in evidence_pairs]

    if evidence_pairs:
        annotation = classify_claim_relations(client, claim_text, evidence_pairs)
    else:
        annotation = RelationAnnotation()

    relevant_ids = annotation.relevant_ids()
    if not relevant_ids:
        qbaf = build_qbaf_from_annotations(claim_arg, evidence_args, annotation)
        verdict = fallback_verdict(client, claim_text)
        return VerificationRecord(
            claim=claim_text,
            verdict=verdict,
            qbaf=qbaf,
            annotation=annotation,
            retrieval=retrieval,
            config=config,
            result=None,
            claim_id=claim_id,
        )

    if config.relations_mode is RelationsMode.FULL:
        keep = set(relevant_ids)
        relevant_evidence = [(e, t) for e, t in evidence_pairs if e in keep]
        pairs = extract_evidence_pairs(client, claim_text, relevant_evidence)
        annotation = merge_annotations(annotation, pairs)

    qbaf = build_qbaf_from_annotations(
        claim_arg, evidence_args, annotation, config.base_init, retrieval
    )
    result = solve(qbaf, config.semantics, config.solver)
    strength = result.strengths[CLAIM_ID]
    verdict = Verdict(
        label=VerdictLabel.TRUE if strength >= config.tau else VerdictLabel.FALSE,
        decided_by=DecidedBy.QBAF,
        claim_strength=strength,
        converged=result.converged,
    )
    return VerificationRecord(
        claim=claim_text,
        verdict=verdict,
        qbaf=qbaf,
        annotation=annotation,
        retrieval=retrieval,
        config=config,
        result=result,
        claim_id=claim_id,
    )
