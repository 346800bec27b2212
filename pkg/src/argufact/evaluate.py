"""Batch evaluation over a claims file.

Writes one verification record per claim plus a summary with accuracy
and a strength histogram. Output is byte-identical across runs for a
fixed corpus, claims file, and mock client: records are sorted-key
JSON, the summary stores a relative records path, and nothing
timestamped is emitted.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .annotate import CompletionClient
from .errors import ArgufactError, InvalidParams, SchemaError
from .pipeline import DecidedBy, PipelineConfig, verify
from .retrieval import CorpusIndex, RetrievalResult

HISTOGRAM_BIN_WIDTH = 0.05
_N_BINS = 20

RECORDS_FILENAME = "records.jsonl"
SUMMARY_FILENAME = "summary.json"


@dataclass(frozen=True)
class EvalClaim:
    claim_id: str
    claim: str
    label: str | None = None


@dataclass(frozen=True)
class EvalSummary:
    n_claims: int
    n_correct: int
    n_labeled: int
    accuracy: float | None
    n_fallback: int
    n_nonconverged: int
    n_errors: int
    records: str
    histogram: dict
    config: dict

    def to_dict(self) -> dict:
        return {
            "n_claims": self.n_claims,
            "n_correct": self.n_correct,
            "n_labeled": self.n_labeled,
            "accuracy": self.accuracy,
            "n_fallback": self.n_fallback,
            "n_nonconverged": self.n_nonconverged,
            "n_errors": self.n_errors,
            "records": self.records,
            "histogram": self.histogram,
            "config": self.config,
        }


def load_claims(path) -> list[EvalClaim]:
    """Parse the claims JSONL: {"claim_id", "claim", "label"?}."""
    claims = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {line_no}: invalid JSON ({exc.msg})") from None
            if not isinstance(raw, dict):
                raise SchemaError(f"line {line_no}: expected a JSON object")
            claim_id = raw.get("claim_id")
            claim = raw.get("claim")
            label = raw.get("label")
            if not isinstance(claim_id, str) or not claim_id:
                raise SchemaError(f"line {line_no}: claim_id must be a non-empty string")
            if claim_id in seen:
                raise SchemaError(f"line {line_no}: duplicate claim_id {claim_id!r}")
            seen.add(claim_id)
            if not isinstance(claim, str) or not claim:
                raise SchemaError(f"line {line_no}: claim must be a non-empty string")
            if label is not None and label not in ("true", "false"):
                raise SchemaError(f"line {line_no}: label must be \"true\" or \"false\"")
            claims.append(EvalClaim(claim_id, claim, label))
    if not claims:
        raise SchemaError(f"no claims in {path}")
    return claims


def strength_histogram(strengths: list[float]) -> dict:
    counts = [0] * _N_BINS
    for s in strengths:
        idx = min(int(s / HISTOGRAM_BIN_WIDTH), _N_BINS - 1)
        counts[idx] += 1
    return {"bin_width": HISTOGRAM_BIN_WIDTH, "counts": counts}


def run_eval(
    claims_path,
    corpus: CorpusIndex,
    out_dir,
    config: PipelineConfig,
    client: CompletionClient,
    retrievals: dict[str, RetrievalResult] | None = None,
    jobs: int = 1,
) -> EvalSummary:
    """Verify every claim, write records and summary, return the summary.

    Per-claim engine errors are recorded and counted; the run continues.
    """
    if not isinstance(jobs, int) or isinstance(jobs, bool) or jobs < 1:
        raise InvalidParams(f"jobs must be a positive integer, got {jobs!r}")
    claims = load_claims(claims_path)

    def one(claim: EvalClaim) -> dict:
        try:
            retrieval = None
            if retrievals is not None:
                if claim.claim_id not in retrievals:
                    raise SchemaError(f"no precomputed retrieval for claim {claim.claim_id!r}")
                retrieval = retrievals[claim.claim_id]
            record = verify(
                claim.claim, corpus, config, client, retrieval=retrieval, claim_id=claim.claim_id
            )
            out = record.to_dict()
            out["gold_label"] = claim.label
            return out
        except ArgufactError as exc:
            return {
                "claim_id": claim.claim_id,
                "claim": claim.claim,
                "gold_label": claim.label,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            }

    if jobs == 1:
        records = [one(c) for c in claims]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(one, claims))

    os.makedirs(out_dir, exist_ok=True)
    records_path = os.path.join(out_dir, RECORDS_FILENAME)
    with open(records_path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True) + "\n")

    n_correct = 0
    n_labeled = 0
    n_fallback = 0
    n_nonconverged = 0
    n_errors = 0
    strengths = []
    for record in records:
        if "error" in record:
            n_errors += 1
            continue
        verdict = record["verdict"]
        if verdict["decided_by"] == DecidedBy.FALLBACK.value:
            n_fallback += 1
        else:
            strengths.append(verdict["claim_strength"])
            if verdict["converged"] is False:
                n_nonconverged += 1
        if record["gold_label"] is not None:
            n_labeled += 1
            if record["gold_label"] == verdict["label"]:
                n_correct += 1

    summary = EvalSummary(
        n_claims=len(claims),
        n_correct=n_correct,
        n_labeled=n_labeled,
        accuracy=(n_correct / n_labeled) if n_labeled else None,
        n_fallback=n_fallback,
        n_nonconverged=n_nonconverged,
        n_errors=n_errors,
        records=RECORDS_FILENAME,
        histogram=strength_histogram(strengths),
        config=config.to_dict(),
    )
    with open(os.path.join(out_dir, SUMMARY_FILENAME), "w", encoding="utf-8") as fh:
        fh.write(json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n")
    return summary
