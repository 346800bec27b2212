"""Evidence corpus ingestion and lexical top-k retrieval.

Similarity is TF-IDF weighted cosine over lowercased word tokens. The
idf is a smoothed function of document frequency alone, ln(1 + 1/(1+df)),
so adding documents with entirely fresh vocabulary leaves existing
scores untouched and cannot reorder earlier results.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass

from .errors import DuplicateDocId, EmptyCorpus, InvalidParams, SchemaError, UnknownId

_TOKEN = re.compile(r"\w+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    source: str | None = None

    def __post_init__(self):
        if not isinstance(self.doc_id, str) or not self.doc_id:
            raise SchemaError(f"doc_id must be a non-empty string, got {self.doc_id!r}")
        if not isinstance(self.text, str) or not self.text.strip():
            raise SchemaError(f"document {self.doc_id!r} has empty text")
        if self.source is not None and not isinstance(self.source, str):
            raise SchemaError(f"document {self.doc_id!r} source must be a string")


@dataclass(frozen=True)
class RankedDoc:
    doc_id: str
    raw_score: float
    normalized_score: float


@dataclass(frozen=True)
class RetrievalResult:
    ranked: tuple[RankedDoc, ...]
    truncated: bool

    def doc_ids(self) -> tuple[str, ...]:
        return tuple(r.doc_id for r in self.ranked)


class CorpusIndex:
    """Immutable TF-IDF index over a document collection."""

    def __init__(self, documents: list[Document]):
        if not documents:
            raise EmptyCorpus("corpus contains no documents")
        by_id: dict[str, Document] = {}
        for doc in documents:
            if doc.doc_id in by_id:
                raise DuplicateDocId(f"duplicate doc_id {doc.doc_id!r}")
            by_id[doc.doc_id] = doc
        self.documents = tuple(documents)
        self.by_id = by_id

        df: Counter[str] = Counter()
        term_counts: dict[str, Counter[str]] = {}
        for doc in documents:
            counts = Counter(tokenize(doc.text))
            term_counts[doc.doc_id] = counts
            df.update(counts.keys())
        self._df = df

        self._vectors: dict[str, dict[str, float]] = {}
        self._norms: dict[str, float] = {}
        for doc_id, counts in term_counts.items():
            vec = {t: c * self.idf(t) for t, c in counts.items()}
            self._vectors[doc_id] = vec
            self._norms[doc_id] = math.sqrt(sum(w * w for w in vec.values()))

    def __len__(self) -> int:
        return len(self.documents)

    def idf(self, term: str) -> float:
        return math.log(1.0 + 1.0 / (1.0 + self._df[term]))

    def document(self, doc_id: str) -> Document:
        try:
            return self.by_id[doc_id]
        except KeyError:
            raise UnknownId(f"unknown doc_id {doc_id!r}") from None

    def score(self, query: str, doc_id: str) -> float:
        counts = Counter(tokenize(query))
        qvec = {t: c * self.idf(t) for t, c in counts.items()}
        qnorm = math.sqrt(sum(w * w for w in qvec.values()))
        return self._cosine(qvec, qnorm, doc_id)

    def _cosine(self, qvec: dict[str, float], qnorm: float, doc_id: str) -> float:
        dvec = self._vectors[doc_id]
        dnorm = self._norms[doc_id]
        if qnorm == 0.0 or dnorm == 0.0:
            return 0.0
        dot = 0.0
        for term, weight in qvec.items():
            hit = dvec.get(term)
            if hit is not None:
                dot += weight * hit
        return dot / (qnorm * dnorm)


def _parse_document(raw, line_no: int) -> Document:
    if not isinstance(raw, dict):
        raise SchemaError(f"line {line_no}: expected a JSON object")
    unknown = set(raw) - {"doc_id", "text", "source"}
    if unknown:
        raise SchemaError(f"line {line_no}: unknown keys {sorted(unknown)}")
    try:
        return Document(raw.get("doc_id"), raw.get("text"), raw.get("source"))
    except SchemaError as exc:
        raise SchemaError(f"line {line_no}: {exc}") from None


def ingest_corpus(path) -> CorpusIndex:
    """Build an index from a JSONL file of documents."""
    documents = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {line_no}: invalid JSON ({exc.msg})") from None
            documents.append(_parse_document(raw, line_no))
    if not documents:
        raise EmptyCorpus(f"no documents in {path}")
    return CorpusIndex(documents)


def _normalize(ranked: list[tuple[str, float]]) -> tuple[RankedDoc, ...]:
    if not ranked:
        return ()
    scores = [s for _, s in ranked]
    lo, hi = min(scores), max(scores)
    if hi == lo:
        return tuple(RankedDoc(d, s, 1.0) for d, s in ranked)
    return tuple(RankedDoc(d, s, (s - lo) / (hi - lo)) for d, s in ranked)


def retrieve(index: CorpusIndex, claim: str, k: int) -> RetrievalResult:
    """Top-k documents for a claim, ranked by score then doc_id."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidParams(f"k must be a positive integer, got {k!r}")
    counts = Counter(tokenize(claim))
    qvec = {t: c * index.idf(t) for t, c in counts.items()}
    qnorm = math.sqrt(sum(w * w for w in qvec.values()))
    scored = [(doc.doc_id, index._cosine(qvec, qnorm, doc.doc_id)) for doc in index.documents]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    cut = scored[: min(k, len(scored))]
    return RetrievalResult(ranked=_normalize(cut), truncated=len(scored) > k)


def ingest_precomputed(path) -> dict[str, RetrievalResult]:
    """Load precomputed per-claim rankings from JSONL.

    Each line is {"claim_id": str, "ranked": [{"doc_id": str, "score": num}]}.
    Results are re-sorted to the canonical order and min-max normalized.
    """
    out: dict[str, RetrievalResult] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {line_no}: invalid JSON ({exc.msg})") from None
            if not isinstance(raw, dict) or not isinstance(raw.get("claim_id"), str):
                raise SchemaError(f"line {line_no}: expected an object with a claim_id string")
            claim_id = raw["claim_id"]
            if claim_id in out:
                raise SchemaError(f"line {line_no}: duplicate claim_id {claim_id!r}")
            entries = raw.get("ranked")
            if not isinstance(entries, list):
                raise SchemaError(f"line {line_no}: ranked must be a list")
            pairs = []
            seen = set()
            for pos, entry in enumerate(entries):
                if (
                    not isinstance(entry, dict)
                    or not isinstance(entry.get("doc_id"), str)
                    or isinstance(entry.get("score"), bool)
                    or not isinstance(entry.get("score"), (int, float))
                ):
                    raise SchemaError(f"line {line_no}: ranked[{pos}] needs doc_id and numeric score")
                if entry["doc_id"] in seen:
                    raise SchemaError(f"line {line_no}: duplicate doc_id {entry['doc_id']!r}")
                seen.add(entry["doc_id"])
                pairs.append((entry["doc_id"], float(entry["score"])))
            pairs.sort(key=lambda pair: (-pair[1], pair[0]))
            out[claim_id] = RetrievalResult(ranked=_normalize(pairs), truncated=False)
    if not out:
        raise SchemaError(f"no retrieval entries in {path}")
    return out
