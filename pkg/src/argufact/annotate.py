"""Two-step relation annotation through a pluggable completion client.

Step 1 classifies each evidence item against the claim (support,
contradict, irrelevant); Step 2 extracts support/contradict pairs
among the relevant evidence. Both steps render evidence with stable
aliases E1..Ek in input order and parse strict JSON answers: markdown
fences are rejected, a malformed response earns exactly one corrective
retry, and referential mismatches fail immediately.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Protocol, Sequence

import requests

from .errors import AnnotationMismatch, ClientError, MalformedResponse, MissingFixture

logger = logging.getLogger(__name__)

DEFAULT_MAX_TOKENS = 2048


class Label(str, Enum):
    SUPPORT = "support"
    CONTRADICT = "contradict"
    IRRELEVANT = "irrelevant"


@dataclass(frozen=True)
class RelationAnnotation:
    """Claim-level labels plus unordered evidence relation pairs."""

    claim_labels: dict[str, Label] = field(default_factory=dict)
    sup_pairs: frozenset[tuple[str, str]] = frozenset()
    att_pairs: frozenset[tuple[str, str]] = frozenset()

    def relevant_ids(self) -> list[str]:
        return [e for e, lab in self.claim_labels.items() if lab is not Label.IRRELEVANT]

    @property
    def all_irrelevant(self) -> bool:
        return bool(self.claim_labels) and all(
            lab is Label.IRRELEVANT for lab in self.claim_labels.values()
        )

    def to_dict(self) -> dict:
        return {
            "claim_labels": {e: lab.value for e, lab in sorted(self.claim_labels.items())},
            "sup_pairs": sorted(list(p) for p in self.sup_pairs),
            "att_pairs": sorted(list(p) for p in self.att_pairs),
        }

    @classmethod
    def from_dict(cls, raw: Mapping) -> "RelationAnnotation":
        return cls(
            claim_labels={e: Label(v) for e, v in raw.get("claim_labels", {}).items()},
            sup_pairs=frozenset(tuple(p) for p in raw.get("sup_pairs", [])),
            att_pairs=frozenset(tuple(p) for p in raw.get("att_pairs", [])),
        )


class CompletionClient(Protocol):
    def complete(self, prompt: str, max_tokens: int = DEFAULT_MAX_TOKENS, temperature: float = 0.0) -> str:
        ...


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class MockCompletionClient:
    """Deterministic client returning fixture text keyed by prompt hash."""

    def __init__(self, fixtures: Mapping[str, str] | None = None):
        self._fixtures: dict[str, str] = dict(fixtures or {})

    @classmethod
    def from_jsonl(cls, path) -> "MockCompletionClient":
        fixtures = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                raw = json.loads(line)
                fixtures[raw["prompt_sha256"]] = raw["response"]
        return cls(fixtures)

    def register(self, prompt: str, response: str) -> None:
        self._fixtures[prompt_digest(prompt)] = response

    def complete(self, prompt: str, max_tokens: int = DEFAULT_MAX_TOKENS, temperature: float = 0.0) -> str:
        key = prompt_digest(prompt)
        try:
            return self._fixtures[key]
        except KeyError:
            head = prompt.splitlines()[0][:80] if prompt else ""
            raise MissingFixture(f"no fixture for prompt sha256 {key} (starts: {head!r})") from None


class HttpCompletionClient:
    """Chat-completions client with bounded retries on transport/5xx errors."""

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key: str | None = None,
        timeout: float = 60.0,
        max_retries: int = 3,
        backoff: float = 0.5,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff
        self._session = session or requests.Session()

    def complete(self, prompt: str, max_tokens: int = DEFAULT_MAX_TOKENS, temperature: float = 0.0) -> str:
        if not prompt:
            raise ClientError("prompt must be non-empty")
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
            "max_tokens": max_tokens,
        }
        url = f"{self.base_url}/chat/completions"
        last_status = None
        last_error = None
        for attempt in range(self.max_retries):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                resp = self._session.post(url, json=payload, headers=headers, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = str(exc)
                continue
            last_status = resp.status_code
            if resp.status_code >= 500:
                last_error = f"server error {resp.status_code}"
                continue
            if resp.status_code != 200:
                raise ClientError(f"request failed with status {resp.status_code}", status=resp.status_code)
            try:
                content = resp.json()["choices"][0]["message"]["content"]
            except (ValueError, KeyError, IndexError, TypeError):
                raise ClientError("response missing choices[0].message.content") from None
            if not isinstance(content, str):
                raise ClientError("completion content is not text")
            return content
        raise ClientError(
            f"gave up after {self.max_retries} attempts ({last_error})", status=last_status
        )


_CLASSIFY_TEMPLATE = """Task: Given a claim and multiple pieces of evidence, classify each evidence as "support", "contradict", or "irrelevant" to the claim. Classify each evidence as either supporting, contradicting, or irrelevant to the claim.

Instructions:
- Support: Evidence that backs the claim.
- Contradict: Evidence that counters or limits the claim.
- Irrelevant: Evidence unrelated to the claim.

Output Format:
Return a single JSON object with three keys: "support", "contradict", and "irrelevant", each mapping to a list of evidence items.

Example Format:
{{"support": ["E1"], "contradict": ["E3", "E4"], "irrelevant": ["E2", "E5"]}}.

Claim:
{claim}
Evidence:
{evidence}

You must always PROVIDE ONLY A SINGLE JSON without any additional explanation or commentary.
DO NOT include markdown formatting (such as triple backticks or `json` tags) in the output."""

_PAIRS_TEMPLATE = """Task: Given a claim and multiple pieces of evidence, analyze the relationships between evidence with respect to the claim.

Instructions:
- Support: Two evidence items that reinforce each other regarding the claim.
- Contradict: Two evidence items that conflict with each other regarding the claim.

Output Format:
Return a single JSON object with two keys: "support" and "contradict", each mapping to a list of evidence pairs.

Example format:
{{"support": [["E1", "E2"], ["E1", "E3"]], "contradict": [["E2", "E3"]]}}

Claim: {claim}
Evidence: {evidence}

You must always PROVIDE ONLY A SINGLE JSON without any additional explanation or commentary.
DO NOT include markdown formatting (such as triple backticks or `json` tags) in the output."""

_RETRY_SUFFIX = (
    "\n\nYour previous answer was not a single valid JSON object in the required format. "
    "Respond again with ONLY that JSON object."
)


def _aliases(evidence: Sequence[tuple[str, str]]) -> dict[str, str]:
    if not evidence:
        raise AnnotationMismatch("evidence list must not be empty")
    ids = [e for e, _ in evidence]
    if len(set(ids)) != len(ids):
        raise AnnotationMismatch("evidence ids must be unique")
    return {f"E{i + 1}": e for i, e in enumerate(ids)}


def _evidence_block(evidence: Sequence[tuple[str, str]]) -> str:
    return "\n".join(f"E{i + 1}: {text}" for i, (_, text) in enumerate(evidence))


def classification_prompt(claim: str, evidence: Sequence[tuple[str, str]]) -> str:
    _aliases(evidence)
    return _CLASSIFY_TEMPLATE.format(claim=claim, evidence=_evidence_block(evidence))


def pairs_prompt(claim: str, evidence: Sequence[tuple[str, str]]) -> str:
    _aliases(evidence)
    return _PAIRS_TEMPLATE.format(claim=claim, evidence=_evidence_block(evidence))


def _parse_strict_json(text: str, keys: tuple[str, ...]) -> dict:
    if "```" in text:
        raise MalformedResponse("response contains markdown fencing")
    try:
        parsed = json.loads(text.strip())
    except json.JSONDecodeError as exc:
        raise MalformedResponse(f"response is not valid JSON ({exc.msg})") from None
    if not isinstance(parsed, dict):
        raise MalformedResponse("response is not a JSON object")
    if set(parsed) != set(keys):
        raise MalformedResponse(f"response keys {sorted(parsed)} != expected {sorted(keys)}")
    for key in keys:
        if not isinstance(parsed[key], list):
            raise MalformedResponse(f"value of {key!r} is not a list")
    return parsed


def _complete_json(client: CompletionClient, prompt: str, keys: tuple[str, ...]) -> dict:
    # One corrective retry on malformed output, then give up.
    response = client.complete(prompt, max_tokens=DEFAULT_MAX_TOKENS, temperature=0.0)
    try:
        return _parse_strict_json(response, keys)
    except MalformedResponse:
        retry = client.complete(prompt + _RETRY_SUFFIX, max_tokens=DEFAULT_MAX_TOKENS, temperature=0.0)
        return _parse_strict_json(retry, keys)


def classify_claim_relations(
    client: CompletionClient, claim: str, evidence: Sequence[tuple[str, str]]
) -> RelationAnnotation:
    """Step 1: label every evidence item against the claim."""
    aliases = _aliases(evidence)
    prompt = classification_prompt(claim, evidence)
    parsed = _complete_json(client, prompt, ("support", "contradict", "irrelevant"))

    labels: dict[str, Label] = {}
    for key, label in (
        ("support", Label.SUPPORT),
        ("contradict", Label.CONTRADICT),
        ("irrelevant", Label.IRRELEVANT),
    ):
        for item in parsed[key]:
            if not isinstance(item, str) or item not in aliases:
                raise AnnotationMismatch(f"unknown evidence id {item!r} under {key!r}")
            real = aliases[item]
            if real in labels:
                raise AnnotationMismatch(f"evidence id {item!r} labeled more than once")
            labels[real] = label
    missing = set(aliases.values()) - set(labels)
    if missing:
        raise AnnotationMismatch(f"unlabeled evidence ids {sorted(missing)}")
    labels = {e: labels[e] for e, _ in evidence}
    return RelationAnnotation(claim_labels=labels)


def extract_evidence_pairs(
    client: CompletionClient, claim: str, relevant_evidence: Sequence[tuple[str, str]]
) -> RelationAnnotation:
    """Step 2: unordered support/contradict pairs among relevant evidence.

    Fewer than two items cannot form a pair, so no model call is made.
    """
    if len(relevant_evidence) < 2:
        return RelationAnnotation()
    aliases = _aliases(relevant_evidence)
    prompt = pairs_prompt(claim, relevant_evidence)
    parsed = _complete_json(client, prompt, ("support", "contradict"))

    def read_pairs(key: str) -> set[tuple[str, str]]:
        out = set()
        for item in parsed[key]:
            if not isinstance(item, list) or len(item) != 2:
                raise AnnotationMismatch(f"entry {item!r} under {key!r} is not a pair")
            left, right = item
            for alias in (left, right):
                if not isinstance(alias, str) or alias not in aliases:
                    raise AnnotationMismatch(f"unknown evidence id {alias!r} under {key!r}")
            if left == right:
                raise AnnotationMismatch(f"self-pair {item!r} under {key!r}")
            out.add(tuple(sorted((aliases[left], aliases[right]))))
        return out

    sup = read_pairs("support")
    att = read_pairs("contradict")
    overlap = sup & att
    if overlap:
        logger.warning(
            "dropping %d pair(s) reported as both support and contradict: %s",
            len(overlap),
            sorted(overlap),
        )
        sup -= overlap
        att -= overlap
    return RelationAnnotation(sup_pairs=frozenset(sup), att_pairs=frozenset(att))


def merge_annotations(labels: RelationAnnotation, pairs: RelationAnnotation) -> RelationAnnotation:
    return RelationAnnotation(
        claim_labels=dict(labels.claim_labels),
        sup_pairs=pairs.sup_pairs,
        att_pairs=pairs.att_pairs,
    )


def register_annotation_fixtures(
    client: MockCompletionClient,
    claim: str,
    evidence: Sequence[tuple[str, str]],
    classification: str | Mapping,
    pairs: str | Mapping | None = None,
    relevant: Iterable[str] | None = None,
) -> None:
    """Convenience for tests: register step responses for one claim."""
    if not isinstance(classification, str):
        classification = json.dumps(classification)
    client.register(classification_prompt(claim, evidence), classification)
    if pairs is None:
        return
    if relevant is None:
        relevant_list = list(evidence)
    else:
        keep = set(relevant)
        relevant_list = [(e, t) for e, t in evidence if e in keep]
    if len(relevant_list) >= 2:
        if not isinstance(pairs, str):
            pairs = json.dumps(pairs)
        client.register(pairs_prompt(claim, relevant_list), pairs)
