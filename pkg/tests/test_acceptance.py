"""Acceptance gate: one test per release criterion, at the stated tolerance.

Each criterion is a single test function so the -v report carries one
pass/fail line per criterion. Oracles here are reimplemented from the
definitions, not imported from the engine under test.
"""

import json
import math
import random
import time

import pytest

from argufact.annotate import (
    MockCompletionClient,
    classify_claim_relations,
    extract_evidence_pairs,
)
from argufact.axioms import PropertyKind, generate_random_qbaf, run_property_suite
from argufact.errors import MalformedResponse
from argufact.evaluate import run_eval
from argufact.explain import SetPolarity, contest
from argufact.pipeline import PipelineConfig
from argufact.qbaf import Argument, Kind, build_qbaf
from argufact.retrieval import ingest_corpus
from argufact.semantics import Semantics, SolverParams, solve

from conftest import FIXTURES, ScriptedClient, intro_demo_qbaf


# ------------------------------------------------------------- criterion 1
# The worked contestation example: adding the challenger attack drives the
# claim to 0.46 +/- 0.01 (E2 0.50 +/- 0.01, E1 0.09 +/- 0.02, E3 0.89 +/- 0.02)
# and flips the verdict to false at tau = 0.5, in under a second.


def test_criterion_1_worked_contestation_example():
    args = [
        Argument("claim", text="contested claim", kind=Kind.CLAIM, base_score=0.5),
        Argument("E1", base_score=0.1),
        Argument("E2", base_score=0.5),
        Argument("E3", base_score=0.9),
    ]
    before = build_qbaf(
        args,
        attacks=[("E3", "E1")],
        supports=[("E1", "claim"), ("E2", "claim"), ("E2", "E1")],
    )

    started = time.monotonic()
    report = contest(before, SetPolarity("E3", "claim", "attack"), tau=0.5)
    elapsed = time.monotonic() - started

    strengths = report.after.strengths
    assert strengths["claim"] == pytest.approx(0.46, abs=0.01)
    assert strengths["E2"] == pytest.approx(0.50, abs=0.01)
    assert strengths["E1"] == pytest.approx(0.09, abs=0.02)
    assert strengths["E3"] == pytest.approx(0.89, abs=0.02)
    assert report.before_verdict.label.value == "true"
    assert report.after_verdict.label.value == "false"
    assert report.flipped is True
    assert elapsed < 1.0


# ------------------------------------------------------------- criterion 2
# 1000 seeded instances per property under QE semantics on random acyclic
# graphs (n <= 8): zero violations at tolerance 1e-4 for Neutrality,
# Monotony, Franklin, Weakening and Strengthening, plus mirrored-sign
# Duality on 1000 instances, all inside two minutes.


def test_criterion_2_axiom_suite_clean_at_1000():
    started = time.monotonic()
    reports = run_property_suite(
        count=1000, semantics=Semantics.QE, tolerance=1e-4, seed=0
    )
    elapsed = time.monotonic() - started

    axiom_kinds = [
        PropertyKind.NEUTRALITY,
        PropertyKind.MONOTONY,
        PropertyKind.FRANKLIN,
        PropertyKind.WEAKENING,
        PropertyKind.STRENGTHENING,
    ]
    for kind in axiom_kinds:
        outcomes = [r.holds for r in reports[kind]]
        assert len(outcomes) == 1000, kind
        assert outcomes.count(False) == 0, kind
        assert outcomes.count(None) == 0, kind

    duality = reports[PropertyKind.DUALITY]
    assert len(duality) == 1000
    assert all(r.holds is True for r in duality)
    assert elapsed < 120.0


# ------------------------------------------------------------- criterion 3
# On 500 random tree-shaped QBAFs the solver matches a bottom-up analytic
# fixed-point evaluation within 1e-3 per argument, for all three semantics.
# The oracle below recomputes the fixed points from the closed-form target
# functions, independently of the engine.


def _h(x: float) -> float:
    x = max(x, 0.0)
    return x * x / (1.0 + x * x)


def _qe_fixed(beta, att, sup):
    energy = sum(sup) - sum(att)
    return beta + (1.0 - beta) * _h(energy) - beta * _h(-energy)


def _dfquad_fixed(beta, att, sup):
    va = 1.0
    for x in att:
        va *= 1.0 - x
    va = 1.0 - va
    vs = 1.0
    for x in sup:
        vs *= 1.0 - x
    vs = 1.0 - vs
    if va >= vs:
        return beta - beta * (va - vs)
    return beta + (1.0 - beta) * (vs - va)


def _euler_fixed(beta, att, sup):
    energy = sum(sup) - sum(att)
    if energy == 0.0:
        return beta
    return 1.0 - (1.0 - beta * beta) / (1.0 + beta * math.exp(energy))


_FIXED = {
    Semantics.QE: _qe_fixed,
    Semantics.DFQUAD: _dfquad_fixed,
    Semantics.EULER: _euler_fixed,
}


def _random_tree(seed):
    """Arguments a0..a(n-1); each non-root gets one signed edge to an
    earlier node, so children always carry larger indices than parents."""
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    betas = [rng.random() for _ in range(n)]
    args = [Argument(f"a{i}", base_score=betas[i]) for i in range(n)]
    attacks, supports = [], []
    parents = [None]
    for i in range(1, n):
        parent = rng.randrange(i)
        parents.append(parent)
        (attacks if rng.random() < 0.5 else supports).append((f"a{i}", f"a{parent}"))
    return build_qbaf(args, attacks, supports), betas, parents, set(map(tuple, attacks))


def _tree_fixed_points(semantics, betas, parents, attack_edges):
    n = len(betas)
    fixed = [None] * n
    target = _FIXED[semantics]
    for i in range(n - 1, -1, -1):
        att, sup = [], []
        for child in range(i + 1, n):
            if parents[child] != i:
                continue
            side = att if (f"a{child}", f"a{i}") in attack_edges else sup
            side.append(fixed[child])
        fixed[i] = target(betas[i], att, sup)
    return fixed


def test_criterion_3_tree_fixed_points_all_semantics():
    params = SolverParams(epsilon=1e-4)
    worst = 0.0
    for seed in range(500):
        qbaf, betas, parents, attack_edges = _random_tree(seed)
        for semantics in (Semantics.QE, Semantics.DFQUAD, Semantics.EULER):
            expected = _tree_fixed_points(semantics, betas, parents, attack_edges)
            result = solve(qbaf, semantics, params)
            assert result.converged, (seed, semantics)
            for i, value in enumerate(expected):
                diff = abs(result.strengths[f"a{i}"] - value)
                worst = max(worst, diff)
                assert diff <= 1e-3, (seed, semantics, f"a{i}", diff)
    assert worst <= 1e-3


# ------------------------------------------------------------- criterion 4
# 1000 random QBAFs, cyclic ones included: every trajectory sample stays in
# [0, 1] and arguments with no attackers or supporters hold their base
# score exactly.


def test_criterion_4_range_and_isolation_on_random_graphs():
    for seed in range(1000):
        n = 2 + seed % 9
        qbaf = generate_random_qbaf(
            seed=seed, n=n, edge_density=0.5, acyclic=(seed % 4 == 0)
        )
        result = solve(qbaf)
        assert result.trajectory.min() >= 0.0, seed
        assert result.trajectory.max() <= 1.0, seed
        for arg_id in qbaf.ids:
            if not qbaf.attackers(arg_id) and not qbaf.supporters(arg_id):
                assert result.strengths[arg_id] == qbaf.argument(arg_id).base_score, (
                    seed,
                    arg_id,
                )


# ------------------------------------------------------------- criterion 5
# Qualitative dynamics of the introductory example (all base scores 0.5):
# the challenged evidence only loses strength over time, and the claim
# converges above 0.5.


def test_criterion_5_introductory_example_dynamics():
    qbaf = intro_demo_qbaf()
    result = solve(qbaf)
    e3 = list(result.ids).index("E3")
    column = result.trajectory[:, e3]
    for prev, cur in zip(column, column[1:]):
        assert cur <= prev + 1e-12
    assert result.strengths["claim"] > 0.5
    assert result.converged is True


# ------------------------------------------------------------- criterion 6
# The 20-claim mock evaluation is byte-identical across runs, histogram
# included, and exercises at least one claim with no relevant evidence
# (the model-only fallback path).


def test_criterion_6_mock_eval_reproducibility(tmp_path):
    corpus = ingest_corpus(FIXTURES / "corpus.jsonl")
    outputs = []
    summaries = []
    for name in ("first", "second"):
        client = MockCompletionClient.from_jsonl(FIXTURES / "mock_responses.jsonl")
        out_dir = tmp_path / name
        summaries.append(
            run_eval(FIXTURES / "claims.jsonl", corpus, out_dir, PipelineConfig(), client)
        )
        outputs.append(
            (
                (out_dir / "records.jsonl").read_bytes(),
                (out_dir / "summary.json").read_bytes(),
            )
        )
    assert outputs[0] == outputs[1]

    summary = summaries[0]
    assert summary.n_claims == 20
    assert summary.n_errors == 0
    assert summary.n_fallback >= 1
    assert sum(summary.histogram["counts"]) == 20 - summary.n_fallback
    assert json.loads((tmp_path / "first" / "summary.json").read_text())["histogram"] == (
        summary.histogram
    )


# ------------------------------------------------------------- criterion 7
# The documented example payloads parse exactly, and a fenced or
# key-missing response still raises MalformedResponse after one corrective
# retry (two model calls total).


_EVIDENCE_5 = [(f"d{i}", f"evidence text number {i}") for i in range(1, 6)]
_EVIDENCE_3 = [(f"d{i}", f"evidence text number {i}") for i in range(1, 4)]

_CLASSIFY_PAYLOAD = '{"support": ["E1"], "contradict": ["E3", "E4"], "irrelevant": ["E2", "E5"]}'
_PAIRS_PAYLOAD = '{"support": [["E1", "E2"], ["E1", "E3"]], "contradict": [["E2", "E3"]]}'


def test_criterion_7_annotation_payload_contract():
    annotation = classify_claim_relations(
        ScriptedClient(_CLASSIFY_PAYLOAD), "claim text", _EVIDENCE_5
    )
    assert annotation.claim_labels["d1"].value == "support"
    assert annotation.claim_labels["d3"].value == "contradict"
    assert annotation.claim_labels["d4"].value == "contradict"
    assert annotation.claim_labels["d2"].value == "irrelevant"
    assert annotation.claim_labels["d5"].value == "irrelevant"

    pairs = extract_evidence_pairs(ScriptedClient(_PAIRS_PAYLOAD), "claim text", _EVIDENCE_3)
    assert pairs.sup_pairs == frozenset({("d1", "d2"), ("d1", "d3")})
    assert pairs.att_pairs == frozenset({("d2", "d3")})

    fenced = "```json\n" + _CLASSIFY_PAYLOAD + "\n```"
    client = ScriptedClient(fenced, fenced)
    with pytest.raises(MalformedResponse):
        classify_claim_relations(client, "claim text", _EVIDENCE_5)
    assert client.calls == 2  # exactly one corrective retry

    missing_key = '{"support": ["E1"], "contradict": ["E2", "E3"]}'
    client = ScriptedClient(missing_key, missing_key)
    with pytest.raises(MalformedResponse):
        classify_claim_relations(client, "claim text", _EVIDENCE_5)
    assert client.calls == 2
