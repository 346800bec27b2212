import json
from pathlib import Path

import pytest

from argufact.qbaf import Argument, Kind, build_qbaf

FIXTURES = Path(__file__).parent / "fixtures"


def contest_demo_qbaf():
    """The worked contestation example: two supporters, one attacker, one
    evidence-evidence support and one evidence-evidence attack."""
    args = [
        Argument("claim", text="demo claim", kind=Kind.CLAIM, base_score=0.5),
        Argument("E1", base_score=0.1),
        Argument("E2", base_score=0.5),
        Argument("E3", base_score=0.9),
    ]
    return build_qbaf(
        args,
        attacks=[("E3", "claim"), ("E3", "E1")],
        supports=[("E1", "claim"), ("E2", "claim"), ("E2", "E1")],
    )


def intro_demo_qbaf():
    """The introductory example graph: same shape plus an attack between the
    two evidence branches, all base scores 0.5."""
    args = [
        Argument("claim", text="demo claim", kind=Kind.CLAIM, base_score=0.5),
        Argument("E1", base_score=0.5),
        Argument("E2", base_score=0.5),
        Argument("E3", base_score=0.5),
    ]
    return build_qbaf(
        args,
        attacks=[("E3", "claim"), ("E3", "E1"), ("E2", "E3")],
        supports=[("E1", "claim"), ("E2", "claim"), ("E2", "E1")],
    )


@pytest.fixture
def q4_qbaf():
    return contest_demo_qbaf()


@pytest.fixture
def fig_qbaf():
    return intro_demo_qbaf()


class ScriptedClient:
    """Completion client returning queued responses in order."""

    def __init__(self, *responses):
        self.responses = list(responses)
        self.prompts = []
        self.calls = 0

    def complete(self, prompt, max_tokens=2048, temperature=0.0):
        self.prompts.append(prompt)
        self.calls += 1
        if not self.responses:
            raise AssertionError("scripted client exhausted")
        return self.responses.pop(0)


@pytest.fixture
def scripted_client_factory():
    return ScriptedClient


def load_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
