"""Regenerate the frozen API payloads used by the UI tests.

Run from the repository root with the engine installed:

    python3 frontend/tests/fixtures/capture.py

Every JSON file in this directory is a byte-for-byte response from the
real backend; the UI tests replay them through a stubbed fetch so the
frontend suite needs no running server.
"""

import json
import pathlib

from fastapi.testclient import TestClient

from argufact.api import create_app

HERE = pathlib.Path(__file__).parent

BASE_GRAPH = {
    "arguments": [
        {"id": "claim", "text": "The harbor lighthouse was completed in 1889.", "kind": "claim", "base_score": 0.5},
        {"id": "E1", "text": "A town chronicle lists the lighthouse as finished in 1889.", "kind": "evidence", "base_score": 0.5},
        {"id": "E2", "text": "The harbor registry includes the lighthouse in its 1890 survey.", "kind": "evidence", "base_score": 0.5},
        {"id": "E3", "text": "A later almanac dates the lighthouse to 1893.", "kind": "evidence", "base_score": 0.5},
    ],
    "attacks": [["E3", "claim"], ["E3", "E1"]],
    "supports": [["E1", "claim"], ["E2", "claim"], ["E2", "E1"]],
}

CONTESTED_GRAPH = {
    "arguments": [
        {"id": "claim", "text": "The harbor lighthouse was completed in 1889.", "kind": "claim", "base_score": 0.5},
        {"id": "E1", "text": "A town chronicle lists the lighthouse as finished in 1889.", "kind": "evidence", "base_score": 0.1},
        {"id": "E2", "text": "The harbor registry includes the lighthouse in its 1890 survey.", "kind": "evidence", "base_score": 0.5},
        {"id": "E3", "text": "A later almanac dates the lighthouse to 1893.", "kind": "evidence", "base_score": 0.9},
    ],
    "attacks": [["E3", "claim"], ["E3", "E1"]],
    "supports": [["E1", "claim"], ["E2", "claim"], ["E2", "E1"]],
}


def dump(name: str, payload) -> None:
    path = HERE / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {path.name}")


def main() -> None:
    client = TestClient(create_app())

    # Session on the demo graph with every base score at 0.5, then the
    # two base-score edits applied one at a time as the dashboard would.
    created = client.post("/session", json={"qbaf": BASE_GRAPH, "claim": BASE_GRAPH["arguments"][0]["text"]})
    created.raise_for_status()
    sid = created.json()["session_id"]
    dump("session_create.json", created.json())

    r1 = client.post(f"/session/{sid}/contest", json={"edit": {"kind": "set_base_score", "arg_id": "E1", "base_score": 0.1}})
    r1.raise_for_status()
    dump("contest_e1.json", r1.json())
    dump("session_after_e1.json", client.get(f"/session/{sid}").json())

    r2 = client.post(f"/session/{sid}/contest", json={"edit": {"kind": "set_base_score", "arg_id": "E3", "base_score": 0.9}})
    r2.raise_for_status()
    dump("contest_e3.json", r2.json())
    dump("session_after_e3.json", client.get(f"/session/{sid}").json())
    print("after both edits claim =", r2.json()["after"]["strengths"]["claim"], "flipped =", r2.json()["flipped"])

    # Identity edit on a fresh session: same payload back, no flip.
    fresh = client.post("/session", json={"qbaf": BASE_GRAPH}).json()
    ident = client.post(
        f"/session/{fresh['session_id']}/contest",
        json={"edit": {"kind": "set_base_score", "arg_id": "claim", "base_score": 0.5}},
    )
    ident.raise_for_status()
    dump("contest_identity.json", ident.json())
    dump("session_after_identity.json", client.get(f"/session/{fresh['session_id']}").json())

    # Polarity contestation: neutralising the attack on the claim flips
    # the verdict back and removes the edge from the served graph.
    contested = client.post("/session", json={"qbaf": CONTESTED_GRAPH}).json()
    neutral = client.post(
        f"/session/{contested['session_id']}/contest",
        json={"edit": {"kind": "set_polarity", "src": "E3", "dst": "claim", "polarity": "neutral"}},
    )
    neutral.raise_for_status()
    dump("session_contested.json", contested)
    dump("contest_neutral.json", neutral.json())
    dump("session_after_neutral.json", client.get(f"/session/{contested['session_id']}").json())
    print("after neutralising claim =", neutral.json()["after"]["strengths"]["claim"], "flipped =", neutral.json()["flipped"])

    # Error bodies the UI has to surface.
    missing = client.get("/session/s999")
    dump("error_unknown_session.json", {"status": missing.status_code, "body": missing.json()})
    bad = client.post(f"/session/{sid}/contest", json={"edit": {"kind": "set_base_score", "arg_id": "E1", "base_score": 1.5}})
    dump("error_bad_edit.json", {"status": bad.status_code, "body": bad.json()})


if __name__ == "__main__":
    main()
