"""Regenerate the test fixture files in this directory.

The mock response file must match the exact prompts the pipeline builds,
so responses are derived by running retrieval and rendering the real
prompt templates. Rerunning the script reproduces every file byte for
byte.

    python3 tests/fixtures/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from argufact.annotate import classification_prompt, pairs_prompt, prompt_digest
from argufact.pipeline import fallback_prompt
from argufact.qbaf import Argument, Kind, build_qbaf, encode
from argufact.retrieval import CorpusIndex, Document, retrieve

HERE = Path(__file__).parent
TOP_K = 5

DOCS = [
    ("d01", "The Meridian Point lighthouse was completed in 1889 on the basalt cliffs of Cape Halloran."),
    ("d02", "Keeper logs at Cape Halloran record continuous operation of the Meridian Point lighthouse since 1889."),
    ("d03", "A 1923 storm destroyed the lantern room of the Meridian Point lighthouse; it was rebuilt a year later."),
    ("d04", "Aerial surveys show the Varda glacier retreated nearly two kilometres between 1980 and 2010."),
    ("d05", "Monitoring has recorded the Varda glacier losing mass in every decade since measurements began in 1962."),
    ("d06", "A 2015 report claimed the Varda glacier had stabilised, but follow-up surveys found continued retreat."),
    ("d07", "The Corvid Bridge spans 480 metres across the Ellery river gorge."),
    ("d08", "Engineering records list the Corvid Bridge main span at 480 metres, the longest in the region when it opened."),
    ("d09", "Early proposals for the Ellery crossing suggested a 300 metre span; the Corvid Bridge as built is far longer."),
    ("d10", "Composer Ilse Brandt finished her fourth symphony in 1911, two years before its premiere."),
    ("d11", "Concert archives date the premiere of Brandt's fourth symphony to 1913 in the philharmonic hall."),
    ("d12", "Some early biographies state, incorrectly, that Brandt completed the fourth symphony in 1915."),
    ("d13", "The silver ridge moth feeds exclusively on lichen found above the treeline."),
    ("d14", "Field studies confirmed silver ridge moth larvae reject every host plant except treeline lichen."),
    ("d15", "A hypothesis that silver ridge moths feed on pine needles was rejected after controlled feeding trials."),
    ("d16", "The Quarry Hill observatory recorded first light of its refractor telescope in 1874."),
    ("d17", "Restoration work at the Quarry Hill observatory preserved the original 1874 refractor."),
    ("d18", "An 1890 fire damaged the Quarry Hill observatory dome but spared the telescope itself."),
]

# claim id, text, gold label, doc labels (default irrelevant), evidence pairs
CLAIMS = [
    ("c01", "The Meridian Point lighthouse was completed in 1889.", "true",
     {"d01": "support", "d02": "support", "d03": "irrelevant"}, []),
    ("c02", "The Meridian Point lighthouse was completed in 1901.", "false",
     {"d01": "contradict", "d02": "contradict"}, []),
    ("c03", "The lantern room of the Meridian Point lighthouse was destroyed by a storm.", "true",
     {"d03": "support", "d01": "irrelevant", "d02": "irrelevant"}, []),
    ("c04", "The Varda glacier has continued to retreat.", "true",
     {"d04": "support", "d05": "support", "d06": "support"},
     [("d04", "d06", "support")]),
    ("c05", "The Varda glacier stabilised after 2015.", "false",
     {"d04": "contradict", "d05": "contradict", "d06": "contradict"},
     [("d04", "d05", "support")]),
    ("c06", "The Varda glacier gained mass during the 1990s.", "false",
     {"d05": "contradict", "d04": "contradict"}, []),
    ("c07", "The Corvid Bridge spans 480 metres.", "true",
     {"d07": "support", "d08": "support", "d09": "support"}, []),
    ("c08", "The Corvid Bridge spans 300 metres.", "false",
     {"d07": "contradict", "d08": "contradict", "d09": "contradict"}, []),
    ("c09", "The Corvid Bridge was the longest span in its region when it opened.", "true",
     {"d08": "support", "d07": "irrelevant"}, []),
    ("c10", "Ilse Brandt completed her fourth symphony in 1911.", "true",
     {"d10": "support", "d11": "support", "d12": "contradict"},
     [("d10", "d12", "contradict"), ("d10", "d11", "support")]),
    ("c11", "Ilse Brandt completed her fourth symphony in 1915.", "false",
     {"d10": "contradict", "d11": "contradict", "d12": "support"},
     [("d10", "d12", "contradict")]),
    ("c12", "Brandt's fourth symphony premiered in 1913.", "true",
     {"d11": "support", "d10": "support"}, []),
    ("c13", "The silver ridge moth feeds only on treeline lichen.", "true",
     {"d13": "support", "d14": "support", "d15": "support"}, []),
    ("c14", "The silver ridge moth feeds mainly on pine needles.", "false",
     {"d13": "contradict", "d14": "contradict", "d15": "contradict"}, []),
    ("c15", "Silver ridge moth larvae accept several host plants.", "false",
     {"d14": "contradict", "d13": "contradict"}, []),
    ("c16", "The Quarry Hill observatory telescope saw first light in 1874.", "true",
     {"d16": "support", "d17": "support", "d18": "irrelevant"}, []),
    ("c17", "The Quarry Hill observatory telescope was destroyed by fire in 1890.", "false",
     {"d18": "contradict", "d16": "irrelevant", "d17": "irrelevant"}, []),
    ("c18", "The Quarry Hill observatory refractor survives today.", "true",
     {"d17": "support", "d18": "support"}, []),
    # off-corpus claims: every retrieved document is irrelevant, fallback answers
    ("c19", "Amber beads conduct electricity better than copper wire.", "false", {}, []),
    ("c20", "Mercury is the closest planet to the sun.", "true", {}, []),
]

FALLBACK_ANSWERS = {"c19": "false", "c20": "true"}


def main() -> None:
    with open(HERE / "corpus.jsonl", "w", encoding="utf-8") as fh:
        for doc_id, text in DOCS:
            fh.write(json.dumps({"doc_id": doc_id, "text": text}) + "\n")

    with open(HERE / "claims.jsonl", "w", encoding="utf-8") as fh:
        for claim_id, text, label, _, _ in CLAIMS:
            fh.write(json.dumps({"claim_id": claim_id, "claim": text, "label": label}) + "\n")

    index = CorpusIndex([Document(doc_id, text) for doc_id, text in DOCS])
    texts = dict(DOCS)
    rows = []

    def add(prompt: str, response: str) -> None:
        rows.append({"prompt_sha256": prompt_digest(prompt), "response": response})

    for claim_id, claim, _, doc_labels, pairs in CLAIMS:
        ranking = retrieve(index, claim, TOP_K)
        ordered = [(doc_id, texts[doc_id]) for doc_id in ranking.doc_ids()]
        alias = {doc_id: f"E{i + 1}" for i, (doc_id, _) in enumerate(ordered)}
        buckets = {"support": [], "contradict": [], "irrelevant": []}
        for doc_id, _ in ordered:
            buckets[doc_labels.get(doc_id, "irrelevant")].append(alias[doc_id])
        add(classification_prompt(claim, ordered), json.dumps(buckets))

        relevant = [(doc_id, text) for doc_id, text in ordered
                    if doc_labels.get(doc_id, "irrelevant") != "irrelevant"]
        if len(relevant) >= 2:
            rel_alias = {doc_id: f"E{i + 1}" for i, (doc_id, _) in enumerate(relevant)}
            pair_buckets = {"support": [], "contradict": []}
            for left, right, kind in pairs:
                if left in rel_alias and right in rel_alias:
                    pair_buckets[kind].append([rel_alias[left], rel_alias[right]])
            add(pairs_prompt(claim, relevant), json.dumps(pair_buckets))
        if not relevant:
            add(fallback_prompt(claim), FALLBACK_ANSWERS[claim_id])

    with open(HERE / "mock_responses.jsonl", "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")

    contest_demo = build_qbaf(
        [
            Argument("claim", text="demo claim", kind=Kind.CLAIM, base_score=0.5),
            Argument("E1", base_score=0.1),
            Argument("E2", base_score=0.5),
            Argument("E3", base_score=0.9),
        ],
        attacks=[("E3", "claim"), ("E3", "E1")],
        supports=[("E1", "claim"), ("E2", "claim"), ("E2", "E1")],
    )
    (HERE / "qbaf_contest_demo.json").write_text(encode(contest_demo) + "\n", encoding="utf-8")

    cycle_demo = build_qbaf(
        [Argument("a", base_score=0.9), Argument("b", base_score=0.9)],
        attacks=[("a", "b"), ("b", "a")],
        supports=[],
    )
    (HERE / "qbaf_cycle_demo.json").write_text(encode(cycle_demo) + "\n", encoding="utf-8")

    print(f"wrote {len(DOCS)} docs, {len(CLAIMS)} claims, {len(rows)} mock responses")


if __name__ == "__main__":
    main()
