"""Command-line entry point.

Subcommands cover single-claim verification, batch evaluation, the axiom
property suites, explanation and contestation of stored graphs, trajectory
export, and the HTTP API server. Every subcommand exits 0 on success and
nonzero with a one-line error JSON on stderr otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .annotate import HttpCompletionClient, MockCompletionClient
from .axioms import PropertyKind, run_property_suite, suite_summary
from .errors import ArgufactError, InvalidParams, SchemaError
from .explain import contest, edit_from_dict, explain_argument
from .pipeline import PipelineConfig, verify
from .qbaf import QBAF, decode
from .retrieval import ingest_corpus, ingest_precomputed
from .semantics import SolverParams, solve, trajectory_csv

API_KEY_ENV = "ARGUFACT_API_KEY"


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--semantics", choices=["qe", "dfquad", "euler"], default="qe",
                   help="gradual semantics (default: qe)")
    p.add_argument("--step", type=float, default=0.1, help="RK4 step size (default: 0.1)")
    p.add_argument("--epsilon", type=float, default=0.001,
                   help="convergence threshold on d(strength)/dt (default: 0.001)")
    p.add_argument("--max-time", type=float, default=100.0,
                   help="integration horizon (default: 100)")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau", type=float, default=0.5,
                   help="acceptance threshold on the claim strength (default: 0.5)")
    p.add_argument("--top-k", type=int, default=5, help="documents to retrieve (default: 5)")
    p.add_argument("--relations", choices=["full", "claim-only"], default="full",
                   help="claim-only skips evidence-evidence relations (default: full)")
    p.add_argument("--base-init", choices=["uniform", "retriever"], default="uniform",
                   help="evidence base scores: uniform 0.5 or normalized retriever score")


def _add_annotator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--annotator", choices=["mock", "http"], default="mock",
                   help="completion client backend (default: mock)")
    p.add_argument("--fixtures", help="JSONL fixture file for the mock annotator")
    p.add_argument("--endpoint", help="base URL for the http annotator")
    p.add_argument("--model", help="model id for the http annotator")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; its values override flags")
    p.add_argument("--seed", type=int, default=0,
                   help="base seed for randomized suites (default: 0)")


def _apply_config(args: argparse.Namespace) -> None:
    # Config file wins over flags: it is the reproducible record of a run.
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"config file {path!r} must contain a JSON object")
    for key, value in doc.items():
        attr = key.replace("-", "_")
        if attr in ("config", "func"):
            raise SchemaError(f"config key {key!r} is not allowed")
        if not hasattr(args, attr):
            raise SchemaError(f"config key {key!r} does not match any flag of this subcommand")
        setattr(args, attr, value)


def _solver_params(args: argparse.Namespace) -> SolverParams:
    return SolverParams(step=args.step, epsilon=args.epsilon, max_time=args.max_time)


def _pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    relations = args.relations.replace("-", "_")
    base_init = "retriever_score" if args.base_init == "retriever" else args.base_init
    return PipelineConfig(
        top_k=args.top_k,
        tau=args.tau,
        relations_mode=relations,
        base_init=base_init,
        semantics=args.semantics,
        solver=_solver_params(args),
    )


def _make_client(args: argparse.Namespace):
    if args.annotator == "mock":
        if not args.fixtures:
            raise InvalidParams("--annotator mock requires --fixtures")
        return MockCompletionClient.from_jsonl(args.fixtures)
    if not args.endpoint or not args.model:
        raise InvalidParams("--annotator http requires --endpoint and --model")
    return HttpCompletionClient(args.endpoint, args.model, api_key=os.environ.get(API_KEY_ENV))


def _load_qbaf(path: str) -> QBAF:
    with open(path, encoding="utf-8") as fh:
        return decode(fh.read())


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_verify(args: argparse.Namespace) -> int:
    if not args.corpus:
        raise InvalidParams("verify requires --corpus")
    index = ingest_corpus(args.corpus)
    retrieval = None
    if args.retrieval:
        if not args.claim_id:
            raise InvalidParams("--retrieval requires --claim-id to select the ranking")
        table = ingest_precomputed(args.retrieval)
        if args.claim_id not in table:
            raise InvalidParams(f"no precomputed retrieval for claim id {args.claim_id!r}")
        retrieval = table[args.claim_id]
    record = verify(
        args.claim,
        index,
        _pipeline_config(args),
        _make_client(args),
        retrieval=retrieval,
        claim_id=args.claim_id,
    )
    _emit(record.to_dict())
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    from .evaluate import run_eval

    index = ingest_corpus(args.corpus)
    retrievals = ingest_precomputed(args.retrieval) if args.retrieval else None
    summary = run_eval(
        args.claims,
        index,
        args.out,
        _pipeline_config(args),
        _make_client(args),
        retrievals=retrievals,
        jobs=args.jobs,
    )
    _emit(summary.to_dict())
    return 0


def _cmd_axioms(args: argparse.Namespace) -> int:
    if args.kinds:
        try:
            kinds = [PropertyKind(k.strip()) for k in args.kinds.split(",") if k.strip()]
        except ValueError as exc:
            raise InvalidParams(str(exc)) from exc
    else:
        kinds = None
    reports = run_property_suite(
        kinds=kinds,
        count=args.count,
        semantics=args.semantics,
        params=_solver_params(args),
        tolerance=args.tolerance,
        seed=args.seed,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for kind_reports in reports.values():
                for report in kind_reports:
                    fh.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")
    _emit(suite_summary(reports))
    return 0


def _cmd_explain(args: argparse.Namespace) -> int:
    qbaf = _load_qbaf(args.qbaf)
    result = solve(qbaf, args.semantics, _solver_params(args))
    explanation = explain_argument(qbaf, result, args.arg, snippet_len=args.snippet_len)
    _emit(explanation.to_dict())
    return 0


def _cmd_contest(args: argparse.Namespace) -> int:
    qbaf = _load_qbaf(args.qbaf)
    edits = []
    for raw in args.edit:
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"--edit is not valid JSON: {exc}") from exc
        edits.append(edit_from_dict(doc))
    report = contest(
        qbaf,
        edits if len(edits) > 1 else edits[0],
        semantics=args.semantics,
        params=_solver_params(args),
        tau=args.tau,
    )
    _emit(report.to_dict())
    return 0


def _cmd_export_trajectory(args: argparse.Namespace) -> int:
    qbaf = _load_qbaf(args.qbaf)
    result = solve(qbaf, args.semantics, _solver_params(args))
    csv_text = trajectory_csv(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    index = ingest_corpus(args.corpus) if args.corpus else None
    client = _make_client(args) if (index is not None or args.annotator == "http") else None
    static_dir = args.static_dir
    if static_dir is None and os.path.isdir("frontend/dist"):
        static_dir = "frontend/dist"
    app = create_app(
        index=index,
        client=client,
        config=_pipeline_config(args),
        snapshot_path=args.snapshot,
        static_dir=static_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argufact",
        description="Deterministic fact verification over quantitative bipolar argumentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a single claim against a corpus")
    p.add_argument("claim", help="claim text")
    p.add_argument("--corpus", required=True, help="corpus JSONL file")
    p.add_argument("--retrieval", help="precomputed retrieval JSONL file")
    p.add_argument("--claim-id", help="claim id for record output and precomputed retrieval")
    _add_solver_flags(p)
    _add_pipeline_flags(p)
    _add_annotator_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", help="batch-verify a claims file and write records + summary")
    p.add_argument("--claims", required=True, help="claims JSONL file")
    p.add_argument("--corpus", required=True, help="corpus JSONL file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--retrieval", help="precomputed retrieval JSONL file")
    p.add_argument("--jobs", type=int, default=1, help="parallel claim workers (default: 1)")
    _add_solver_flags(p)
    _add_pipeline_flags(p)
    _add_annotator_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("axioms", help="run the seeded property suites")
    p.add_argument("--count", type=int, default=1000, help="instances per property (default: 1000)")
    p.add_argument("--kinds", help="comma-separated property kinds (default: all)")
    p.add_argument("--tolerance", type=float, default=1e-4,
                   help="numeric tolerance for conclusions (default: 1e-4)")
    p.add_argument("--out", help="write one report JSON per instance to this JSONL file")
    _add_solver_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("explain", help="explain an argument of a stored graph")
    p.add_argument("--qbaf", required=True, help="graph JSON file")
    p.add_argument("--arg", required=True, help="argument id to explain")
    p.add_argument("--snippet-len", type=int, default=80,
                   help="max snippet length in the rendered text (default: 80)")
    _add_solver_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_explain)

    p = sub.add_parser("contest", help="apply edits to a stored graph and report the outcome")
    p.add_argument("--qbaf", required=True, help="graph JSON file")
    p.add_argument("--edit", action="append", required=True,
                   help="edit as a JSON object; repeat for a sequence")
    p.add_argument("--tau", type=float, default=0.5,
                   help="acceptance threshold on the claim strength (default: 0.5)")
    _add_solver_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_contest)

    p = sub.add_parser("export-trajectory", help="solve a stored graph and export the trajectory CSV")
    p.add_argument("--qbaf", required=True, help="graph JSON file")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    _add_solver_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_export_trajectory)

    p = sub.add_parser("serve", help="run the HTTP API (and UI, when built)")
    p.add_argument("--host", default="127.0.0.1", help="bind address (default: 127.0.0.1)")
    p.add_argument("--port", type=int, default=8000, help="port (default: 8000)")
    p.add_argument("--corpus", help="corpus JSONL file enabling POST /verify")
    p.add_argument("--snapshot", help="JSON file for session snapshot persistence")
    p.add_argument("--static-dir", help="static files directory (default: frontend/dist if present)")
    _add_solver_flags(p)
    _add_pipeline_flags(p)
    _add_annotator_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except ArgufactError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "IOError", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
