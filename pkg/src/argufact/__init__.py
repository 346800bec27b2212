"""argufact: deterministic fact verification over argumentation graphs."""

from ._kernels import BACKEND
from .annotate import (
    CompletionClient,
    HttpCompletionClient,
    Label,
    MockCompletionClient,
    RelationAnnotation,
    classify_claim_relations,
    extract_evidence_pairs,
    merge_annotations,
    prompt_digest,
)
from .axioms import (
    PropertyInstance,
    PropertyKind,
    PropertyReport,
    check_property,
    generate_random_qbaf,
    make_instance,
    run_property_suite,
    suite_summary,
    verify_premise,
)
from .errors import (
    AnnotationError,
    AnnotationMismatch,
    ArgufactError,
    ClientError,
    DanglingEdge,
    DisjointnessViolation,
    DuplicateDocId,
    DuplicateId,
    EmptyCorpus,
    InvalidParams,
    MalformedResponse,
    MissingFixture,
    NonConvergence,
    PremiseViolation,
    RangeViolation,
    SchemaError,
    UnknownId,
    ValidationError,
)
from .evaluate import EvalClaim, EvalSummary, load_claims, run_eval, strength_histogram
from .explain import (
    ContestReport,
    Edit,
    Explanation,
    SetBaseScore,
    SetPolarity,
    apply_edit,
    claim_verdict,
    contest,
    edit_from_dict,
    explain_argument,
)
from .pipeline import (
    BaseInit,
    DecidedBy,
    PipelineConfig,
    RelationsMode,
    Verdict,
    VerdictLabel,
    VerificationRecord,
    build_qbaf_from_annotations,
    fallback_prompt,
    fallback_verdict,
    verify,
)
from .qbaf import QBAF, Argument, Kind, build_qbaf, decode, encode, from_dict, remove_argument, to_dict
from .retrieval import (
    CorpusIndex,
    Document,
    RankedDoc,
    RetrievalResult,
    ingest_corpus,
    ingest_precomputed,
    retrieve,
)
from .semantics import (
    Semantics,
    SolveResult,
    SolverParams,
    dfquad_target,
    energy,
    euler_target,
    qe_target,
    solve,
    trajectory_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationError",
    "AnnotationMismatch",
    "ArgufactError",
    "Argument",
    "BACKEND",
    "BaseInit",
    "ClientError",
    "CompletionClient",
    "ContestReport",
    "CorpusIndex",
    "DanglingEdge",
    "DecidedBy",
    "DisjointnessViolation",
    "Document",
    "DuplicateDocId",
    "DuplicateId",
    "Edit",
    "EmptyCorpus",
    "EvalClaim",
    "EvalSummary",
    "Explanation",
    "HttpCompletionClient",
    "InvalidParams",
    "Kind",
    "Label",
    "MalformedResponse",
    "MissingFixture",
    "MockCompletionClient",
    "NonConvergence",
    "PipelineConfig",
    "PremiseViolation",
    "PropertyInstance",
    "PropertyKind",
    "PropertyReport",
    "QBAF",
    "RangeViolation",
    "RankedDoc",
    "RelationAnnotation",
    "RelationsMode",
    "RetrievalResult",
    "SchemaError",
    "Semantics",
    "SetBaseScore",
    "SetPolarity",
    "SolveResult",
    "SolverParams",
    "UnknownId",
    "ValidationError",
    "Verdict",
    "VerdictLabel",
    "VerificationRecord",
    "apply_edit",
    "build_qbaf",
    "build_qbaf_from_annotations",
    "check_property",
    "claim_verdict",
    "classify_claim_relations",
    "contest",
    "decode",
    "dfquad_target",
    "edit_from_dict",
    "encode",
    "energy",
    "euler_target",
    "explain_argument",
    "extract_evidence_pairs",
    "fallback_prompt",
    "fallback_verdict",
    "from_dict",
    "generate_random_qbaf",
    "ingest_corpus",
    "ingest_precomputed",
    "load_claims",
    "make_instance",
    "merge_annotations",
    "prompt_digest",
    "qe_target",
    "remove_argument",
    "retrieve",
    "run_eval",
    "run_property_suite",
    "solve",
    "strength_histogram",
    "suite_summary",
    "to_dict",
    "trajectory_csv",
    "verify",
    "verify_premise",
    "__version__",
]
