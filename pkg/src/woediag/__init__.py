"""Weight-of-evidence diagnostic engine.

Learns significant symptom groups from labeled case data, binarizes fuzzy
clinical measurements at an optimal alpha cut, and predicts a binary
hypothesis by adding weights of evidence to prior log odds, emitting an
auditable evidence ledger per case.
"""

from .baseline import (
    ColicLogisticInputs,
    LogisticModel,
    Metrics,
    evaluate,
    logistic_predictor,
    logistic_score,
)
from .data import (
    Attribute,
    Case,
    Dataset,
    Schema,
    complete_for,
    load_default_schema,
    parse_cases,
    parse_schema,
    render_cases,
    render_schema,
    schema_digest,
)
from .errors import (
    DegenerateEventError,
    DegenerateHypothesisError,
    ParseError,
    SchemaDigestError,
    SchemaValidationError,
    UndefinedWeightError,
    WoediagError,
)
from .evidence import (
    ContingencyTable,
    PriorOdds,
    WeightEstimate,
    combine,
    estimate_weight,
    is_significant,
    prior_log_odds,
    to_probability,
)
from .fuzzy import (
    AlphaChoice,
    FuzzyEvent,
    MembershipFunction,
    alpha_cut,
    default_alpha_grid,
    membership,
    optimal_alpha,
    yager_probability,
    zadeh_probability,
)
from .inference import (
    CaseEvidence,
    EvidenceReport,
    case_evidence,
    group_score,
    infer,
    kb_predictor,
    match_rules,
    render_report,
    select_disjoint,
)
from .mining import (
    KnowledgeBase,
    MinedRule,
    MiningConfig,
    binarize_symptoms,
    enumerate_candidates,
    load_kb,
    mine,
    save_kb,
)
from .symptoms import SymptomDescriptor, SymptomGroup, build_table, hypothesis_labels

__version__ = "0.1.0"
