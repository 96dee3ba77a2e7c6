"""Structural causal models, counterfactual formulas and actual causes."""

from .cause import (
    CONTINGENT,
    FREEZING,
    AC2Check,
    CauseOptions,
    Verdict,
    Witness,
    active_processes,
    check_ac1,
    check_ac2_witness,
    classify_witness,
    enumerate_causes,
    find_witness,
    is_actual_cause,
    is_cause_at_rank,
    make_witness,
)
from .errors import (
    CausalError,
    InvalidModelError,
    ModelError,
    OracleRefusal,
    ParseError,
    RankingError,
    SearchLimitExceeded,
    SignatureError,
    SingletonViolation,
    WitnessError,
)
from .formula import (
    And,
    Basic,
    Event,
    Not,
    Or,
    eval_event,
    parse_candidate,
    parse_causal_formula,
    parse_event_formula,
    satisfies,
    to_text,
)
from .model import (
    CausalModel,
    Equation,
    Signature,
    causal_network,
    intervene,
    lint_model,
    parents,
    solve,
    to_dot,
    validate_model,
)
from .modelfile import format_model, load_model, parse_model
from .ranking import INF, RankingFunction, load_ranking, parse_ranking

__version__ = "0.1.0"
