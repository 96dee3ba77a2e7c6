"""Built-in scenario corpus with expected verdicts.

Every entry is shipped as a model file (``data/<name>.scm``) and a sidecar
``data/<name>.verdicts.tsv`` with one ``query TAB expected TAB locus`` row
per line. Lines starting with ``#`` are comments, except the directives
``# context: VAR=val,...`` and ``# ranking: FILE``. A query reads
``cause X=x&Y=y of PHI`` with an optional trailing ``at rank K``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..cause import is_actual_cause, is_cause_at_rank
from ..formula import parse_candidate, parse_event_formula
from ..model import parse_assignment
from ..modelfile import parse_model
from ..ranking import parse_rank, parse_ranking

__all__ = [
    "EXAMPLE_NAMES",
    "CauseQuery",
    "ExpectedVerdict",
    "ExampleEntry",
    "VerdictRow",
    "list_examples",
    "load_example",
    "verdict_table",
    "parse_query",
    "run_query",
    "model_text",
]

EXAMPLE_NAMES = (
    "forest_fire_disjunctive",
    "forest_fire_conjunctive",
    "april_showers",
    "rock_throw_coarse",
    "rock_throw_threeval",
    "rock_throw_refined",
    "medication",
    "voting_simple",
    "voting_machine",
    "switch_3var",
    "switch_lt_rt",
    "finger_basic",
    "finger_loanshark",
)


@dataclass(frozen=True)
class CauseQuery:
    text: str
    candidate: dict
    phi: object
    rank: object = None  # None, a natural number or math.inf


@dataclass(frozen=True)
class ExpectedVerdict:
    query: CauseQuery
    verdict: bool
    locus: str


@dataclass(frozen=True)
class ExampleEntry:
    name: str
    model: object
    context: dict
    ranking: object
    expected: tuple


@dataclass(frozen=True)
class VerdictRow:
    example: str
    query: str
    expected: bool
    locus: str


def parse_query(text):
    """Parse ``cause X=x&... of PHI [at rank K]``."""
    body = text.strip()
    if not body.startswith("cause "):
        raise ValueError(f"query must start with 'cause': {text!r}")
    body = body[len("cause "):]
    cand_text, sep, rest = body.partition(" of ")
    if not sep:
        raise ValueError(f"query lacks ' of ': {text!r}")
    rank = None
    phi_text, sep, rank_text = rest.partition(" at rank ")
    if sep:
        rank = parse_rank(rank_text)
    return CauseQuery(text.strip(), parse_candidate(cand_text), parse_event_formula(phi_text), rank)


def _data(name):
    return resources.files(__package__).joinpath("data", name)


def model_text(name):
    """Raw text of the shipped model file for corpus entry ``name``."""
    _require(name)
    return _data(f"{name}.scm").read_text(encoding="utf-8")


def _require(name):
    if name not in EXAMPLE_NAMES:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(EXAMPLE_NAMES)}")


@lru_cache(maxsize=None)
def load_example(name):
    """Load, validate and return the corpus entry ``name``."""
    _require(name)
    model = parse_model(model_text(name), source=f"{name}.scm")
    model.check()
    context, ranking, expected = None, None, []
    text = _data(f"{name}.verdicts.tsv").read_text(encoding="utf-8")
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key, value = key.strip(), value.strip()
            if key == "context":
                context = model.check_context(parse_assignment(value))
            elif key == "ranking":
                ranking = parse_ranking(_data(value).read_text(encoding="utf-8"), source=value)
                ranking.check(model)
            continue
        query, verdict, locus = line.split("\t")
        if verdict not in ("true", "false"):
            raise ValueError(f"{name}: expected verdict must be true/false, got {verdict!r}")
        expected.append(ExpectedVerdict(parse_query(query), verdict == "true", locus))
    if context is None:
        raise ValueError(f"{name}: verdict file has no '# context:' directive")
    return ExampleEntry(name, model, context, ranking, tuple(expected))


def list_examples():
    return list(EXAMPLE_NAMES)


def verdict_table():
    """Every expected verdict of the corpus as ``VerdictRow`` records."""
    rows = []
    for name in EXAMPLE_NAMES:
        for exp in load_example(name).expected:
            rows.append(VerdictRow(name, exp.query.text, exp.verdict, exp.locus))
    return rows


def run_query(entry, query, options=None):
    """Answer ``query`` (text or CauseQuery) against a corpus entry; returns a Verdict."""
    if isinstance(query, str):
        query = parse_query(query)
    if query.rank is None:
        return is_actual_cause(entry.model, entry.context, query.candidate, query.phi, options)
    if entry.ranking is None:
        raise ValueError(f"{entry.name} has no ranking function for a rank query")
    k = query.rank if query.rank == math.inf else int(query.rank)
    return is_cause_at_rank(entry.model, entry.context, entry.ranking, k, query.candidate, query.phi, options)
