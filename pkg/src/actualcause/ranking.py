"""Ranking functions (degrees of surprise) over worlds of a causal model.

A world is a complete setting of the endogenous variables. Ranks are
natural numbers or ``math.inf``. The function is given by rows that pair a
(possibly partial) assignment with a rank; a world's rank is the minimum
over the rows it agrees with, and ``inf`` when no row matches. The actual
world of the context always has rank 0.
"""

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import RankingError
from .model import parse_assignment, token

INF = math.inf


def parse_rank(text):
    text = str(text).strip()
    if text.lower() in ("inf", "infinity", "∞"):
        return INF
    try:
        k = int(text)
    except ValueError:
        raise RankingError(f"rank must be a natural number or 'inf', got {text!r}") from None
    if k < 0:
        raise RankingError(f"rank must be non-negative, got {k}")
    return k


@dataclass(frozen=True)
class RankingFunction:
    rows: tuple = ()

    def __post_init__(self):
        rows = []
        for assignment, rank in self.rows:
            if isinstance(rank, str):
                rank = parse_rank(rank)
            elif rank != INF and (not isinstance(rank, int) or isinstance(rank, bool) or rank < 0):
                raise RankingError(f"rank must be a natural number or inf, got {rank!r}")
            rows.append((tuple((v, token(x)) for v, x in dict(assignment).items()), rank))
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def from_pairs(cls, pairs):
        return cls(tuple(pairs))

    def check(self, model):
        """Raise RankingError if a row mentions a variable or value outside ``model``."""
        sig = model.signature
        for assignment, _ in self.rows:
            for var, val in assignment:
                if not sig.is_endogenous(var):
                    raise RankingError(f"ranking row mentions non-endogenous variable {var}")
                if val not in sig.domain(var):
                    raise RankingError(f"ranking row value {var}={val} not in domain")

    def rank(self, world, actual=None):
        """Rank of a single world; ``actual`` (the context's world) is forced to 0."""
        if actual is not None and all(world[v] == actual[v] for v in actual):
            return 0
        best = INF
        for assignment, r in self.rows:
            if r < best and all(world.get(v) == x for v, x in assignment):
                best = r
        return best

    def rank_of_set(self, worlds, actual=None):
        """Minimum rank over ``worlds``; the empty set has rank inf."""
        return min((self.rank(w, actual) for w in worlds), default=INF)


def parse_ranking(text, source=None):
    """Parse ``assignment TAB rank`` rows; blank lines and '#' comments are skipped."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            where = f"{source}:" if source else ""
            raise RankingError(f"{where}{lineno}: expected 'assignment<TAB>rank'")
        try:
            assignment = parse_assignment(parts[0])
        except ValueError as e:
            raise RankingError(f"line {lineno}: {e}") from None
        pairs.append((assignment, parse_rank(parts[1])))
    return RankingFunction(tuple(pairs))


def load_ranking(path):
    path = Path(path)
    return parse_ranking(path.read_text(encoding="utf-8"), source=str(path))


def format_ranking(ranking):
    lines = []
    for assignment, r in ranking.rows:
        lines.append(",".join(f"{v}={x}" for v, x in assignment) + "\t" + ("inf" if r == INF else str(r)))
    return "\n".join(lines) + "\n"
