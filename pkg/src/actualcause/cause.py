"""Actual causes: decision, witnesses, enumeration, ranks.

``X=x`` is an actual cause of ``phi`` in ``(M, u)`` when

* AC1: both ``X=x`` and ``phi`` hold in the actual world;
* AC2: some partition ``(Z, W)`` of the endogenous variables with
  ``X`` in ``Z``, and settings ``x'`` of ``X`` and ``w'`` of ``W``, satisfy

  (a) ``[X<-x', W<-w'] !phi``, and
  (b) ``[X<-x, W<-w', Z'<-z*] phi`` for every ``Z'`` in ``Z - X``,
      ``z*`` being the actual values;
* AC3: no strict subset of the conjuncts satisfies AC1 and AC2.

The witness search is exhaustive and deterministic: ``W`` by size and then
in declaration order, ``w'`` with the actual setting first and the rest in
domain order, ``x'`` in domain order. Subsets ``Z'`` are tried by size and
then declaration order.
"""

import itertools
import math
from dataclasses import dataclass, field

from .errors import SearchLimitExceeded, SignatureError, SingletonViolation, WitnessError
from .formula import check_event_formula, eval_event, events
from .model import token

__all__ = [
    "FREEZING",
    "CONTINGENT",
    "DEFAULT_GUARD",
    "Witness",
    "AC2Check",
    "SearchStats",
    "CauseOptions",
    "Verdict",
    "make_witness",
    "check_ac1",
    "check_ac2_witness",
    "find_witness",
    "is_actual_cause",
    "enumerate_causes",
    "active_processes",
    "classify_witness",
    "is_cause_at_rank",
    "search_space_size",
]

FREEZING = "freezing"
CONTINGENT = "contingent"
DEFAULT_GUARD = 2**24
_UNSET = object()


def _fmt(assignment):
    return "{" + ", ".join(f"{k}={v}" for k, v in assignment.items()) + "}"


def _fmt_set(variables):
    return "{" + ", ".join(variables) + "}"


@dataclass(frozen=True)
class Witness:
    """A structural contingency certifying AC2.

    ``z_star`` holds the actual values of ``Z = V - W`` (candidate included).
    """

    w_set: tuple
    w_prime: dict
    x_prime: dict
    z_star: dict

    @property
    def z_set(self):
        return tuple(self.z_star)

    def to_dict(self):
        return {
            "W": list(self.w_set),
            "w_prime": dict(self.w_prime),
            "x_prime": dict(self.x_prime),
            "z_star": dict(self.z_star),
        }

    def describe(self):
        return (
            f"W = {_fmt_set(self.w_set)}, w' = {_fmt(self.w_prime)}, "
            f"x' = {_fmt(self.x_prime)}, z* = {_fmt(self.z_star)}"
        )


@dataclass(frozen=True)
class AC2Check:
    a_holds: bool
    b_holds: bool
    b_failing_subset: tuple = None


@dataclass
class SearchStats:
    triples_examined: int = 0
    subsets_checked: int = 0

    def to_dict(self):
        return {"triples_examined": self.triples_examined, "subsets_checked": self.subsets_checked}


@dataclass(frozen=True)
class CauseOptions:
    """Knobs for the cause queries.

    ``strict_ac2b`` replaces the subset form of AC2(b) by the requirement
    that every variable of ``Z`` keeps its actual value under
    ``[X<-x, W<-w']``. It exists to show why the subset form is needed and
    is not part of the definition.
    """

    forbid_trivial: bool = False
    witness_all: bool = False
    guard: int = DEFAULT_GUARD
    strict_ac2b: bool = False


@dataclass(frozen=True)
class Verdict:
    candidate: dict
    phi: object
    is_cause: bool
    failed_clause: str = None  # None, "AC1", "trivial", "AC2" or "AC3"
    witness: Witness = None
    witness_class: str = None
    all_witnesses: tuple = None
    contributory_only: bool = None
    stats: SearchStats = field(default_factory=SearchStats)
    # closest rejected AC2 attempt: (witness passing AC2(a), first failing Z')
    rejected: tuple = None
    ac3_subset: dict = None
    rank_limit: object = None

    def to_dict(self):
        out = {
            "is_cause": self.is_cause,
            "failed_clause": self.failed_clause,
            "witness": self.witness.to_dict() if self.witness else None,
            "witness_class": self.witness_class,
            "search_stats": self.stats.to_dict(),
        }
        if self.contributory_only is not None:
            out["contributory_only"] = self.contributory_only
        if self.all_witnesses is not None:
            out["all_witnesses"] = [w.to_dict() for w in self.all_witnesses]
        return out


class _Query:
    """Shared state of one query: the actual world and a memo of solutions."""

    def __init__(self, model, context, phi, candidate=None, options=None, ranking=None, k=None,
                 rank_world="contingency"):
        model.check()
        self.model = model
        self.V = model.endogenous
        self.order = {v: i for i, v in enumerate(self.V)}
        self.context = model.check_context(context)
        if phi is not None:
            check_event_formula(model, phi)
        self.phi = phi
        self.options = options or CauseOptions()
        self.actual = model.evaluate(self.context)
        self.memo = {}
        self.stats = SearchStats()
        if ranking is not None:
            ranking.check(model)
            if rank_world not in ("contingency", "with_x_prime"):
                raise ValueError("rank_world must be 'contingency' or 'with_x_prime'")
        self.ranking = ranking
        self.k = k
        self.rank_world = rank_world
        self.candidate = None
        if candidate is not None:
            self.candidate = self.check_candidate(candidate)

    def check_candidate(self, candidate):
        cand = self.model.check_assignment(candidate, "cause")
        if not cand:
            raise SignatureError("a cause needs at least one conjunct")
        return {v: cand[v] for v in sorted(cand, key=self.order.get)}

    def world(self, fixed):
        key = frozenset(fixed.items())
        w = self.memo.get(key)
        if w is None:
            w = self.memo[key] = self.model.evaluate(self.context, fixed)
        return w

    def holds(self, fixed):
        return eval_event(self.world(fixed), self.phi)

    def ac1(self, cand):
        return all(self.actual[v] == x for v, x in cand.items()) and eval_event(self.actual, self.phi)

    def consistent_with_not_phi(self, cand):
        # is X=x & !phi satisfiable over the signature?
        free = sorted({e.var for e in events(self.phi)} - set(cand), key=self.order.get)
        doms = [self.model.domain(v) for v in free]
        for combo in itertools.product(*doms):
            world = dict(cand)
            world.update(zip(free, combo))
            if not eval_event(world, self.phi):
                return True
        return False

    def guard(self, cand):
        size = search_space_size(self.model, cand)
        if size > self.options.guard:
            raise SearchLimitExceeded(size, self.options.guard)

    def rank_ok(self, w_prime, x_prime):
        if self.ranking is None or self.k == math.inf:
            return True
        fixed = dict(w_prime)
        if self.rank_world == "with_x_prime":
            fixed.update(x_prime)
        return self.ranking.rank(self.world(fixed), self.actual) <= self.k

    def w_settings(self, W):
        actual = tuple(self.actual[v] for v in W)
        yield actual
        for combo in itertools.product(*(self.model.domain(v) for v in W)):
            if combo != actual:
                yield combo

    def ac2b(self, cand, w_prime, rest):
        """First violating Z' (a tuple) or None when AC2(b) holds."""
        base = {**cand, **w_prime}
        if self.options.strict_ac2b:
            self.stats.subsets_checked += 1
            world = self.world(base)
            moved = tuple(z for z in rest if world[z] != self.actual[z])
            if moved or not eval_event(world, self.phi):
                return moved
            return None
        for size in range(len(rest) + 1):
            for sub in itertools.combinations(rest, size):
                self.stats.subsets_checked += 1
                fixed = dict(base)
                for z in sub:
                    fixed[z] = self.actual[z]
                if not self.holds(fixed):
                    return sub
        return None

    def witnesses(self, cand, freezing_only=False, diag=None):
        """Generate every AC2 witness for ``cand`` in search order.

        ``diag`` (a list) receives the first attempt that passes AC2(a)
        but fails AC2(b), with its violating subset.
        """
        X = tuple(cand)
        others = [v for v in self.V if v not in cand]
        x_settings = list(itertools.product(*(self.model.domain(v) for v in X)))
        for size in range(len(others) + 1):
            for W in itertools.combinations(others, size):
                rest = [v for v in self.V if v not in cand and v not in W]
                settings = [tuple(self.actual[v] for v in W)] if freezing_only else self.w_settings(W)
                for w_vals in settings:
                    w_prime = dict(zip(W, w_vals))
                    b_result = _UNSET
                    for x_vals in x_settings:
                        x_prime = dict(zip(X, x_vals))
                        self.stats.triples_examined += 1
                        if not self.rank_ok(w_prime, x_prime):
                            continue
                        if self.holds({**x_prime, **w_prime}):
                            continue
                        if b_result is _UNSET:
                            b_result = self.ac2b(cand, w_prime, rest)
                        wit = self.make(cand, W, w_prime, x_prime)
                        if b_result is None:
                            yield wit
                        elif diag is not None and not diag:
                            diag.append((wit, b_result))

    def make(self, cand, W, w_prime, x_prime):
        z_star = {v: self.actual[v] for v in self.V if v not in W}
        return Witness(tuple(W), dict(w_prime), dict(x_prime), z_star)

    def first_witness(self, cand, diag=None):
        return next(self.witnesses(cand, diag=diag), None)

    def verdict(self, cand):
        opts = self.options
        base = dict(candidate=cand, phi=self.phi, stats=self.stats, rank_limit=self.k)
        if not self.ac1(cand):
            return Verdict(is_cause=False, failed_clause="AC1", **base)
        if opts.forbid_trivial and not self.consistent_with_not_phi(cand):
            return Verdict(is_cause=False, failed_clause="trivial", **base)
        self.guard(cand)
        diag = []
        if opts.witness_all:
            found = tuple(self.witnesses(cand, diag=diag))
            witness = found[0] if found else None
        else:
            found = None
            witness = self.first_witness(cand, diag=diag)
        if witness is None:
            return Verdict(is_cause=False, failed_clause="AC2", rejected=diag[0] if diag else None, **base)
        wclass = self.classify(witness)
        for size in range(1, len(cand)):
            for sub in itertools.combinations(cand, size):
                subcand = {v: cand[v] for v in sub}
                if self.first_witness(subcand) is not None:
                    return Verdict(
                        is_cause=False, failed_clause="AC3", witness=witness, witness_class=wclass,
                        all_witnesses=found, ac3_subset=subcand, **base,
                    )
        if found is not None:
            contributory = all(self.classify(w) == CONTINGENT for w in found)
        else:
            contributory = next(self.witnesses(cand, freezing_only=True), None) is None
        return Verdict(
            is_cause=True, witness=witness, witness_class=wclass, all_witnesses=found,
            contributory_only=contributory, **base,
        )

    def classify(self, witness):
        return FREEZING if all(self.actual[v] == x for v, x in witness.w_prime.items()) else CONTINGENT


def search_space_size(model, candidate):
    """Number of (W, w', x') triples the witness search may examine."""
    size = 1
    for v in model.endogenous:
        n = len(model.domain(v))
        size *= n if v in candidate else n + 1
    return size


def make_witness(model, context, candidate, w_prime, x_prime):
    """Build a Witness, filling in ``z_star`` from the actual world."""
    q = _Query(model, context, None)
    cand = q.check_candidate(candidate)
    w_prime = model.check_assignment(w_prime, "contingency")
    x_prime = model.check_assignment(x_prime, "x'")
    W = tuple(sorted(w_prime, key=q.order.get))
    wit = q.make(cand, W, {v: w_prime[v] for v in W}, {v: x_prime[v] for v in cand if v in x_prime})
    _check_witness(q, cand, wit)
    return wit


def _check_witness(q, cand, witness):
    W = set(witness.w_set)
    if W & set(cand):
        raise WitnessError("W must be disjoint from the cause variables")
    if set(witness.w_prime) != W:
        raise WitnessError("w' must assign exactly the variables of W")
    if set(witness.x_prime) != set(cand):
        raise WitnessError("x' must assign exactly the cause variables")
    if set(witness.z_star) != set(q.V) - W:
        raise WitnessError("z* must cover exactly V - W")
    for v, x in witness.z_star.items():
        if q.actual[v] != x:
            raise WitnessError(f"z* gives {v}={x} but the actual value is {q.actual[v]}")
    try:
        q.model.check_assignment(witness.w_prime, "w'")
        q.model.check_assignment(witness.x_prime, "x'")
    except SignatureError as e:
        raise WitnessError(str(e)) from None


def check_ac1(model, context, candidate, phi):
    q = _Query(model, context, phi)
    return q.ac1(q.check_candidate(candidate))


def check_ac2_witness(model, context, candidate, phi, witness, options=None):
    """Check AC2(a) and AC2(b) for one given witness."""
    q = _Query(model, context, phi, options=options)
    cand = q.check_candidate(candidate)
    _check_witness(q, cand, witness)
    a = not q.holds({**witness.x_prime, **witness.w_prime})
    rest = [v for v in q.V if v not in cand and v not in witness.w_set]
    failing = q.ac2b(cand, dict(witness.w_prime), rest)
    return AC2Check(a_holds=a, b_holds=failing is None, b_failing_subset=failing)


def find_witness(model, context, candidate, phi, options=None):
    """First witness in search order that passes AC2(a) and AC2(b), or None."""
    q = _Query(model, context, phi, options=options)
    cand = q.check_candidate(candidate)
    q.guard(cand)
    return q.first_witness(cand)


def is_actual_cause(model, context, candidate, phi, options=None):
    """Decide whether ``candidate`` is an actual cause of ``phi``; returns a Verdict."""
    q = _Query(model, context, phi, candidate, options)
    return q.verdict(q.candidate)


def is_cause_at_rank(model, context, ranking, k, candidate, phi, options=None, rank_world="contingency"):
    """Actual causality where every admitted contingency lives in a world of rank <= k.

    The contingency's world is the solution under ``W <- w'`` alone; pass
    ``rank_world="with_x_prime"`` to also impose ``x'``.
    """
    if k != math.inf and (not isinstance(k, int) or k < 0):
        raise ValueError(f"rank limit must be a natural number or inf, got {k!r}")
    q = _Query(model, context, phi, candidate, options, ranking=ranking, k=k, rank_world=rank_world)
    return q.verdict(q.candidate)


def classify_witness(model, context, witness):
    """'freezing' when w' equals the actual values of W, else 'contingent'."""
    model.check()
    actual = model.evaluate(model.check_context(context))
    return FREEZING if all(actual[v] == token(x) for v, x in witness.w_prime.items()) else CONTINGENT


def active_processes(model, context, candidate, phi, options=None):
    """All inclusion-minimal Z (containing the cause) that carry some AC2 witness."""
    q = _Query(model, context, phi, options=options)
    cand = q.check_candidate(candidate)
    q.guard(cand)
    zs = []
    seen_w = set()
    for wit in q.witnesses(cand):
        if wit.w_set in seen_w:
            continue
        seen_w.add(wit.w_set)
        zs.append(wit.z_set)
    minimal = [z for z in zs if not any(set(o) < set(z) for o in zs)]
    minimal.sort(key=lambda z: (len(z), [q.order[v] for v in z]))
    return [list(z) for z in minimal]


def enumerate_causes(model, context, phi, options=None, max_size=1, verify_singleton=False):
    """All actual causes of ``phi`` with at most ``max_size`` conjuncts.

    Returns ``(candidate, witness)`` pairs ordered by size and then by
    declaration order. ``verify_singleton`` sweeps every size up to ``|V|``
    and raises SingletonViolation if a cause with two or more conjuncts
    turns up.
    """
    q = _Query(model, context, phi, options=options)
    V = q.V
    if verify_singleton or max_size is None:
        max_size = len(V)
    if not eval_event(q.actual, phi):
        return []
    opts = q.options
    ac2_memo = {}

    def has_ac2(vars_):
        if vars_ not in ac2_memo:
            sub = {v: q.actual[v] for v in vars_}
            q.guard(sub)
            ac2_memo[vars_] = q.first_witness(sub)
        return ac2_memo[vars_]

    out = []
    for size in range(1, max_size + 1):
        for vars_ in itertools.combinations(V, size):
            cand = {v: q.actual[v] for v in vars_}
            if opts.forbid_trivial and not q.consistent_with_not_phi(cand):
                continue
            wit = has_ac2(vars_)
            if wit is None:
                continue
            if any(
                has_ac2(sub) is not None
                for s in range(1, size)
                for sub in itertools.combinations(vars_, s)
            ):
                continue
            out.append((cand, wit))
    if verify_singleton:
        big = [c for c, _ in out if len(c) >= 2]
        if big:
            raise SingletonViolation(big)
    return out
