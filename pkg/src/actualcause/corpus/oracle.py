"""Brute-force reading of the actual-cause definition, used as a test oracle.

Deliberately naive and self-contained: it solves models by fixpoint
iteration rather than in topological order, evaluates formulas with its
own recursion, and checks AC2(b) over every subset of Z (including those
that meet X). It shares no code with the witness search in ``cause``.
"""

import itertools
import math

from ..errors import OracleRefusal
from ..formula import And, Event, Not, Or
from ..model import token

MAX_VARIABLES = 6
MAX_WORK = 5_000_000


def _truth(world, phi):
    if isinstance(phi, Event):
        return world[phi.var] == phi.value
    if isinstance(phi, Not):
        return not _truth(world, phi.arg)
    if isinstance(phi, And):
        return all(_truth(world, a) for a in phi.args)
    if isinstance(phi, Or):
        return any(_truth(world, a) for a in phi.args)
    raise TypeError(phi)


def _subsets(items):
    items = list(items)
    return itertools.chain.from_iterable(itertools.combinations(items, r) for r in range(len(items) + 1))


class _Oracle:
    def __init__(self, model, context):
        model.check()
        self.model = model
        self.V = list(model.endogenous)
        self.context = {u: token(context[u]) for u in model.exogenous}
        self.cache = {}
        self.actual = self.solve({})

    def solve(self, fixed):
        key = tuple(sorted(fixed.items()))
        if key in self.cache:
            return self.cache[key]
        m = self.model
        values = dict(self.context)
        for v in self.V:
            values[v] = fixed.get(v, m.domain(v)[0])
        # recursive equations reach their fixpoint within |V| + 1 sweeps
        for _ in range(len(self.V) + 1):
            changed = False
            for v in self.V:
                if v in fixed:
                    continue
                eq = m.equation(v)
                new = eq.evaluate({p: values[p] for p in eq.parents}, m.domain(v))
                if new != values[v]:
                    values[v] = new
                    changed = True
            if not changed:
                break
        else:
            raise OracleRefusal("fixpoint iteration did not converge")
        world = {v: values[v] for v in self.V}
        self.cache[key] = world
        return world

    def settings(self, variables):
        doms = [self.model.domain(v) for v in variables]
        for combo in itertools.product(*doms):
            yield dict(zip(variables, combo))

    def ac1(self, cand, phi):
        return all(self.actual[v] == x for v, x in cand.items()) and _truth(self.actual, phi)

    def triples(self, cand, phi, admit=None):
        """Every (W, w', x') satisfying AC2(a) and AC2(b), in no particular order."""
        X = list(cand)
        rest = [v for v in self.V if v not in cand]
        for W in _subsets(rest):
            Z = [v for v in self.V if v not in W]
            for x_prime in self.settings(X):
                for w_prime in self.settings(list(W)):
                    if admit is not None and not admit(w_prime, x_prime):
                        continue
                    if _truth(self.solve({**x_prime, **w_prime}), phi):
                        continue
                    ok = True
                    for Zp in _subsets(Z):
                        fixed = {**cand, **w_prime}
                        fixed.update({z: self.actual[z] for z in Zp})
                        if not _truth(self.solve(fixed), phi):
                            ok = False
                            break
                    if ok:
                        yield tuple(W), w_prime, x_prime

    def ac2(self, cand, phi, admit=None):
        return next(self.triples(cand, phi, admit), None) is not None

    def is_cause(self, cand, phi, admit=None):
        if not self.ac1(cand, phi):
            return False
        if not self.ac2(cand, phi, admit):
            return False
        X = list(cand)
        for r in range(1, len(X)):
            for sub in itertools.combinations(X, r):
                s = {v: cand[v] for v in sub}
                if self.ac1(s, phi) and self.ac2(s, phi, admit):
                    return False
        return True


def _refuse_if_large(model, cand_vars):
    n = len(model.endogenous)
    if n > MAX_VARIABLES:
        raise OracleRefusal(f"oracle handles at most {MAX_VARIABLES} endogenous variables, got {n}")
    work = 2**n
    for v in model.endogenous:
        d = len(model.domain(v))
        work *= d if v in cand_vars else d + 1
    if work > MAX_WORK:
        raise OracleRefusal(f"oracle work estimate {work} exceeds {MAX_WORK}")


def _admit(oracle, ranking, k):
    if ranking is None or k == math.inf:
        return None

    def admit(w_prime, x_prime):
        world = oracle.solve(dict(w_prime))
        if world == oracle.actual:
            return True
        best = math.inf
        for assignment, r in ranking.rows:
            if all(world[v] == x for v, x in assignment):
                best = min(best, r)
        return best <= k

    return admit


def brute_force_is_cause(model, context, candidate, phi, ranking=None, k=math.inf):
    """Literal check of AC1, AC2 and AC3 by exhaustive enumeration.

    With ``ranking`` and ``k`` only contingencies whose world (the solution
    under ``W <- w'``) has rank at most ``k`` are admitted.
    """
    cand = {v: token(x) for v, x in dict(candidate).items()}
    _refuse_if_large(model, cand)
    oracle = _Oracle(model, context)
    return oracle.is_cause(cand, phi, _admit(oracle, ranking, k))


def brute_force_witnesses(model, context, candidate, phi):
    """All ``(W, w', x')`` triples passing AC2, sorted for stable comparison."""
    cand = {v: token(x) for v, x in dict(candidate).items()}
    _refuse_if_large(model, cand)
    oracle = _Oracle(model, context)
    found = list(oracle.triples(cand, phi))
    return sorted(found, key=lambda t: (len(t[0]), t[0], sorted(t[1].items()), sorted(t[2].items())))


def brute_force_enumerate(model, context, phi, max_size=None):
    """Every actual cause of ``phi`` (any number of conjuncts unless ``max_size``)."""
    _refuse_if_large(model, ())
    oracle = _Oracle(model, context)
    V = oracle.V
    out = []
    for r in range(1, (max_size or len(V)) + 1):
        for sub in itertools.combinations(V, r):
            cand = {v: oracle.actual[v] for v in sub}
            if oracle.is_cause(cand, phi):
                out.append(cand)
    return out
