"""Seeded generators of small random models, contexts and event formulas."""

import itertools
import random

from ..formula import And, Event, Not, Or
from ..model import CausalModel, Equation, Signature


def random_model(rng, max_vars=4, max_domain=3, max_exo_domain=2, name="random"):
    """A random valid recursive model.

    Endogenous variables are declared in shuffled order so that declaration
    order and causal order differ.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    n = rng.randint(1, max_vars)
    causal = [f"V{i}" for i in range(n)]
    domains = {"U": tuple(f"u{i}" for i in range(rng.randint(1, max_exo_domain)))}
    for v in causal:
        domains[v] = tuple(str(i) for i in range(rng.randint(2, max_domain)))
    eqs = {}
    for i, v in enumerate(causal):
        pool = causal[:i] + ["U"]
        pars = [p for p in pool if rng.random() < 0.6]
        rows = []
        for combo in itertools.product(*(domains[p] for p in pars)):
            rows.append((combo, rng.choice(domains[v])))
        eqs[v] = Equation(v, tuple(pars), table=tuple(rows))
    declared = causal[:]
    rng.shuffle(declared)
    sig = Signature(("U",), tuple(declared), {"U": domains["U"], **{v: domains[v] for v in declared}})
    return CausalModel(sig, tuple(eqs[v] for v in declared), name)


def random_context(rng, model):
    return {u: rng.choice(model.domain(u)) for u in model.exogenous}


def random_event_formula(rng, model, depth=2):
    """Random boolean combination of primitive events over ``model``."""
    if depth <= 0 or rng.random() < 0.4:
        v = rng.choice(model.endogenous)
        return Event(v, rng.choice(model.domain(v)))
    kind = rng.choice(("not", "and", "or"))
    if kind == "not":
        return Not(random_event_formula(rng, model, depth - 1))
    args = tuple(random_event_formula(rng, model, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(args) if kind == "and" else Or(args)
