import random

import pytest

from actualcause.corpus import EXAMPLE_NAMES, load_example
from actualcause.corpus.random_models import random_context, random_model

SEED = 20240601


@pytest.fixture
def m1():
    return load_example("forest_fire_disjunctive")


@pytest.fixture
def m2():
    return load_example("forest_fire_conjunctive")


@pytest.fixture
def refined():
    return load_example("rock_throw_refined")


@pytest.fixture
def medication():
    return load_example("medication")


@pytest.fixture(params=EXAMPLE_NAMES)
def entry(request):
    return load_example(request.param)


def random_instances(n, seed=SEED, max_vars=4, max_domain=3):
    """``n`` (model, context) pairs from a fixed seed."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        model = random_model(rng, max_vars=max_vars, max_domain=max_domain, name=f"random{i}")
        out.append((model, random_context(rng, model), rng))
    return out


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
