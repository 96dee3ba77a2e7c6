import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from actualcause import (
    And,
    Basic,
    Event,
    Not,
    Or,
    ParseError,
    SignatureError,
    eval_event,
    intervene,
    parse_candidate,
    parse_causal_formula,
    parse_event_formula,
    satisfies,
    solve,
    to_text,
)
from actualcause.corpus import EXAMPLE_NAMES, load_example
from actualcause.corpus.random_models import random_event_formula

from .conftest import SEED

VARS = st.sampled_from(["A", "B", "FB", "ML_1", "x9"])
VALUES = st.sampled_from(["0", "1", "2", "u11", "s00"])

events_st = st.builds(Event, VARS, VALUES)
phi_st = st.recursive(
    events_st,
    lambda kids: st.one_of(
        st.builds(Not, kids),
        st.builds(And, st.lists(kids, min_size=2, max_size=3).map(tuple)),
        st.builds(Or, st.lists(kids, min_size=2, max_size=3).map(tuple)),
    ),
    max_leaves=8,
)
interventions_st = st.dictionaries(VARS, VALUES, max_size=3).map(lambda d: tuple(d.items()))
basic_st = st.builds(Basic, interventions_st, phi_st)
psi_st = st.recursive(
    basic_st,
    lambda kids: st.one_of(
        st.builds(Not, kids),
        st.builds(And, st.lists(kids, min_size=2, max_size=3).map(tuple)),
        st.builds(Or, st.lists(kids, min_size=2, max_size=3).map(tuple)),
    ),
    max_leaves=5,
)


class TestParse:
    def test_fire_in_may_or_june(self):
        assert parse_event_formula("F=1 | F=2") == Or((Event("F", "1"), Event("F", "2")))

    def test_negation(self):
        assert parse_event_formula("!(FB=1)") == Not(Event("FB", "1"))

    def test_alive_is_three_leaf_disjunction(self):
        phi = parse_event_formula("BMC=0 | BMC=1 | BMC=2")
        assert isinstance(phi, Or)
        assert [e.value for e in phi.args] == ["0", "1", "2"]

    def test_precedence(self):
        phi = parse_event_formula("!A=1 & B=1 | C=1")
        assert phi == Or((And((Not(Event("A", "1")), Event("B", "1"))), Event("C", "1")))

    def test_parentheses_keep_grouping(self):
        phi = parse_event_formula("(A=1 | B=1) | C=1")
        assert phi == Or((Or((Event("A", "1"), Event("B", "1"))), Event("C", "1")))

    def test_basic_formula(self):
        psi = parse_causal_formula("[ML2<-0](FB=1)")
        assert psi == Basic((("ML2", "0"),), Event("FB", "1"))

    def test_empty_intervention(self):
        assert parse_causal_formula("[](FB=1)") == Basic((), Event("FB", "1"))

    def test_conjunction_of_basics(self):
        psi = parse_causal_formula("[V2<-0](P=1) & [V1<-0,V2<-0](!(P=1))")
        assert isinstance(psi, And)
        assert psi.args[1].assignment == {"V1": "0", "V2": "0"}

    def test_source_positions(self):
        phi = parse_event_formula("A=1 |\n  B=2")
        assert phi.args[1].pos == (2, 3)

    @pytest.mark.parametrize(
        "text, line, column",
        [("F=1 |", 1, 6), ("F=", 1, 3), ("(F=1", 1, 5), ("F=1 F=2", 1, 5), ("A=1 &\n%", 2, 1)],
    )
    def test_syntax_errors(self, text, line, column):
        with pytest.raises(ParseError) as exc:
            parse_event_formula(text)
        assert (exc.value.line, exc.value.column) == (line, column)

    @pytest.mark.parametrize("text", ["FB=1", "[A<-1,A<-0](FB=1)", "[A<-1]FB=1", "[A=1](FB=1)"])
    def test_causal_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_causal_formula(text)

    def test_candidate(self):
        assert parse_candidate("ML1=1 & ML2=1") == {"ML1": "1", "ML2": "1"}
        with pytest.raises(ParseError):
            parse_candidate("ML1=1 | ML2=1")
        with pytest.raises(ParseError):
            parse_candidate("ML1=1 & ML1=0")


@given(phi_st)
def test_event_round_trip(phi):
    assert parse_event_formula(to_text(phi)) == phi


@given(psi_st)
def test_causal_round_trip(psi):
    assert parse_causal_formula(to_text(psi)) == psi


def test_corpus_formulas_round_trip():
    for name in EXAMPLE_NAMES:
        for exp in load_example(name).expected:
            assert parse_event_formula(to_text(exp.query.phi)) == exp.query.phi


class TestEval:
    def test_leaf(self):
        assert eval_event({"FB": "1"}, parse_event_formula("FB=1"))

    def test_disjunct(self):
        assert eval_event({"F": "2"}, parse_event_formula("F=1 | F=2"))

    def test_dead_is_not_alive(self):
        assert not eval_event({"BMC": "3"}, parse_event_formula("BMC=0|BMC=1|BMC=2"))

    def test_missing_variable(self):
        with pytest.raises(SignatureError):
            eval_event({"A": "1"}, parse_event_formula("B=1"))


class TestSatisfies:
    def test_disjunctive_fire_without_second_arsonist(self, m1):
        assert satisfies(m1.model, m1.context, parse_causal_formula("[ML2<-0](FB=1)"))

    def test_conjunctive_fire_dies_down(self, m2):
        assert not satisfies(m2.model, m2.context, parse_causal_formula("[ML2<-0](FB=1)"))

    @pytest.mark.parametrize("name", ["voting_simple", "voting_machine"])
    def test_voting_conjunction(self, name):
        # frozen from the oracle's fixpoint solver: both conjuncts hold
        entry = load_example(name)
        psi = parse_causal_formula("[V2<-0](P=1) & [V1<-0,V2<-0](!(P=1))")
        assert satisfies(entry.model, entry.context, psi) is True

    def test_tautology(self, entry):
        v = entry.model.endogenous[0]
        x = entry.model.domain(v)[0]
        psi = parse_causal_formula(f"[]({v}={x}) | !([]({v}={x}))")
        assert satisfies(entry.model, entry.context, psi)

    @pytest.mark.parametrize(
        "text", ["[](U=u11)", "[](FB=7)", "[](Q=1)", "[U<-u00](FB=1)", "[FB<-9](FB=1)"]
    )
    def test_signature_mismatch(self, m1, text):
        with pytest.raises(SignatureError):
            satisfies(m1.model, m1.context, parse_causal_formula(text))


def _random_basic(rng, model):
    iv = {}
    for v in model.endogenous:
        if rng.random() < 0.3:
            iv[v] = rng.choice(model.domain(v))
    return Basic(tuple(iv.items()), random_event_formula(rng, model))


def test_satisfaction_is_classical():
    rng = random.Random(SEED)
    for name in EXAMPLE_NAMES:
        entry = load_example(name)
        m, u = entry.model, entry.context
        for _ in range(15):
            a, b = _random_basic(rng, m), _random_basic(rng, m)
            sa, sb = satisfies(m, u, a), satisfies(m, u, b)
            assert satisfies(m, u, And((a, b))) == (sa and sb)
            assert satisfies(m, u, Or((a, b))) == (sa or sb)
            assert satisfies(m, u, Not(a)) == (not sa)


def test_empty_bracket_coherence_and_composition():
    rng = random.Random(SEED + 1)
    for name in EXAMPLE_NAMES:
        entry = load_example(name)
        m, u = entry.model, entry.context
        for _ in range(15):
            basic = _random_basic(rng, m)
            phi = basic.body
            assert satisfies(m, u, Basic((), phi)) == eval_event(solve(m, u), phi)
            assert satisfies(m, u, basic) == satisfies(intervene(m, basic.assignment), u, Basic((), phi))


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_random_formula_text_survives(seed):
    rng = random.Random(seed)
    entry = load_example(EXAMPLE_NAMES[seed % len(EXAMPLE_NAMES)])
    phi = random_event_formula(rng, entry.model, depth=3)
    assert parse_event_formula(to_text(phi)) == phi
