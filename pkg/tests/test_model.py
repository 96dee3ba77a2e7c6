import itertools

import networkx as nx
import pytest

from actualcause import (
    CausalModel,
    Equation,
    InvalidModelError,
    ModelError,
    SignatureError,
    causal_network,
    intervene,
    lint_model,
    parents,
    solve,
    to_dot,
    validate_model,
)
from actualcause.corpus import EXAMPLE_NAMES, load_example
from actualcause.model import parse_assignment
from actualcause.modelfile import format_model, parse_model

from .conftest import random_instances


def tabulated(model):
    """Same model with every expression body replaced by its full table."""
    eqs = []
    for eq in model.equations:
        if eq.expr is None:
            eqs.append(eq)
            continue
        doms = [model.domain(p) for p in eq.parents]
        rows = tuple(
            (combo, eq.evaluate(dict(zip(eq.parents, combo)), model.domain(eq.target)))
            for combo in itertools.product(*doms)
        )
        eqs.append(Equation(eq.target, eq.parents, table=rows))
    return CausalModel(model.signature, tuple(eqs), model.name)


def all_contexts(model):
    for combo in itertools.product(*(model.domain(u) for u in model.exogenous)):
        yield dict(zip(model.exogenous, combo))


class TestValidate:
    def test_forest_fire_is_valid(self, m1):
        assert validate_model(m1.model).ok

    def test_every_corpus_model_is_valid(self, entry):
        assert len(validate_model(entry.model)) == 0

    def test_two_cycle(self):
        m = CausalModel.build(
            "cyc",
            {"U": ["u"]},
            {"A": [0, 1], "B": [0, 1]},
            [Equation.from_expr("A", ["B"], "B"), Equation.from_expr("B", ["A"], "A")],
        )
        report = validate_model(m)
        cycles = [f for f in report if f.kind == "cycle"]
        assert len(cycles) == 1
        assert set(cycles[0].variables) == {"A", "B"}

    def test_deleted_table_row(self, m2):
        full = tabulated(m2.model)
        eqs = []
        for eq in full.equations:
            if eq.target == "FB":
                eq = Equation(eq.target, eq.parents, table=eq.table[:-1])
            eqs.append(eq)
        report = validate_model(CausalModel(full.signature, tuple(eqs), "m2-broken"))
        assert report.kinds() == ["partial-table"]
        assert report.findings[0].variables == ("FB",)

    def test_missing_and_duplicate_equations(self):
        m = CausalModel.build(
            "bad",
            {"U": ["u"]},
            {"A": [0, 1], "B": [0, 1]},
            [Equation.constant("A", 0), Equation.constant("A", 1), Equation.constant("U", "u")],
        )
        kinds = validate_model(m).kinds()
        assert "duplicate-equation" in kinds
        assert "missing-equation" in kinds
        assert "exogenous-equation" in kinds

    def test_out_of_domain_output(self):
        m = CausalModel.build("bad", {"U": ["u"]}, {"A": [0, 1]}, [Equation.constant("A", 7)])
        assert validate_model(m).kinds() == ["out-of-domain"]

    def test_expression_out_of_domain(self):
        m = CausalModel.build(
            "bad",
            {"U": ["u"]},
            {"A": [0, 1], "B": [0, 1]},
            [Equation.constant("A", 1), Equation.from_expr("B", ["A"], "A + 1")],
        )
        assert validate_model(m).kinds() == ["out-of-domain"]

    def test_signature_problems(self):
        m = CausalModel.build("bad", {"U": []}, {"A": [0, 0]}, [Equation.constant("A", 0)])
        kinds = validate_model(m).kinds()
        assert kinds.count("signature") == 2

    def test_unknown_parent(self):
        m = CausalModel.build("bad", {"U": ["u"]}, {"A": [0, 1]}, [Equation.from_expr("A", ["Q"], "1")])
        assert validate_model(m).kinds() == ["unknown-parent"]

    def test_boolean_into_non_binary_domain(self):
        m = CausalModel.build(
            "bad",
            {"U": ["u"]},
            {"A": [0, 1], "B": [0, 1, 2]},
            [Equation.constant("A", 1), Equation.from_expr("B", ["A"], "A == 1")],
        )
        assert validate_model(m).kinds() == ["out-of-domain"]

    def test_invalid_model_refuses_to_solve(self):
        m = CausalModel.build("bad", {"U": ["u"]}, {"A": [0, 1]}, [])
        with pytest.raises(InvalidModelError):
            solve(m, {"U": "u"})


def test_lint_flags_vacuous_parent():
    entry = load_example("finger_basic")
    warnings = lint_model(entry.model)
    assert [(w.kind, w.variables) for w in warnings] == [("vacuous-parent", ("FF", "FS"))]


def test_lint_quiet_on_honest_model(refined):
    assert lint_model(refined.model) == []


class TestParents:
    def test_forest_burns(self, m1):
        assert parents(m1.model, "FB") == ["U", "ML1", "ML2"]

    def test_billy_hits(self, refined):
        assert parents(refined.model, "BH") == ["BT", "SH"]

    def test_match_lit(self, m1):
        assert parents(m1.model, "ML1") == ["U"]

    @pytest.mark.parametrize("var", ["U", "nope"])
    def test_no_equation(self, m1, var):
        with pytest.raises(ModelError, match="no equation"):
            parents(m1.model, var)


class TestNetwork:
    def test_forest_fire_edges(self, m1):
        g = causal_network(m1.model)
        assert set(g.edges) == {("U", "ML1"), ("U", "ML2"), ("U", "FB"), ("ML1", "FB"), ("ML2", "FB")}
        assert g.nodes["U"]["kind"] == "exogenous"

    def test_single_variable(self):
        m = CausalModel.build("one", {"U": ["u"]}, {"A": [0]}, [Equation.constant("A", 0)])
        assert list(causal_network(m).edges) == []

    def test_medication_edges(self, medication):
        edges = set(causal_network(medication.model).edges)
        assert {("MT", "TT"), ("MT", "BMC"), ("TT", "BMC")} <= edges

    def test_endogenous_part_is_dag(self, entry):
        g = causal_network(entry.model)
        assert nx.is_directed_acyclic_graph(g.subgraph(entry.model.endogenous))

    def test_dot(self, m1):
        dot = to_dot(m1.model)
        assert '"U" [shape=box];' in dot
        assert dot.count("->") == 5


class TestInterveneSolve:
    def test_solve_forest_fire(self, m1):
        assert solve(m1.model, {"U": "u11"}) == {"ML1": "1", "ML2": "1", "FB": "1"}

    def test_conjunctive_without_second_match(self, m2):
        assert solve(intervene(m2.model, {"ML2": 0}), {"U": "u11"})["FB"] == "0"

    def test_no_matches_no_fire(self, m1):
        assert solve(intervene(m1.model, {"ML1": 0, "ML2": 0}), {"U": "u11"})["FB"] == "0"

    def test_refined_actual_world(self, refined):
        assert solve(refined.model, refined.context) == {"ST": "1", "BT": "1", "SH": "1", "BH": "0", "BS": "1"}

    def test_bottle_tracks_suzy_when_billy_is_stopped(self, refined):
        m = intervene(refined.model, {"BT": 0})
        for st in ("0", "1"):
            assert solve(intervene(m, {"ST": st}), refined.context)["BS"] == st

    def test_intervened_equation_is_constant(self, m1):
        m = intervene(m1.model, {"FB": 0})
        assert parents(m, "FB") == []
        assert validate_model(m).ok

    @pytest.mark.parametrize("iv", [{"U": "u00"}, {"FB": 5}, {"nope": 1}])
    def test_bad_interventions(self, m1, iv):
        with pytest.raises(SignatureError):
            intervene(m1.model, iv)

    @pytest.mark.parametrize("ctx", [{}, {"U": "u99"}, {"U": "u11", "FB": "1"}])
    def test_bad_contexts(self, m1, ctx):
        with pytest.raises(SignatureError):
            solve(m1.model, ctx)


def _models_and_contexts():
    for name in EXAMPLE_NAMES:
        model = load_example(name).model
        for ctx in all_contexts(model):
            yield model, ctx
    for model, ctx, _ in random_instances(60, seed=7):
        yield model, ctx


def test_uniqueness_under_every_topological_order():
    for model, ctx in _models_and_contexts():
        g = causal_network(model).subgraph(model.endogenous)
        reference = solve(model, ctx)
        for order in itertools.islice(nx.all_topological_sorts(g), 24):
            assert solve(model, ctx, order=order) == reference


def test_intervention_fixpoint():
    for model, ctx in _models_and_contexts():
        first = model.endogenous[0]
        for value in model.domain(first):
            iv = {first: value}
            world = solve(intervene(model, iv), ctx)
            values = {**ctx, **world}
            for v in model.endogenous:
                if v in iv:
                    assert world[v] == iv[v]
                else:
                    eq = model.equation(v)
                    assert world[v] == eq.evaluate(values, model.domain(v))


def test_empty_intervention_identity():
    for model, ctx in _models_and_contexts():
        assert solve(intervene(model, {}), ctx) == solve(model, ctx)


def test_interventions_compose_on_disjoint_variables():
    for model, ctx in _models_and_contexts():
        if len(model.endogenous) < 2:
            continue
        a_var, b_var = model.endogenous[0], model.endogenous[-1]
        a = {a_var: model.domain(a_var)[-1]}
        b = {b_var: model.domain(b_var)[0]}
        assert intervene(intervene(model, a), b) == intervene(model, {**a, **b})


def test_table_and_expression_bodies_agree():
    for name in EXAMPLE_NAMES:
        model = load_example(name).model
        tab = tabulated(model)
        for ctx in all_contexts(model):
            assert solve(tab, ctx) == solve(model, ctx)
            for v in model.endogenous:
                for val in model.domain(v):
                    assert solve(intervene(tab, {v: val}), ctx) == solve(intervene(model, {v: val}), ctx)


class TestModelFile:
    def test_round_trip(self, entry):
        assert parse_model(format_model(entry.model)) == entry.model

    def test_syntax_error_position(self):
        from actualcause import ParseError

        with pytest.raises(ParseError) as exc:
            parse_model('model "x"\nexo U in {u}\nvar A in {0, 1}\neq A(U) = U == \n')
        assert exc.value.line == 4

    def test_unknown_statement(self):
        from actualcause import ParseError

        with pytest.raises(ParseError, match="unknown statement"):
            parse_model("frobnicate X\n")

    def test_multiline_table_and_comments(self):
        m = parse_model(
            """
            model "t"   # trailing comment
            exo U in {a, b}
            var X in {0, 1}
            eq X(U) = table {
              (a) -> 0;   # row comment
              (b) -> 1
            }
            """
        )
        assert validate_model(m).ok
        assert solve(m, {"U": "b"}) == {"X": "1"}


def test_parse_assignment():
    assert parse_assignment("U=u11, V = 2") == {"U": "u11", "V": "2"}
    assert parse_assignment("") == {}
    with pytest.raises(ValueError):
        parse_assignment("U")
    with pytest.raises(ValueError):
        parse_assignment("U=1,U=2")
