"""Two arsonists and a forest: disjunctive and conjunctive fires."""

from actualcause import enumerate_causes, is_actual_cause, parse_event_formula, solve
from actualcause.cli import render_verdict
from actualcause.corpus import load_example

fire = parse_event_formula("FB=1")

for name in ("forest_fire_disjunctive", "forest_fire_conjunctive"):
    entry = load_example(name)
    m, u = entry.model, entry.context
    print(f"== {name}")
    print("actual world:", solve(m, u))

    # each match on its own
    for var in ("ML1", "ML2"):
        v = is_actual_cause(m, u, {var: 1}, fire)
        print(f"{var}=1 cause of FB=1? {v.is_cause}  ({v.witness.describe()})")

    # both matches together are not minimal
    both = is_actual_cause(m, u, {"ML1": 1, "ML2": 1}, fire)
    print(render_verdict(both))

    causes = enumerate_causes(m, u, fire, verify_singleton=True)
    print("all causes:", [c for c, _ in causes])
    print()
