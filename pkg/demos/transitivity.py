"""Medication: causes do not chain, and do not survive weakening the effect."""

from actualcause import is_actual_cause, parse_event_formula
from actualcause.cli import render_verdict
from actualcause.corpus import load_example

entry = load_example("medication")
m, u = entry.model, entry.context

alive = parse_event_formula("BMC=0 | BMC=1 | BMC=2")
queries = [
    ({"MT": 1}, parse_event_formula("TT=0")),
    ({"TT": 0}, alive),
    ({"MT": 1}, alive),
    ({"MT": 1}, parse_event_formula("BMC=0")),
]
for cand, phi in queries:
    print(render_verdict(is_actual_cause(m, u, cand, phi)))
    print()

# MT=1 -> TT=0 and TT=0 -> alive, yet not MT=1 -> alive.
# MT=1 -> BMC=0, yet not MT=1 -> (BMC=0 or BMC=1 or BMC=2).
