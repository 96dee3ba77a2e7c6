"""The railroad switch: model choice decides whether flipping it is a cause."""

from actualcause import active_processes, is_actual_cause, parse_event_formula, to_dot
from actualcause.corpus import load_example

arrives = parse_event_formula("A=1")

three = load_example("switch_3var")
v = is_actual_cause(three.model, three.context, {"F": 1}, arrives)
print("3-variable model: F=1 cause of A=1?", v.is_cause)

tracks = load_example("switch_lt_rt")
m, u = tracks.model, tracks.context
v = is_actual_cause(m, u, {"F": 1}, arrives)
print("LT/RT model: F=1 cause of A=1?", v.is_cause)
print("  witness:", v.witness.describe(), f"({v.witness_class})")
print("  active processes:", active_processes(m, u, {"F": 1}, arrives))
print()
print(to_dot(m))
