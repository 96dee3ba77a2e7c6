"""Suzy and Billy throw rocks at a bottle; Suzy's rock gets there first."""

from actualcause import (
    active_processes,
    check_ac2_witness,
    is_actual_cause,
    make_witness,
    parse_event_formula,
)
from actualcause.corpus import load_example

shatters = parse_event_formula("BS=1")

# The naive model cannot tell the throws apart.
coarse = load_example("rock_throw_coarse")
for var in ("ST", "BT"):
    v = is_actual_cause(coarse.model, coarse.context, {var: 1}, shatters)
    print(f"coarse model: {var}=1 cause? {v.is_cause}")

# Adding who hit the bottle breaks the symmetry.
refined = load_example("rock_throw_refined")
m, u = refined.model, refined.context
suzy = is_actual_cause(m, u, {"ST": 1}, shatters)
billy = is_actual_cause(m, u, {"BT": 1}, shatters)
print("refined model: ST=1 cause?", suzy.is_cause, "via", suzy.witness.describe())
print("refined model: BT=1 cause?", billy.is_cause, "failed at", billy.failed_clause)

# Stopping Suzy would make Billy's throw matter, but only because BH changes.
wit = make_witness(m, u, {"BT": 1}, {"ST": 0}, {"BT": 0})
res = check_ac2_witness(m, u, {"BT": 1}, shatters, wit)
print("symmetric attempt:", res)
print("active process of Suzy's throw:", active_processes(m, u, {"ST": 1}, shatters))
