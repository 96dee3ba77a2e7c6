"""Why AC2(b) quantifies over subsets of Z: the vote-counting machine."""

from actualcause import CauseOptions, active_processes, is_actual_cause, parse_event_formula, solve
from actualcause.corpus import load_example

passes = parse_event_formula("P=1")
entry = load_example("voting_machine")
m, u = entry.model, entry.context
print("actual world:", solve(m, u))

for var in ("V1", "V2"):
    v = is_actual_cause(m, u, {var: 1}, passes)
    print(f"{var}=1 cause of P=1? {v.is_cause}; witness {v.witness.describe()}")
    print("  active processes:", active_processes(m, u, {var: 1}, passes))

# Insisting that every variable of Z keeps its actual value is too strong:
# with V2 forced to 0 the machine counts M=1, not the actual M=2.
strict = CauseOptions(strict_ac2b=True)
for var in ("V1", "V2"):
    v = is_actual_cause(m, u, {var: 1}, passes, strict)
    print(f"strict variant: {var}=1 cause? {v.is_cause}")
