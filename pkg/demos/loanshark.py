"""Larry the loanshark: ranking functions rule out far-fetched contingencies."""

import math

from actualcause import is_actual_cause, is_cause_at_rank, parse_event_formula
from actualcause.corpus import load_example
from actualcause.ranking import format_ranking

finger = parse_event_formula("FF=1")

basic = load_example("finger_basic")
print("basic model: FS=1 cause of FF=1?", is_actual_cause(basic.model, basic.context, {"FS": 1}, finger).is_cause)

shark = load_example("finger_loanshark")
m, u, ranking = shark.model, shark.context, shark.ranking
v = is_actual_cause(m, u, {"FS": 1}, finger)
print("with Larry: FS=1 cause of FF=1?", v.is_cause, "via", v.witness.describe())
print("ranking:")
print(format_ranking(ranking), end="")

# the contingency needs Larry to lie in wait (LL=1), a rank-5 world
for k in (0, 1, 4, 5, 6, math.inf):
    v = is_cause_at_rank(m, u, ranking, k, {"FS": 1}, finger)
    print(f"  at rank {k}: {v.is_cause}")
