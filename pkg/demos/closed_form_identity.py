"""One family closed form checked against the general machinery.

For three flagged points in rank 2 the answer depends on which chamber the
weight gaps fall in.  Inner chamber: one polynomial for every degree.
Outer chamber: the family form holds at even degree and the inner form
takes over at odd degree.
"""

from parbetti import Instance, compute, make_data
from parbetti.rank2 import family_formula, profile_from_instance, rank2_case

INNER = (("0", "1/2"), ("0", "1/3"), ("0", "1/4"))
OUTER = (("0", "3/4"), ("0", "1/4"), ("0", "1/5"))

genus = 2

for label, weights in (("inner", INNER), ("outer", OUTER)):
    data = make_data([((1, 1), w) for w in weights])
    inst = Instance(genus, 0, data)
    profile = profile_from_instance(inst)
    tag = rank2_case(profile.deltas)
    form = family_formula(tag, genus).to_laurent_poly()
    direct = compute(inst, "closed").poly
    print(f"{label} chamber, case tag {tag}")
    print(f"  family form == engine at degree 0: {form == direct}")
    odd = compute(Instance(genus, 1, data), "closed").poly
    print(f"  degree 1 equals degree 0: {odd == direct}")
    if odd != direct:
        other = family_formula("three_points_inner", genus).to_laurent_poly()
        print(f"  degree 1 equals the inner form instead: {odd == other}")
    print()
