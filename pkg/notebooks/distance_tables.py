"""
Dimensions and minimum distances
================================

Rebuild the parameter tables for each family: length, dimension, girth,
tree bound and minimum distance.  The larger rows take a few seconds.
"""

# %%
from treeldpc.cli import analyze_report
from treeldpc.construct import ConstructionSpec

COLUMNS = ("n", "k", "girth", "diameter", "tree", "d_min", "d_min_method")


def table(specs, p_of=lambda spec: 2, cap=2**24):
    print(f"{'code':>20} " + " ".join(f"{c:>12}" for c in COLUMNS))
    for spec in specs:
        G = spec.build()
        rep = analyze_report(spec, G, p_of(spec), cap)
        print(f"{spec.describe():>20} " + " ".join(f"{str(rep.get(c, '')):>12}" for c in COLUMNS))


# %%
# one layer added per step: girth 6, 8, 10, 12
table([ConstructionSpec("type1a", ell=ell) for ell in (3, 4, 5, 6)])

# %%
table([ConstructionSpec("type1b", p=p, s=s) for p, s in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3)]])

# %%
# the GF(8) plane needs a larger search budget for an exact answer
table([ConstructionSpec("type2l3", p=p, s=s) for p, s in [(2, 1), (2, 2), (3, 1), (2, 3)]], cap=2**28)

# %%
# read over GF(p) instead of GF(2), the odd-characteristic codes grow much larger
table([ConstructionSpec("type2l3", p=3), ConstructionSpec("type1b", p=3)], p_of=lambda spec: spec.natural_p)

# %%
table([ConstructionSpec("type2l4", p=p, s=s) for p, s in [(2, 1), (3, 1), (2, 2)]])
