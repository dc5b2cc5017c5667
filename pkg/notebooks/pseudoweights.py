"""
Pseudocodewords from random covers
==================================

Lift the Fano graph to random 2- and 3-covers, collect the codewords of
each lift and project them back to fractional pseudocodewords.  Their
symmetric-channel weights never drop below the tree bound.
"""

# %%
from collections import Counter

from treeldpc.construct import type2_l3
from treeldpc.pseudo import (
    CoverSpec,
    lift,
    prefers,
    psc_weight,
    sample_cover_pseudoweights,
    tree_bound,
    weight_defining_received,
)

G = type2_l3(2, 1)
print("tree bound:", tree_bound(3, G.girth()))

# %%
cover = CoverSpec.random(G, 3, 0)
L = lift(cover)
print("lift:", L.n_var, "variables, connected:", L.is_connected(), "girth:", L.girth())

# %%
for m in (2, 3):
    items = sample_cover_pseudoweights(G, 2, m, trials=200, seed=m)
    print(f"m={m}: {len(items)} distinct pseudocodewords, weights {sorted(Counter(w for _, w in items).items())}")

# %%
# a genuinely fractional one
F = next(F for F, _ in items if not F.is_codeword_matrix())
print(F.dumps())
print("weight", psc_weight(F))

# %%
# the received word that defines the weight sits no closer to 0 than to F
r = weight_defining_received(F)
print("received", r.tolist(), "prefers F:", prefers(r, F))
