"""
A tour of the tree-based constructions
======================================

Build one small instance of each family and look at its shape.
Run with ``python3 notebooks/construction_tour.py``.
"""

# %%
from treeldpc.construct import ConstructionSpec, eg2, type1a, type1b, type2_l3, type2_l4

graphs = {
    "type1a ell=4": type1a(4),
    "type1b GF(3)": type1b(3, 1),
    "type2l3 GF(4)": type2_l3(2, 2),
    "type2l4 GF(3)": type2_l4(3, 1),
    "eg2 GF(4)": eg2(2, 2),
}

# %%
# every graph is regular on both sides; girth grows with the number of layers
for name, G in graphs.items():
    vdeg, cdeg = G.degree_profile()
    print(f"{name:>14}: n={G.n_var:3d} checks={G.n_chk:3d} degrees={sorted(vdeg)} girth={G.girth()}")

# %%
# the three-layer graph over GF(2) is the Fano plane: any two points share one line
H = type2_l3(2, 1).to_matrix()
print(H)
print((H.T @ H))

# %%
# labels follow the tree: a root, its children and the layer below
G = type1b(3, 1)
for i, checks in enumerate(G.var_adj):
    print(G.var_labels[i], "->", [G.chk_labels[c] for c in checks])

# %%
# alist text is what other decoders read
print(ConstructionSpec("type2l4", p=2).build().to_alist()[:120])
