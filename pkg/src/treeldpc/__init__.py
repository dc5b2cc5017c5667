"""LDPC codes from tree-structured graphs and finite geometries.

Modules
-------
gf        finite fields GF(p^s) and the Latin-square family over them
tanner    Tanner graphs: girth, diameter, alist I/O
construct Type I-A, I-B, Type II (three and four layers) and EG constructions
linalg    linear algebra over GF(p) and minimum distance
pseudo    tree bound, graph covers, pseudocodewords and their PSC weight
channel   BIAWGN and p-ary symmetric channels with per-frame seeding
decode    min-sum and sum-product decoders
sim       Monte-Carlo error-rate simulation
"""

from .construct import ConstructionSpec, build, eg2, type1a, type1b, type2_l3, type2_l4, witness_codeword
from .gf import FiniteField, field_new
from .linalg import DistanceResult, dimension, min_distance, rank
from .pseudo import Pseudocodeword, psc_weight, tree_bound
from .tanner import StructureError, TannerGraph

__version__ = "0.1.0"
