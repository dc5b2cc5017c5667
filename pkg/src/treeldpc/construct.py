"""Tree-based LDPC constructions and the witness codewords of their proofs.

Every builder enumerates a tree from a root variable node, closes it with a
permutation- or Latin-square-based connection rule and returns a
:class:`~treeldpc.tanner.TannerGraph`.  Node indices follow a fixed layer
order, documented per family:

* Type I-A / I-B: variables are numbered root of T, the variable layers of T
  top-down, then the variable layers of the mirrored tree T' from its root
  down; checks likewise (T's check layers, then T''s).
* Type II: root, L1, L2, L3, L4 in that order on each side.
* Within a layer, nodes indexed by field elements follow the field's index
  order 0, 1, a, a^2, ...; a Type II class ``x`` comes before the classes
  indexed by field elements.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .gf import FiniteField, field_new, is_prime
from .tanner import StructureError, TannerGraph


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Permutation:
    """Bijection ``i -> map[i]`` on ``{0, ..., size-1}``."""

    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a bijection: {m}")
        object.__setattr__(self, "map", m)

    @property
    def size(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.size):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.map[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.map[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, size: int) -> Permutation:
    """Parse cycle notation such as ``"(0)(2)(1,3)"`` or ``"(0)(123)"``.

    Entries inside a cycle may be separated by commas or spaces; a cycle
    written without separators is read one digit per element when ``size``
    is at most 10 and as a single number otherwise.  Elements not mentioned
    are fixed points.
    """
    text = text.strip()
    leftover = _CYCLE_RE.sub("", text).strip()
    if leftover:
        raise ValueError(f"unparsable cycle notation: {text!r}")
    mapping = list(range(size))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        if "," in body or " " in body:
            elems = [int(t) for t in re.split(r"[,\s]+", body) if t]
        elif size <= 10:
            elems = [int(ch) for ch in body]
        else:
            elems = [int(body)]
        for e in elems:
            if not 0 <= e < size:
                raise ValueError(f"element {e} out of range for size {size}")
            if e in used:
                raise ValueError(f"element {e} repeated in {text!r}")
            used.add(e)
        for a, b in zip(elems, elems[1:] + elems[:1]):
            mapping[a] = b
    return Permutation(tuple(mapping))


# Table of girth-achieving permutations (pi, tau, tau', tau'') for Type I-A;
# "=pi" / "=tau" refer back to an earlier column entry.
_TYPE1A_TABLE = {
    6: ("(0)(1)", "=pi", "=pi", "=pi"),
    8: ("(0)(2)(1,3)", "=pi", "=pi", "(0,2)(1)(3)"),
    10: (
        "(0)(2)(4)(6)(1,5)(3,7)",
        "(0)(2)(4)(6)(1,7)(3,5)",
        "=tau",
        "(0,4)(2,6)(1,3)(5,7)",
    ),
    12: (
        "(0)(4)(8)(12)(2,6)(10,14)(1,9)(3,15)(5,13)(7,11)",
        "(0)(4)(8)(12)(2,6)(10,14)(1,13)(3,11)(5,9)(7,15)",
        "(0,8)(4,12)(2,14)(6,10)(1,5)(3)(7)(9,13)(11)(15)",
        "(0,2,4,6)(8,10,12,14)(1,15,5,11)(3,9,7,13)",
    ),
}


def builtin_permutations(g: int) -> tuple[Permutation, Permutation, Permutation, Permutation]:
    """``(pi, tau, tau1, tau2)`` achieving girth ``g`` in the Type I-A graph."""
    if g not in _TYPE1A_TABLE:
        raise ValueError(f"no built-in permutations for girth {g}; choose 6, 8, 10 or 12")
    size = 2 ** (g // 2 - 2)
    pi_s, tau_s, tau1_s, tau2_s = _TYPE1A_TABLE[g]
    pi = parse_cycles(pi_s, size)
    tau = pi if tau_s == "=pi" else parse_cycles(tau_s, size)
    refs = {"=pi": pi, "=tau": tau}
    tau1 = refs.get(tau1_s) or parse_cycles(tau1_s, size)
    tau2 = refs.get(tau2_s) or parse_cycles(tau2_s, size)
    return pi, tau, tau1, tau2


# ---------------------------------------------------------------------------
# graph assembly helper
# ---------------------------------------------------------------------------
class _Builder:
    """Labelled node/edge bookkeeping that supports deletions before indexing."""

    def __init__(self):
        self.var: dict[str, None] = {}
        self.chk: dict[str, None] = {}
        self.edges: dict[tuple[str, str], None] = {}

    def add_var(self, label: str):
        self.var[label] = None

    def add_chk(self, label: str):
        self.chk[label] = None

    def connect(self, v: str, c: str):
        if v not in self.var or c not in self.chk:
            raise KeyError(f"unknown node in edge ({v}, {c})")
        if (v, c) in self.edges:
            raise StructureError(f"duplicate edge {v} -- {c}")
        self.edges[(v, c)] = None

    def delete_edge(self, v: str, c: str):
        del self.edges[(v, c)]

    def delete_var(self, v: str):
        del self.var[v]
        for e in [e for e in self.edges if e[0] == v]:
            del self.edges[e]

    def delete_chk(self, c: str):
        del self.chk[c]
        for e in [e for e in self.edges if e[1] == c]:
            del self.edges[e]

    def neighbours_of_chk(self, c: str) -> list[str]:
        return [v for (v, cc) in self.edges if cc == c]

    def graph(self) -> TannerGraph:
        vi = {lab: k for k, lab in enumerate(self.var)}
        ci = {lab: k for k, lab in enumerate(self.chk)}
        return TannerGraph(
            len(vi),
            len(ci),
            ((vi[v], ci[c]) for v, c in self.edges),
            var_labels=list(self.var),
            chk_labels=list(self.chk),
        )


def _check_prime_power(p: int, s: int):
    if not is_prime(p) or s < 1:
        raise ValueError(f"({p}, {s}) does not describe a prime power p^s")


def _lab(F: FiniteField, *xs) -> str:
    return "(" + ",".join(x if isinstance(x, str) else F.label(x) for x in xs) + ")"


# ---------------------------------------------------------------------------
# Type I-A
# ---------------------------------------------------------------------------
def type1a(ell: int, perms: Sequence[Permutation] | None = None) -> TannerGraph:
    """3-regular Type I-A graph on ``ell`` tree layers.

    Parameters
    ----------
    ell : int
        Number of layers of the tree T, ``3 <= ell <= 7``.  ``ell = 7`` is
        accepted with a warning: no connection of this form reaches girth 14.
    perms : sequence of four Permutation, optional
        ``(pi, tau, tau1, tau2)`` on ``{0, ..., 2**(ell-2) - 1}``.  Defaults
        to the built-in table for girth ``2*ell`` (ell <= 6).

    Notes
    -----
    Node ``j`` of layer ``k >= 1`` has children ``2j, 2j+1`` in layer
    ``k+1``; the root has three children.  Leaves ``j`` of the last layer
    therefore fall into class ``j // 2**(ell-2)`` by the root branch they
    descend from.
    """
    if not 3 <= ell <= 7:
        raise ValueError(f"Type I-A needs 3 <= ell <= 7, got {ell}")
    m = 2 ** (ell - 2)
    if perms is None:
        if ell == 7:
            raise ValueError("no built-in permutations for ell=7; pass perms explicitly")
        perms = builtin_permutations(2 * ell)
    if ell == 7:
        warnings.warn("Type I-A with ell=7 cannot reach girth 14; expect girth <= 12", stacklevel=2)
    perms = tuple(p if isinstance(p, Permutation) else Permutation(tuple(p)) for p in perms)
    if len(perms) != 4 or any(p.size != m for p in perms):
        raise ValueError(f"need four permutations on {m} elements")
    pi, tau, tau1, tau2 = perms

    sizes = [1] + [3 * 2 ** (k - 1) for k in range(1, ell)]
    b = _Builder()

    def kind(tree: str, k: int) -> str:
        # T: even layers are variables; T': swapped
        return ("v" if k % 2 == 0 else "c") if tree == "T" else ("c" if k % 2 == 0 else "v")

    def name(tree: str, k: int, j: int) -> str:
        return f"{tree}{k}.{j}"

    for tree in ("T", "T'"):
        for k in range(ell):
            for j in range(sizes[k]):
                (b.add_var if kind(tree, k) == "v" else b.add_chk)(name(tree, k, j))

    def link(a: str, c: str, ka: str):
        if ka == "v":
            b.connect(a, c)
        else:
            b.connect(c, a)

    for tree in ("T", "T'"):
        for k in range(ell - 1):
            for j in range(sizes[k]):
                kids = range(3) if k == 0 else (2 * j, 2 * j + 1)
                for child in kids:
                    link(name(tree, k, j), name(tree, k + 1, child), kind(tree, k))

    last = ell - 1
    vt, ct = ("T", "T'") if kind("T", last) == "v" else ("T'", "T")

    def v_(j):
        return name(vt, last, j)

    def c_(j):
        return name(ct, last, j)

    for j in range(m):
        b.connect(v_(j), c_(pi(j)))
        b.connect(v_(j), c_(tau(j) + m))
        b.connect(v_(j + m), c_(pi(j) + m))
        b.connect(v_(j + m), c_(tau1(j) + 2 * m))
        b.connect(v_(j + 2 * m), c_(pi(j) + 2 * m))
        b.connect(v_(j + 2 * m), c_(tau2(j)))

    # reorder: T variable/check layers first, then T'
    order_v = [name(t, k, j) for t in ("T", "T'") for k in range(ell) if kind(t, k) == "v" for j in range(sizes[k])]
    order_c = [name(t, k, j) for t in ("T", "T'") for k in range(ell) if kind(t, k) == "c" for j in range(sizes[k])]
    b.var = dict.fromkeys(order_v)
    b.chk = dict.fromkeys(order_c)
    return b.graph()


# ---------------------------------------------------------------------------
# Type I-B
# ---------------------------------------------------------------------------
def type1b(p: int, s: int = 1) -> TannerGraph:
    """``p^s``-regular Type I-B graph with ``p^(2s) + 1`` nodes per side.

    Imaginary nodes ``(i,0)`` and ``(i,0)'_c`` are created, connected through
    the arrays ``M_i`` and then deleted together with the edges
    ``(0,i) -- (0,i)'_c``.
    """
    _check_prime_power(p, s)
    F = field_new(p, s)
    q = F.q
    L = lambda *xs: _lab(F, *xs)  # noqa: E731
    b = _Builder()
    # T: root variable, L1 checks (i)_c, L2 variables (i,j)
    b.add_var("root")
    for i in range(q):
        for j in range(q):
            b.add_var(L(i, j))
    # T': L1' variables (i)'
    for i in range(q):
        b.add_var(L(i) + "'")
    b.add_chk("root'_c")
    for i in range(q):
        b.add_chk(L(i) + "_c")
    for i in range(q):
        for j in range(q):
            b.add_chk(L(i, j) + "'_c")
    # reorder checks: T's L1 first, then T' root, then L2'
    b.chk = dict.fromkeys(
        [L(i) + "_c" for i in range(q)] + ["root'_c"] + [L(i, j) + "'_c" for i in range(q) for j in range(q)]
    )
    for i in range(q):
        b.connect("root", L(i) + "_c")
        b.connect(L(i) + "'", "root'_c")
        for j in range(q):
            b.connect(L(i, j), L(i) + "_c")
            b.connect(L(i) + "'", L(i, j) + "'_c")
    # step 1: (i,j) -> (k, j + i*k)'_c
    for i in range(q):
        for j in range(q):
            for k in range(q):
                b.connect(L(i, j), L(k, F.add(j, F.mul(i, k))) + "'_c")
    # step 2: drop imaginary nodes
    for i in range(q):
        b.delete_var(L(i, 0))
        b.delete_chk(L(i, 0) + "'_c")
    # step 3: drop (0,i) -- (0,i)'_c
    for i in range(1, q):
        b.delete_edge(L(0, i), L(0, i) + "'_c")
    return b.graph()


# ---------------------------------------------------------------------------
# Type II
# ---------------------------------------------------------------------------
def _type2_l3_builder(F: FiniteField) -> _Builder:
    q = F.q
    L = lambda *xs: _lab(F, *xs)  # noqa: E731
    b = _Builder()
    b.add_var("root")
    classes = ["x"] + list(range(q))
    for i in classes:
        for j in range(q):
            b.add_var(L(i, j))
    for i in classes:
        b.add_chk(L(i) + "_c")
    for i in range(q):
        for j in range(q):
            b.add_chk(L(i, j) + "'_c")
    for i in classes:
        b.connect("root", L(i) + "_c")
        for j in range(q):
            b.connect(L(i, j), L(i) + "_c")
    for i in range(q):
        for t in range(q):
            b.connect(L("x", i), L(i, t) + "'_c")
    for i in range(q):
        for j in range(q):
            for k in range(q):
                b.connect(L(i, j), L(k, F.add(j, F.mul(i, k))) + "'_c")
    return b


def type2_l3(p: int, s: int = 1) -> TannerGraph:
    """``(p^s + 1)``-regular Type II graph on three layers (PG(2, p^s) incidence)."""
    _check_prime_power(p, s)
    return _type2_l3_builder(field_new(p, s)).graph()


def eg2(p: int, s: int = 1) -> TannerGraph:
    """Euclidean-geometry graph obtained from :func:`type2_l3` by deletions.

    Removes the root and its check neighbours, then the check ``(0,0)'_c``
    with its variable neighbours.  The result is ``p^s``-regular with
    ``p^(2s) - 1`` nodes per side.
    """
    _check_prime_power(p, s)
    F = field_new(p, s)
    b = _type2_l3_builder(F)
    b.delete_var("root")
    for i in ["x"] + list(range(F.q)):
        b.delete_chk(_lab(F, i) + "_c")
    target = _lab(F, 0, 0) + "'_c"
    for v in b.neighbours_of_chk(target):
        b.delete_var(v)
    b.delete_chk(target)
    return b.graph()


FFunction = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def _table_f(F: FiniteField, alpha_power: int = 1) -> FFunction:
    """The girth-8 map f(i, j, k, t) for the shipped field sizes."""
    add, mul = F.add, F.mul
    key = (F.p, F.s)
    if key == (2, 1):
        return lambda i, j, k, t: add(j, mul(add(i, 1), t))
    if key == (2, 2):
        # g: 0 -> 1, 1 -> a, a -> a^2, a^2 -> 0; in index order that is i -> i+1 mod 4
        g = np.array([1, 2, 3, 0])
        return lambda i, j, k, t: add(j, mul(g[i], t))
    consts = {(3, 1): F.from_int(2), (5, 1): F.from_int(3), (7, 1): F.from_int(4)}
    if key == (3, 2):
        c = F.power(alpha_power)
    elif key in consts:
        c = consts[key]
    else:
        raise ValueError(f"no built-in f for GF({F.p}^{F.s}); pass a custom f")
    return lambda i, j, k, t: add(mul(i, add(k, mul(c, mul(i, t)))), j)


BUILTIN_L4 = ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1))

# Named maps usable from configuration files (f=<name>).
NAMED_F: dict[str, Callable[[FiniteField], FFunction]] = {
    "linear": lambda F: (lambda i, j, k, t: F.add(j, F.mul(i, t))),
    "shifted": lambda F: (lambda i, j, k, t: F.add(j, F.mul(F.add(i, 1), t))),
}


def type2_l4(p: int, s: int = 1, f: FFunction | str | None = None) -> TannerGraph:
    """``(p^s + 1)``-regular Type II graph on four layers.

    Parameters
    ----------
    p, s : int
        Field GF(p^s).
    f : callable, str or None
        The map ``f(i, j, k, t)`` on element indices (vectorised over numpy
        arrays).  ``None`` or ``"builtin"`` selects the shipped girth-8 map,
        available for (p, s) in ``BUILTIN_L4``; a string picks an entry of
        ``NAMED_F``.

    Raises
    ------
    ValueError
        If no built-in map exists, or ``f`` does not give every last-layer
        variable exactly one neighbour per check class.
    """
    _check_prime_power(p, s)
    F = field_new(p, s)
    if f is None or f == "builtin":
        if (p, s) not in BUILTIN_L4:
            raise ValueError(f"no built-in f for (p, s) = ({p}, {s}); pass a custom f")
        if (p, s) == (3, 2):
            return _type2_l4_gf9()
        f = _table_f(F)
    elif isinstance(f, str):
        if f not in NAMED_F:
            raise ValueError(f"unknown f {f!r}; choose builtin or one of {sorted(NAMED_F)}")
        f = NAMED_F[f](F)
    return _type2_l4_with(F, f)


def _type2_l4_with(F: FiniteField, f: FFunction) -> TannerGraph:
    q = F.q
    idx = np.arange(q)
    i, j, k, t = np.meshgrid(idx, idx, idx, idx, indexing="ij")
    second = F.add(k, F.mul(i, t))
    third = np.broadcast_to(np.asarray(f(i, j, k, t)), i.shape)
    if np.any(third < 0) or np.any(third >= q):
        raise ValueError("f produced values outside the field")

    n_l2 = (q + 1) * q
    n_l3 = (q + 1) * q * q
    n_l4 = q**3
    # variables: root | L2 (x-class first) | L4 ; checks: L1 | L3
    root = 0
    l2 = lambda cls, jj: 1 + cls * q + jj  # noqa: E731  cls 0 is x, 1+i for field element i
    l4 = lambda a, bb, c: 1 + n_l2 + (a * q + bb) * q + c  # noqa: E731
    l1 = lambda cls: cls  # noqa: E731
    l3 = lambda cls, jj, kk: (q + 1) + (cls * q + jj) * q + kk  # noqa: E731

    edges = []
    for cls in range(q + 1):
        edges.append((root, l1(cls)))
        for jj in range(q):
            edges.append((l2(cls, jj), l1(cls)))
            for kk in range(q):
                edges.append((l2(cls, jj), l3(cls, jj, kk)))
    # (x,i,j)_c -> (i,j,t)'
    for a in range(q):
        for bb in range(q):
            for tt in range(q):
                edges.append((l4(a, bb, tt), l3(0, a, bb)))
    # (i,j,k)_c -> (t, k + i t, f(i,j,k,t))'
    ii, jj_, kk, tt = (x.ravel() for x in (i, j, k, t))
    sec, thr = second.ravel(), third.ravel()
    var = 1 + n_l2 + (tt * q + sec) * q + thr
    chk = (q + 1) + ((1 + ii) * q + jj_) * q + kk
    l4_deg = np.bincount(var - 1 - n_l2, minlength=n_l4)
    if np.any(l4_deg != q):
        raise ValueError("f is not well defined: last-layer variables do not get one check per class")
    edges.extend(zip(var.tolist(), chk.tolist()))

    L = lambda *xs: _lab(F, *xs)  # noqa: E731
    classes = ["x"] + list(range(q))
    var_labels = ["root"] + [L(c, jj) for c in classes for jj in range(q)]
    var_labels += [L(a, bb, c) + "'" for a in range(q) for bb in range(q) for c in range(q)]
    chk_labels = [L(c) + "_c" for c in classes]
    chk_labels += [L(c, jj, kk) + "_c" for c in classes for jj in range(q) for kk in range(q)]
    n_var = 1 + n_l2 + n_l4
    n_chk = (q + 1) + n_l3
    return TannerGraph(n_var, n_chk, edges, var_labels, chk_labels)


_GF9_CHOICE: dict[str, int] = {}


def _type2_l4_gf9() -> TannerGraph:
    """GF(9) table entry ``i(k + c i t) + j`` with ``c`` a power of alpha.

    Primitive powers are tried first.  None of them reaches girth 8, so the
    search continues through the other powers; only ``c = alpha^4 = -1``
    (which is 1/2 in characteristic 3, matching the prime-field rows)
    succeeds.  The chosen exponent is reported by :func:`gf9_alpha_choice`.
    """
    F = field_new(3, 2)
    primitive = [e for e in range(1, 8) if np.gcd(e, 8) == 1]
    candidates = primitive + [e for e in range(8) if e not in primitive]
    if "alpha_power" in _GF9_CHOICE:
        candidates = [_GF9_CHOICE["alpha_power"]]
    for e in candidates:
        G = _type2_l4_with(F, _table_f(F, alpha_power=e))
        if G.girth() == 8:
            _GF9_CHOICE["alpha_power"] = e
            return G
    raise StructureError("no power of alpha gives girth 8 with the GF(9) table map")


def gf9_alpha_choice() -> int | None:
    """Exponent ``e`` such that ``alpha**e`` stood in for alpha in the GF(9) map."""
    return _GF9_CHOICE.get("alpha_power")


# ---------------------------------------------------------------------------
# construction specs
# ---------------------------------------------------------------------------
FAMILIES = ("type1a", "type1b", "type2l3", "type2l4", "eg2")

_FAMILY_ALIASES = {
    "type1a": "type1a",
    "typeia": "type1a",
    "i-a": "type1a",
    "type1b": "type1b",
    "typeib": "type1b",
    "i-b": "type1b",
    "type2l3": "type2l3",
    "typeii_l3": "type2l3",
    "ii-l3": "type2l3",
    "pg": "type2l3",
    "type2l4": "type2l4",
    "typeii_l4": "type2l4",
    "ii-l4": "type2l4",
    "eg2": "eg2",
    "eg": "eg2",
}


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace(" ", "")
    if key not in _FAMILY_ALIASES:
        raise ValueError(f"unknown family {name!r}; choose one of {', '.join(FAMILIES)}")
    return _FAMILY_ALIASES[key]


@dataclass(frozen=True)
class ConstructionSpec:
    """Which family to build and with which parameters.

    ``ell`` applies to Type I-A only; ``p``/``s`` to the other families.
    ``perms`` overrides the Type I-A table; ``f`` selects the Type II
    four-layer map ("builtin" or a name from ``NAMED_F``).
    """

    family: str
    ell: int | None = None
    p: int | None = None
    s: int = 1
    perms: tuple[Permutation, ...] | None = None
    f: str = "builtin"
    extra: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", normalize_family(self.family))
        if self.family == "type1a":
            if self.ell is None or not 3 <= self.ell <= 7:
                raise ValueError("type1a needs ell in 3..7")
        else:
            if self.p is None:
                raise ValueError(f"{self.family} needs p")
            _check_prime_power(self.p, self.s)

    @property
    def degree(self) -> int:
        if self.family == "type1a":
            return 3
        q = self.p**self.s
        return q if self.family in ("type1b", "eg2") else q + 1

    @property
    def natural_p(self) -> int:
        """Alphabet size the construction is naturally read over (2 for I-A)."""
        return 2 if self.family == "type1a" else self.p

    def build(self) -> TannerGraph:
        return build(self)

    def describe(self) -> str:
        if self.family == "type1a":
            return f"type1a ell={self.ell}"
        return f"{self.family} p={self.p} s={self.s}"


def build(spec: ConstructionSpec) -> TannerGraph:
    fam = spec.family
    if fam == "type1a":
        return type1a(spec.ell, spec.perms)
    if fam == "type1b":
        return type1b(spec.p, spec.s)
    if fam == "type2l3":
        return type2_l3(spec.p, spec.s)
    if fam == "type2l4":
        return type2_l4(spec.p, spec.s, spec.f)
    return eg2(spec.p, spec.s)


def expected_size(spec: ConstructionSpec) -> int:
    """Block length predicted by the family's node-count formula."""
    if spec.family == "type1a":
        d, ell = 3, spec.ell
        return 1 + sum(d * (d - 1) ** k for k in range(ell - 1))
    q = spec.p**spec.s
    return {
        "type1b": q * q + 1,
        "type2l3": 1 + q + q * q,
        "type2l4": 1 + q + q * q + q**3,
        "eg2": q * q - 1,
    }[spec.family]


def parse_config(text: str) -> ConstructionSpec:
    """Build a spec from ``key=value`` lines (``#`` starts a comment).

    Recognised keys: family, ell, p, s, pi, tau, tau1, tau2, f.  Unknown keys
    are kept in ``spec.extra`` for callers such as the simulator.
    """
    values: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, val = (x.strip() for x in line.split("=", 1))
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        values[key.lower()] = (val, lineno)

    def get_int(key):
        if key not in values:
            return None
        val, lineno = values[key]
        try:
            return int(val)
        except ValueError:
            raise ValueError(f"line {lineno}: {key} must be an integer, got {val!r}") from None

    if "family" not in values:
        raise ValueError("config has no family key")
    fam_val, fam_line = values["family"]
    try:
        family = normalize_family(fam_val)
    except ValueError as exc:
        raise ValueError(f"line {fam_line}: {exc}") from None
    ell = get_int("ell")
    perms = None
    keys = ("pi", "tau", "tau1", "tau2")
    if any(k in values for k in keys):
        if family != "type1a" or ell is None:
            raise ValueError("permutations are only meaningful for type1a with ell set")
        size = 2 ** (ell - 2)
        base = builtin_permutations(2 * ell) if ell <= 6 else (Permutation.identity(size),) * 4
        out = list(base)
        for n, k in enumerate(keys):
            if k in values:
                val, lineno = values[k]
                try:
                    out[n] = parse_cycles(val, size)
                except ValueError as exc:
                    raise ValueError(f"line {lineno}: {exc}") from None
        perms = tuple(out)
    f_val = values.get("f", ("builtin", 0))[0]
    known = {"family", "ell", "p", "s", "f", *keys}
    extra = {k: v for k, (v, _) in values.items() if k not in known}
    try:
        return ConstructionSpec(
            family=family,
            ell=ell,
            p=get_int("p"),
            s=get_int("s") or 1,
            perms=perms,
            f=f_val,
            extra=extra,
        )
    except ValueError as exc:
        raise ValueError(f"invalid configuration: {exc}") from None


# ---------------------------------------------------------------------------
# witness codewords
# ---------------------------------------------------------------------------
def witness_codeword(spec: ConstructionSpec, alphabet: str = "binary", graph: TannerGraph | None = None) -> np.ndarray:
    """Low-weight codeword from the constructive distance proofs.

    Parameters
    ----------
    spec : ConstructionSpec
        Type I-B or Type II three-layer instance.
    alphabet : {"binary", "pary"}
        Read the graph over GF(2) or GF(p).
    graph : TannerGraph, optional
        The built graph, to avoid rebuilding it.

    Returns
    -------
    numpy.ndarray
        Integer vector indexed like the graph's variables.

    Notes
    -----
    * Type I-B, binary, p odd: ``(0,j)`` for j != 0 and ``(j)'`` for j != 0;
      weight ``2(p^s - 1)``.
    * Type I-B, binary with p = 2, or p-ary: root, all of S_0, the diagonal
      ``(a^i, a^i)``, ``(0)'`` and ``(y)'`` with ``1 + y = 0``; values 1 and
      p - 1.  Weight ``2 p^s + 1``.
    * Type II three layers, p = 2: root, ``(x,0)``, ``(0,0)`` and
      ``(a^i, a^(q-2-i))``; weight ``2^s + 2``.
    * Type II three layers, p-ary, p odd: root and ``(x,t)`` for t != y with
      value 1; ``(0,0)`` and the diagonal ``(a^i, a^i)`` with value p - 1.
      Weight ``2 p^s``.
    """
    if alphabet not in ("binary", "pary"):
        raise ValueError("alphabet must be 'binary' or 'pary'")
    if spec.family not in ("type1b", "type2l3"):
        raise ValueError(f"no witness construction for {spec.family}")
    p, q = spec.p, spec.p**spec.s
    F = field_new(spec.p, spec.s)
    G = graph if graph is not None else build(spec)
    L = lambda *xs: _lab(F, *xs)  # noqa: E731
    vals: dict[str, int] = {}
    neg1 = F.neg(1)
    diag = [F.power(i) for i in range(q - 1)]
    if spec.family == "type1b":
        if alphabet == "binary" and p % 2 == 1:
            for j in range(1, q):
                vals[L(0, j)] = 1
                vals[L(j) + "'"] = 1
        else:
            pm1 = 1 if alphabet == "binary" else p - 1
            vals["root"] = 1
            for j in range(1, q):
                vals[L(0, j)] = 1
            for a in diag:
                vals[L(a, a)] = pm1
            vals[L(0) + "'"] = 1
            vals[L(neg1) + "'"] = pm1
    else:
        if p == 2:
            vals["root"] = 1
            vals[L("x", 0)] = 1
            vals[L(0, 0)] = 1
            for i in range(q - 1):
                vals[L(F.power(i), F.power(q - 2 - i))] = 1
        elif alphabet == "binary":
            raise ValueError("binary Type II three-layer codes with p > 2 are repetition codes; no witness")
        else:
            vals["root"] = 1
            for t in range(q):
                if t != neg1:
                    vals[L("x", t)] = 1
            vals[L(0, 0)] = p - 1
            for a in diag:
                vals[L(a, a)] = p - 1
    c = np.zeros(G.n_var, dtype=np.int64)
    lm = G.label_map
    for lab, v in vals.items():
        c[lm[lab][1]] = v
    return c
