"""Tree bounds, finite graph covers and pseudocodewords.

A pseudocodeword is summarised by an ``n x p`` matrix ``F`` whose entry
``f[i][j]`` is the fraction of the ``m`` copies of variable ``i`` that carry
value ``j`` in a codeword of an ``m``-fold cover.  Everything here is exact:
matrices are stored as integer counts over the common denominator ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import _span_table, is_codeword, nullspace_basis
from .tanner import StructureError, TannerGraph


def tree_bound(d: int, g: int) -> int:
    """Number of variable nodes in the girth-limited computation tree.

    Parameters
    ----------
    d : int
        Smallest variable-node degree, at least 2.
    g : int
        Girth; must be even and at least 6.

    Returns
    -------
    int
        Lower bound on minimum distance and minimum pseudocodeword weight.
    """
    d, g = int(d), int(g)
    if d < 2:
        raise ValueError("tree bound needs variable degree d >= 2")
    if g % 2 or g < 6:
        raise ValueError(f"tree bound needs an even girth >= 6, got {g}")
    half = g // 2
    if half % 2:
        # 1 + d + d(d-1) + ... + d(d-1)^((g-6)/4)
        return 1 + sum(d * (d - 1) ** t for t in range((g - 6) // 4 + 1))
    # 1 + d + ... + d(d-1)^((g-8)/4) + (d-1)^((g-4)/4)
    return 1 + sum(d * (d - 1) ** t for t in range((g - 8) // 4 + 1)) + (d - 1) ** ((g - 4) // 4)


def graph_tree_bound(G: TannerGraph) -> int | None:
    """Tree bound of ``G`` from its smallest variable degree and girth (None if unavailable)."""
    g = G.girth()
    if not G.n_var or g == math.inf or g < 6:
        return None
    d = min(len(a) for a in G.var_adj)
    return tree_bound(d, int(g)) if d >= 2 else None


# -- covers -----------------------------------------------------------------


@dataclass(frozen=True)
class CoverSpec:
    """An ``m``-fold cover: one permutation of ``range(m)`` per base edge.

    ``perms[e]`` belongs to the ``e``-th row of ``base.edges()``.
    """

    base: TannerGraph
    m: int
    perms: np.ndarray

    def __post_init__(self):
        if int(self.m) < 1:
            raise ValueError("cover degree m must be >= 1")
        P = np.asarray(self.perms, dtype=np.int64)
        if P.shape != (self.base.n_edges, self.m):
            raise ValueError(f"need one length-{self.m} permutation per base edge, got shape {P.shape}")
        if len(P) and not np.all(np.sort(P, axis=1) == np.arange(self.m)):
            raise ValueError("every per-edge map must be a permutation of range(m)")
        object.__setattr__(self, "perms", P)

    @classmethod
    def identity(cls, base: TannerGraph, m: int) -> "CoverSpec":
        return cls(base, m, np.tile(np.arange(m), (base.n_edges, 1)))

    @classmethod
    def random(cls, base: TannerGraph, m: int, rng) -> "CoverSpec":
        rng = np.random.default_rng(rng)
        return cls(base, m, np.array([rng.permutation(m) for _ in range(base.n_edges)]).reshape(-1, m))


def lift(cover: CoverSpec) -> TannerGraph:
    """Lifted graph; copy ``k`` of base node ``x`` gets index ``x*m + k``."""
    G, m = cover.base, cover.m
    E = G.edges()
    ks = np.arange(m)
    v = (E[:, 0:1] * m + ks).ravel()
    c = (E[:, 1:2] * m + cover.perms).ravel()
    var_labels = chk_labels = None
    if G.var_labels is not None and G.chk_labels is not None:
        var_labels = [f"{lab}#{k}" for lab in G.var_labels for k in range(m)]
        chk_labels = [f"{lab}#{k}" for lab in G.chk_labels for k in range(m)]
    return TannerGraph(G.n_var * m, G.n_chk * m, zip(v.tolist(), c.tolist()), var_labels, chk_labels)


# -- pseudocodewords ----------------------------------------------------------


@dataclass(frozen=True)
class Pseudocodeword:
    """Row-stochastic ``n x p`` matrix with entries in ``(1/m) Z``.

    Parameters
    ----------
    counts : ndarray of int, shape (n, p)
        ``counts[i, j]`` copies of variable ``i`` hold value ``j``.
    m : int
        Common denominator (cover degree).
    """

    counts: np.ndarray
    m: int

    def __post_init__(self):
        C = np.asarray(self.counts, dtype=np.int64)
        if C.ndim != 2 or C.shape[1] < 2:
            raise ValueError("counts must be an n x p array with p >= 2")
        if self.m < 1 or np.any(C < 0) or np.any(C.sum(axis=1) != self.m):
            raise ValueError("each row must hold nonnegative counts summing to m")
        C.setflags(write=False)
        object.__setattr__(self, "counts", C)

    @property
    def n(self) -> int:
        return self.counts.shape[0]

    @property
    def p(self) -> int:
        return self.counts.shape[1]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(int(self.counts[i, j]), self.m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pseudocodeword):
            return NotImplemented
        # compare as rationals, so different denominators can agree
        return self.counts.shape == other.counts.shape and np.array_equal(
            self.counts * other.m, other.counts * self.m
        )

    def __hash__(self) -> int:
        g = math.gcd(self.m, *map(int, self.counts.ravel()))
        return hash((self.counts.shape, (self.counts // g).tobytes(), self.m // g))

    def rows(self) -> list[list[Fraction]]:
        return [[Fraction(int(c), self.m) for c in row] for row in self.counts]

    def is_codeword_matrix(self) -> bool:
        return bool(np.all((self.counts == 0) | (self.counts == self.m)))

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence]) -> "Pseudocodeword":
        fr = [[Fraction(x) for x in row] for row in rows]
        m = math.lcm(*(x.denominator for row in fr for x in row))
        return cls(np.array([[int(x * m) for x in row] for row in fr], dtype=np.int64), m)

    @classmethod
    def from_codeword(cls, c, p: int) -> "Pseudocodeword":
        c = np.asarray(c, dtype=np.int64) % p
        C = np.zeros((len(c), p), dtype=np.int64)
        C[np.arange(len(c)), c] = 1
        return cls(C, 1)

    def dumps(self) -> str:
        """Text form: header ``n p m`` then one line of ``num/den`` per row."""
        lines = [f"{self.n} {self.p} {self.m}"]
        for row in self.rows():
            lines.append(" ".join(f"{x.numerator}/{x.denominator}" for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Pseudocodeword":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        n, p, m = map(int, lines[0])
        if len(lines) - 1 != n or any(len(r) != p for r in lines[1:]):
            raise ValueError("pseudocodeword text does not match its 'n p m' header")
        rows = [[Fraction(x) for x in r] for r in lines[1:]]
        C = []
        for r in rows:
            scaled = [x * m for x in r]
            if any(s.denominator != 1 for s in scaled):
                raise ValueError(f"entry is not a multiple of 1/{m}")
            C.append([int(s) for s in scaled])
        return cls(np.array(C, dtype=np.int64), m)


def pseudocodeword_from_cover(cover: CoverSpec, word, p: int, lifted: TannerGraph | None = None) -> Pseudocodeword:
    """Cloud-wise value fractions of a codeword of the lifted graph."""
    word = np.asarray(word, dtype=np.int64)
    m, n = cover.m, cover.base.n_var
    if word.shape != (n * m,):
        raise ValueError(f"lifted word must have length {n * m}")
    L = lifted if lifted is not None else lift(cover)
    if not is_codeword(L.to_matrix(), word % p, p):
        raise ValueError("word is not a codeword of the lifted graph")
    cloud = (word % p).reshape(n, m)
    C = np.stack([(cloud == j).sum(axis=1) for j in range(p)], axis=1)
    return Pseudocodeword(C, m)


# -- PSC weight ---------------------------------------------------------------


def _selection(F: Pseudocodeword):
    """Greedy selection behind the PSC weight.

    Returns ``(e, strict, order, argmax)`` where ``order[:e]`` are the
    selected rows and ``argmax[i]`` is the nonzero value with largest
    fraction in row ``i`` (ties to the smallest value).
    """
    C = F.counts
    g = C[:, 1:].max(axis=1)
    arg = C[:, 1:].argmax(axis=1) + 1
    h = F.m - C[:, 0]
    # stable sort on -g keeps smaller row index first among ties
    order = np.argsort(-g, kind="stable")
    sel = 0
    rest = int(h.sum())
    for e in range(len(order) + 1):
        if sel >= rest:
            return e, sel > rest, order, arg
        i = order[e]
        sel += int(g[i])
        rest -= int(h[i])
    raise AssertionError("selecting every row always satisfies the condition")


def psc_weight(F: Pseudocodeword) -> int:
    """Weight of ``F`` on the p-ary symmetric channel.

    Rows are taken in decreasing order of their largest nonzero-value
    fraction until the selected fractions cover the nonzero mass of the
    remaining rows; ``e`` selected rows give ``2e`` on equality and
    ``2e - 1`` otherwise.
    """
    e, strict, _, _ = _selection(F)
    return 2 * e - 1 if strict else 2 * e


def weight_defining_received(F: Pseudocodeword) -> np.ndarray:
    """Received word that puts each selected row on its dominant nonzero value."""
    e, _, order, arg = _selection(F)
    r = np.zeros(F.n, dtype=np.int64)
    r[order[:e]] = arg[order[:e]]
    return r


def psc_distance(r, F: Pseudocodeword) -> Fraction:
    """``sum_i (1 - f[i][r_i])``: expected symbol disagreements between ``r`` and ``F``."""
    r = np.asarray(r, dtype=np.int64)
    if r.shape != (F.n,):
        raise ValueError(f"received word has length {r.size}, expected {F.n}")
    if np.any((r < 0) | (r >= F.p)):
        raise ValueError("received symbols out of range")
    agree = int(F.counts[np.arange(F.n), r].sum())
    return Fraction(F.n * F.m - agree, F.m)


def prefers(r, F: Pseudocodeword) -> bool:
    """True when ``F`` is at least as close to ``r`` as the all-zero word."""
    r = np.asarray(r, dtype=np.int64)
    return psc_distance(r, F) <= int(np.count_nonzero(r))


def local_inequality_holds(G: TannerGraph, F: Pseudocodeword) -> bool:
    """Per-check test ``h_i <= sum_{j != i} h_j`` with ``h = 1 - f[., 0]``."""
    h = F.m - F.counts[:, 0]
    for nb in G.chk_adj:
        hs = h[list(nb)]
        if len(hs) and np.any(2 * hs > hs.sum()):
            return False
    return True


# -- sampling -------------------------------------------------------------------


class PseudoSample(list):
    """List of ``(Pseudocodeword, weight)``; ``partial`` marks a truncated search."""

    partial: bool = False


def _cover_words(L: TannerGraph, p: int, max_words: int, rng) -> tuple[np.ndarray, bool]:
    B = nullspace_basis(L.to_matrix(), p)
    k = B.shape[0]
    if k == 0:
        return np.zeros((1, L.n_var), dtype=np.int64), False
    if p**k <= max_words:
        return _span_table(B, p), False
    coef = rng.integers(0, p, size=(max_words, k))
    return (coef @ B) % p, True


def sample_cover_pseudoweights(
    G: TannerGraph,
    p: int = 2,
    m: int = 2,
    trials: int = 100,
    seed: int = 0,
    max_words: int = 1 << 20,
    include_zero: bool = False,
) -> PseudoSample:
    """Pseudocodewords and PSC weights from seeded random ``m``-covers.

    Each trial draws a cover from ``default_rng([seed, trial])`` and
    enumerates the lifted code when it has at most ``max_words`` words;
    otherwise ``max_words`` random codewords are drawn and the result is
    marked partial.  Distinct pseudocodewords are kept in order of first
    appearance.
    """
    out = PseudoSample()
    seen = set()
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        cover = CoverSpec.random(G, m, rng)
        L = lift(cover)
        words, partial = _cover_words(L, p, max_words, rng)
        out.partial |= partial
        W = words.reshape(len(words), G.n_var, m)
        counts = np.stack([(W == j).sum(axis=2) for j in range(p)], axis=2)
        for C in counts:
            key = C.tobytes()
            if key in seen:
                continue
            seen.add(key)
            F = Pseudocodeword(C, m)
            if not include_zero and np.all(C[:, 0] == m):
                continue
            out.append((F, psc_weight(F)))
    return out
