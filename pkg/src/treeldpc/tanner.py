"""Bipartite Tanner graphs: structure, analysis and alist I/O."""

from __future__ import annotations

import math
from collections import Counter, deque
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components, shortest_path


class StructureError(ValueError):
    """Raised when an edge list does not describe a simple bipartite graph."""


class TannerGraph:
    """Variable/check bipartite graph with deterministic integer indexing.

    Parameters
    ----------
    n_var, n_chk : int
        Number of variable and check nodes.
    edges : iterable of (int, int)
        ``(variable, check)`` pairs.  Duplicates raise :class:`StructureError`.
    var_labels, chk_labels : sequence of str, optional
        Structured labels of the nodes, one per index.
    """

    def __init__(
        self,
        n_var: int,
        n_chk: int,
        edges: Iterable[tuple[int, int]],
        var_labels: Sequence[str] | None = None,
        chk_labels: Sequence[str] | None = None,
    ):
        self.n_var = int(n_var)
        self.n_chk = int(n_chk)
        vadj: list[list[int]] = [[] for _ in range(self.n_var)]
        cadj: list[list[int]] = [[] for _ in range(self.n_chk)]
        seen = set()
        for v, c in edges:
            v, c = int(v), int(c)
            if not (0 <= v < self.n_var and 0 <= c < self.n_chk):
                raise StructureError(f"edge ({v}, {c}) out of range")
            if (v, c) in seen:
                raise StructureError(f"duplicate edge between variable {v} and check {c}")
            seen.add((v, c))
            vadj[v].append(c)
            cadj[c].append(v)
        self.var_adj = tuple(tuple(sorted(a)) for a in vadj)
        self.chk_adj = tuple(tuple(sorted(a)) for a in cadj)
        if var_labels is not None and len(var_labels) != self.n_var:
            raise ValueError("var_labels length does not match n_var")
        if chk_labels is not None and len(chk_labels) != self.n_chk:
            raise ValueError("chk_labels length does not match n_chk")
        self.var_labels = tuple(var_labels) if var_labels is not None else None
        self.chk_labels = tuple(chk_labels) if chk_labels is not None else None
        self._girth = None

    # -- basic views -----------------------------------------------------
    def __repr__(self) -> str:
        return f"TannerGraph(n_var={self.n_var}, n_chk={self.n_chk}, edges={self.n_edges})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TannerGraph)
            and (self.n_var, self.n_chk) == (other.n_var, other.n_chk)
            and self.var_adj == other.var_adj
        )

    def __hash__(self) -> int:
        return hash((self.n_var, self.n_chk, self.var_adj))

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.var_adj)

    def edges(self) -> np.ndarray:
        """``(E, 2)`` array of (variable, check) pairs sorted by variable then check."""
        out = [(v, c) for v, adj in enumerate(self.var_adj) for c in adj]
        return np.array(out, dtype=np.int64).reshape(-1, 2)

    @property
    def label_map(self) -> dict[str, tuple[str, int]]:
        """Structured label -> ("v" | "c", index)."""
        out: dict[str, tuple[str, int]] = {}
        for kind, labels in (("v", self.var_labels), ("c", self.chk_labels)):
            for i, lab in enumerate(labels or ()):
                out[lab] = (kind, i)
        return out

    def var_index(self, label: str) -> int:
        kind, i = self.label_map[label]
        if kind != "v":
            raise KeyError(f"{label!r} is a check label")
        return i

    def chk_index(self, label: str) -> int:
        kind, i = self.label_map[label]
        if kind != "c":
            raise KeyError(f"{label!r} is a variable label")
        return i

    def is_transpose_consistent(self) -> bool:
        a = {(v, c) for v, adj in enumerate(self.var_adj) for c in adj}
        b = {(v, c) for c, adj in enumerate(self.chk_adj) for v in adj}
        return a == b

    # -- degrees ---------------------------------------------------------
    def degree_profile(self) -> tuple[Counter, Counter]:
        """Multisets (degree -> count) for variable and check nodes."""
        return (
            Counter(len(a) for a in self.var_adj),
            Counter(len(a) for a in self.chk_adj),
        )

    def is_regular(self, d: int | None = None) -> bool:
        """True if every node on both sides has degree ``d`` (any common d if None)."""
        degs = {len(a) for a in self.var_adj} | {len(a) for a in self.chk_adj}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    # -- matrices --------------------------------------------------------
    def to_matrix(self, dtype=np.uint8) -> np.ndarray:
        """Dense ``n_chk x n_var`` 0/1 parity-check matrix."""
        H = np.zeros((self.n_chk, self.n_var), dtype=dtype)
        e = self.edges()
        if len(e):
            H[e[:, 1], e[:, 0]] = 1
        return H

    def to_sparse(self) -> sparse.csr_matrix:
        e = self.edges()
        data = np.ones(len(e), dtype=np.int64)
        return sparse.csr_matrix((data, (e[:, 1], e[:, 0])), shape=(self.n_chk, self.n_var))

    @classmethod
    def from_matrix(cls, H) -> "TannerGraph":
        """Graph of the nonzero pattern of ``H`` (rows are checks)."""
        if sparse.issparse(H):
            H = H.toarray()
        H = np.asarray(H)
        if H.ndim != 2:
            raise ValueError("parity-check matrix must be two-dimensional")
        rows, cols = np.nonzero(H)
        return cls(H.shape[1], H.shape[0], zip(cols.tolist(), rows.tolist()))

    def _adjacency(self) -> sparse.csr_matrix:
        """Symmetric adjacency on ``n_var + n_chk`` nodes, variables first."""
        B = self.to_sparse().T.tocsr()
        return sparse.bmat([[None, B], [B.T, None]], format="csr")

    # -- structure -------------------------------------------------------
    def relabel(self, var_perm: Sequence[int], chk_perm: Sequence[int]) -> "TannerGraph":
        """Isomorphic copy with variable ``v`` renamed ``var_perm[v]`` (checks likewise)."""
        vp = list(var_perm)
        cp = list(chk_perm)
        return TannerGraph(
            self.n_var,
            self.n_chk,
            ((vp[v], cp[c]) for v, c in self.edges().tolist()),
        )

    def is_connected(self) -> bool:
        n = self.n_var + self.n_chk
        if n <= 1:
            return True
        k, _ = connected_components(self._adjacency(), directed=False)
        return k == 1

    def girth(self) -> float:
        """Length of the shortest cycle, ``math.inf`` for a forest."""
        if self._girth is None:
            self._girth = _girth(self)
        return self._girth

    def diameter(self) -> int:
        """Largest shortest-path distance over all node pairs.

        Raises
        ------
        ValueError
            If the graph is disconnected.
        """
        n = self.n_var + self.n_chk
        if n == 0:
            return 0
        if not self.is_connected():
            raise ValueError("graph is disconnected; diameter is infinite")
        A = self._adjacency()
        best = 0
        chunk = max(1, 4_000_000 // n)
        for start in range(0, n, chunk):
            idx = np.arange(start, min(n, start + chunk))
            d = shortest_path(A, directed=False, unweighted=True, indices=idx)
            best = max(best, int(d.max()))
        return best

    # -- alist -----------------------------------------------------------
    def to_alist(self) -> str:
        """MacKay alist text: variables are columns, checks are rows."""
        vdeg = [len(a) for a in self.var_adj]
        cdeg = [len(a) for a in self.chk_adj]
        mv = max(vdeg, default=0)
        mc = max(cdeg, default=0)
        lines = [
            f"{self.n_var} {self.n_chk}",
            f"{mv} {mc}",
            " ".join(map(str, vdeg)),
            " ".join(map(str, cdeg)),
        ]
        for adj in self.var_adj:
            lines.append(" ".join(str(c + 1) for c in adj) + " 0" * (mv - len(adj)))
        for adj in self.chk_adj:
            lines.append(" ".join(str(v + 1) for v in adj) + " 0" * (mc - len(adj)))
        return "\n".join(line.strip() for line in lines) + "\n"

    @classmethod
    def from_alist(cls, text: str) -> "TannerGraph":
        """Parse alist text; the check-side lists are cross-checked."""
        tokens = [line.split() for line in text.splitlines() if line.strip()]
        try:
            n, m = map(int, tokens[0][:2])
            vdeg = list(map(int, tokens[2]))
            cdeg = list(map(int, tokens[3]))
            if len(vdeg) != n or len(cdeg) != m:
                raise ValueError("degree line lengths do not match n, m")
            edges = []
            for v in range(n):
                entries = [int(t) for t in tokens[4 + v] if int(t) != 0]
                if len(entries) != vdeg[v]:
                    raise ValueError(f"variable {v + 1}: degree mismatch")
                edges.extend((v, c - 1) for c in entries)
            cedges = []
            for c in range(m):
                entries = [int(t) for t in tokens[4 + n + c] if int(t) != 0]
                if len(entries) != cdeg[c]:
                    raise ValueError(f"check {c + 1}: degree mismatch")
                cedges.extend((v - 1, c) for v in entries)
        except IndexError as exc:
            raise ValueError("truncated alist data") from exc
        if sorted(edges) != sorted(cedges):
            raise ValueError("alist variable and check lists disagree")
        return cls(n, m, edges)


def _girth(G: TannerGraph) -> float:
    # nodes: variables 0..n_var-1, checks n_var..n_var+n_chk-1
    nv = G.n_var
    adj = [list(n + nv for n in a) for a in G.var_adj] + [list(G.chk_adj[c]) for c in range(G.n_chk)]
    # any two variables sharing two checks -> girth 4
    best = math.inf
    if G.n_edges:
        S = G.to_sparse()
        co = (S.T @ S).tocoo()
        if np.any((co.data >= 2) & (co.row != co.col)):
            return 4
    # every cycle passes through a variable node
    for root in range(nv):
        if not adj[root]:
            continue
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if w in dist:
                    best = min(best, du + dist[w] + 1)
                else:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
    return best
