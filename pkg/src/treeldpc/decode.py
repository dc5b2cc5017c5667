"""Flooding message-passing decoders with syndrome-based early stopping.

Three decoders share one edge layout:

* ``min_sum``: binary min-sum on LLRs,
* ``sum_product_binary``: binary tanh-rule sum-product on LLRs,
* ``sum_product_pary``: probability-domain sum-product over Z_p for
  unit-weight parity checks (each check asks the neighbour sum to be 0 mod p).

Each has a batched form (``*_batch``) that decodes a stack of frames at
once; frames leave the batch as soon as their hard decision is a codeword.
One iteration is a check update followed by a variable update, and the
syndrome is tested after every iteration, so a clean codeword converges
with ``iterations == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .tanner import TannerGraph

LLR_CLIP = 1e3  # |LLR| fed to tanh or kept by min-sum
_TANH_CLIP = 1.0 - 1e-15


@dataclass
class DecodeResult:
    """Decoder output for one frame.

    ``converged`` means the returned word has zero syndrome.
    """

    word: np.ndarray
    converged: bool
    iterations: int


@dataclass
class BatchResult:
    words: np.ndarray
    converged: np.ndarray
    iterations: np.ndarray

    def __len__(self) -> int:
        return len(self.converged)

    def __getitem__(self, i) -> DecodeResult:
        return DecodeResult(self.words[i], bool(self.converged[i]), int(self.iterations[i]))


class _Layout:
    """Edge indexing: edges sorted by variable, padded per-node edge tables.

    The padding slot is edge ``E``; callers append a neutral value there.
    """

    def __init__(self, H):
        if isinstance(H, TannerGraph):
            G = H
        else:
            G = TannerGraph.from_matrix(H)
        self.graph = G
        self.n, self.m = G.n_var, G.n_chk
        e = G.edges()
        self.E = len(e)
        self.var_of = e[:, 0]
        self.chk_of = e[:, 1]
        self.vidx = self._table(self.var_of, self.n)
        self.cidx = self._table(self.chk_of, self.m)
        flat = self.cidx.ravel()
        self.c_valid = flat < self.E
        self.c_edges = flat[self.c_valid]
        flat = self.vidx.ravel()
        self.v_valid = flat < self.E
        self.v_edges = flat[self.v_valid]

    def _table(self, owner, count):
        order = np.argsort(owner, kind="stable")
        deg = np.bincount(owner, minlength=count)
        width = max(1, int(deg.max(initial=0)))
        T = np.full((count, width), self.E, dtype=np.int64)
        starts = np.concatenate([[0], np.cumsum(deg)[:-1]])
        slot = np.arange(self.E) - np.repeat(starts, deg)
        T[owner[order], slot] = order
        return T

    def syndrome(self, words: np.ndarray, p: int) -> np.ndarray:
        """``(B, m)`` syndromes of ``(B, n)`` words."""
        B = words.shape[0]
        pad = np.zeros((B, self.E + 1), dtype=np.int64)
        pad[:, : self.E] = words[:, self.var_of]
        return pad[:, self.cidx].sum(axis=2) % p


_LAYOUTS: dict = {}


def layout(H) -> _Layout:
    """Cached edge layout for a parity-check matrix or graph."""
    if isinstance(H, TannerGraph):
        key = ("g", H.n_var, H.n_chk, H.var_adj)
    else:
        if sparse.issparse(H):
            H = H.toarray()
        A = np.asarray(H) != 0
        key = ("h", A.shape, np.packbits(A).tobytes())
    lay = _LAYOUTS.get(key)
    if lay is None:
        if len(_LAYOUTS) > 64:
            _LAYOUTS.clear()
        lay = _LAYOUTS[key] = _Layout(H)
    return lay


def _leave_one_out(X: np.ndarray, op, axis: int, identity: float) -> np.ndarray:
    """Combine all entries except one along ``axis`` with prefix/suffix scans."""
    X = np.moveaxis(X, axis, -1)
    ones = np.full(X.shape[:-1] + (1,), identity, dtype=X.dtype)
    pre = op.accumulate(np.concatenate([ones, X[..., :-1]], axis=-1), axis=-1)
    suf = op.accumulate(np.concatenate([ones, X[..., :0:-1]], axis=-1), axis=-1)[..., ::-1]
    return np.moveaxis(op(pre, suf), -1, axis)


def _check_minsum(X: np.ndarray) -> np.ndarray:
    mag = np.abs(X)
    neg = X < 0
    i1 = np.argmin(mag, axis=-1)
    m1 = np.take_along_axis(mag, i1[..., None], axis=-1)
    masked = mag.copy()
    np.put_along_axis(masked, i1[..., None], np.inf, axis=-1)
    m2 = masked.min(axis=-1, keepdims=True)
    out = np.where(np.arange(X.shape[-1]) == i1[..., None], m2, m1)
    parity = np.logical_xor.reduce(neg, axis=-1, keepdims=True)
    out = np.minimum(out, LLR_CLIP)
    return np.where(parity ^ neg, -out, out)


def _check_tanh(X: np.ndarray) -> np.ndarray:
    t = np.tanh(np.clip(X, -LLR_CLIP, LLR_CLIP) / 2.0)
    prod = _leave_one_out(t, np.multiply, -1, 1.0)
    return 2.0 * np.arctanh(np.clip(prod, -_TANH_CLIP, _TANH_CLIP))


def _binary_batch(lay: _Layout, llr: np.ndarray, max_iter: int, check) -> BatchResult:
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    llr = np.atleast_2d(np.asarray(llr, dtype=float))
    if llr.shape[1] != lay.n:
        raise ValueError(f"expected {lay.n} LLRs per frame, got {llr.shape[1]}")
    B, E = llr.shape[0], lay.E
    words = (llr < 0).astype(np.int64)
    conv = np.zeros(B, dtype=bool)
    iters = np.full(B, max_iter, dtype=np.int64)
    active = np.arange(B)
    L = np.clip(llr, -LLR_CLIP, LLR_CLIP)
    v2c = L[:, lay.var_of]
    neutral = np.inf if check is _check_minsum else LLR_CLIP
    for it in range(1, max_iter + 1):
        b = len(active)
        pad = np.empty((b, E + 1))
        pad[:, :E] = v2c
        pad[:, E] = neutral
        out = check(pad[:, lay.cidx]).reshape(b, -1)
        c2v = np.empty((b, E + 1))
        c2v[:, lay.c_edges] = out[:, lay.c_valid]
        c2v[:, E] = 0.0
        total = L[active] + c2v[:, lay.vidx].sum(axis=2)
        v2c = total[:, lay.var_of] - c2v[:, :E]
        hard = (total < 0).astype(np.int64)
        ok = ~lay.syndrome(hard, 2).any(axis=1)
        words[active] = hard
        done = active[ok]
        conv[done] = True
        iters[done] = it
        active = active[~ok]
        v2c = v2c[~ok]
        if not len(active):
            break
    return BatchResult(words, conv, iters)


def min_sum_batch(H, llr, max_iter: int = 200) -> BatchResult:
    """Min-sum decoding of a ``(B, n)`` stack of channel LLRs (positive favours 0)."""
    return _binary_batch(layout(H), llr, max_iter, _check_minsum)


def sum_product_binary_batch(H, llr, max_iter: int = 200) -> BatchResult:
    """Tanh-rule sum-product decoding of a ``(B, n)`` stack of channel LLRs."""
    return _binary_batch(layout(H), llr, max_iter, _check_tanh)


def min_sum(H, llr, max_iter: int = 200) -> DecodeResult:
    """Min-sum decoding of one frame.

    Parameters
    ----------
    H : array_like or TannerGraph
        Binary parity-check matrix.
    llr : array_like
        Channel LLRs, ``log P(0)/P(1)``; a zero LLR decides 0.
    max_iter : int
        Iteration cap.
    """
    return min_sum_batch(H, np.asarray(llr, dtype=float)[None, :], max_iter)[0]


def sum_product_binary(H, llr, max_iter: int = 200) -> DecodeResult:
    """Tanh-rule sum-product decoding of one frame (see :func:`min_sum`)."""
    return sum_product_binary_batch(H, np.asarray(llr, dtype=float)[None, :], max_iter)[0]


# -- p-ary ---------------------------------------------------------------------


def _conv(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cyclic convolution over Z_p along the last axis."""
    p = x.shape[-1]
    out = x[..., :1] * y
    for a in range(1, p):
        out = out + x[..., a : a + 1] * np.roll(y, a, axis=-1)
    return out


def _normalize(P: np.ndarray) -> np.ndarray:
    s = P.sum(axis=-1, keepdims=True)
    p = P.shape[-1]
    return np.where(s > 0, P / np.where(s > 0, s, 1.0), 1.0 / p)


def _check_pary(X: np.ndarray) -> np.ndarray:
    """Messages to each slot of a ``(..., d, p)`` check neighbourhood."""
    d, p = X.shape[-2], X.shape[-1]
    delta = np.zeros(X.shape[:-2] + (1, p))
    delta[..., 0] = 1.0
    pre = [delta[..., 0, :]]
    for t in range(d - 1):
        pre.append(_normalize(_conv(pre[-1], X[..., t, :])))
    suf = [delta[..., 0, :]]
    for t in range(d - 1, 0, -1):
        suf.append(_normalize(_conv(suf[-1], X[..., t, :])))
    suf = suf[::-1]
    neg = (-np.arange(p)) % p
    out = np.stack([_conv(pre[t], suf[t])[..., neg] for t in range(d)], axis=-2)
    return _normalize(out)


def sum_product_pary_batch(H, p: int, likelihoods, max_iter: int = 200) -> BatchResult:
    """p-ary sum-product on a ``(B, n, p)`` stack of channel likelihoods."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    lay = layout(H)
    lik = np.asarray(likelihoods, dtype=float)
    if lik.ndim == 2:
        lik = lik[None]
    if lik.shape[1:] != (lay.n, p):
        raise ValueError(f"expected likelihoods of shape (B, {lay.n}, {p}), got {lik.shape}")
    lik = _normalize(lik)
    B, E = lik.shape[0], lay.E
    words = lik.argmax(axis=2)
    conv = np.zeros(B, dtype=bool)
    iters = np.full(B, max_iter, dtype=np.int64)
    active = np.arange(B)
    v2c = lik[:, lay.var_of, :]
    for it in range(1, max_iter + 1):
        b = len(active)
        pad = np.empty((b, E + 1, p))
        pad[:, :E] = v2c
        pad[:, E] = 0.0
        pad[:, E, 0] = 1.0
        out = _check_pary(pad[:, lay.cidx, :]).reshape(b, -1, p)
        c2v = np.ones((b, E + 1, p))
        c2v[:, lay.c_edges] = out[:, lay.c_valid]
        X = c2v[:, lay.vidx, :]  # (b, n, dv, p)
        excl = _leave_one_out(X, np.multiply, -2, 1.0)
        lik_a = lik[active]
        post = _normalize(lik_a * np.prod(X, axis=-2))
        msg = _normalize(lik_a[:, :, None, :] * excl).reshape(b, -1, p)
        v2c = np.empty((b, E, p))
        v2c[:, lay.v_edges] = msg[:, lay.v_valid]
        hard = post.argmax(axis=2)
        ok = ~lay.syndrome(hard, p).any(axis=1)
        words[active] = hard
        done = active[ok]
        conv[done] = True
        iters[done] = it
        active = active[~ok]
        v2c = v2c[~ok]
        if not len(active):
            break
    return BatchResult(words, conv, iters)


def sum_product_pary(H, p: int, likelihoods, max_iter: int = 200) -> DecodeResult:
    """p-ary sum-product decoding of one frame.

    Parameters
    ----------
    H : array_like or TannerGraph
        0/1 parity-check pattern read over GF(p).
    p : int
        Prime alphabet size.
    likelihoods : array_like, shape (n, p)
        Channel probabilities of each symbol value.
    """
    return sum_product_pary_batch(H, p, np.asarray(likelihoods, dtype=float)[None], max_iter)[0]


DECODERS = {
    "minsum": min_sum_batch,
    "spa": sum_product_binary_batch,
}
