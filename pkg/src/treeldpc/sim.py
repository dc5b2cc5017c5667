"""Seeded Monte-Carlo error-rate simulation.

The all-zero codeword is sent at every grid point.  Frames are grouped in
fixed-size batches; batch ``b`` of a point is counted only if the frame
errors of batches ``0..b-1`` are still below ``min_error_events``.  Because
each frame's noise comes from its own ``(seed, point, frame)`` stream and
the stopping rule reads batches in index order, the counts are identical
for any number of workers.
"""

from __future__ import annotations

import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import BiAwgn, FrameStreams, Psc
from .construct import ConstructionSpec, parse_config
from .decode import min_sum_batch, sum_product_binary_batch, sum_product_pary_batch
from .linalg import dimension, nullspace_basis, row_reduce
from .tanner import TannerGraph

log = logging.getLogger(__name__)

DECODER_NAMES = ("minsum", "spa", "spa-pary")
CHANNEL_NAMES = ("awgn", "psc")
CSV_HEADER = "family,n,k,p,decoder,channel,param,frames,bit_errors,ber,ser,fer,detected,undetected,avg_iters,seed"


@dataclass(frozen=True)
class SimConfig:
    """Everything that determines a simulation run.

    Parameters
    ----------
    code : ConstructionSpec or TannerGraph
        Code to simulate.
    p : int
        Alphabet the code is read over (2 for the binary decoders).
    decoder : {"minsum", "spa", "spa-pary"}
    channel : {"awgn", "psc"}
        ``grid`` holds Eb/N0 values in dB for ``awgn`` and transition
        probabilities for ``psc``.
    ber_denominator : {"n", "k"}
        Count errors over all ``n`` positions or only over an information set.
    batch : int
        Frames per batch; part of the result's identity, unlike ``workers``.
    """

    code: object
    grid: tuple
    p: int = 2
    decoder: str = "minsum"
    channel: str = "awgn"
    max_iter: int = 200
    max_frames: int = 100_000
    min_error_events: int = 100
    seed: int = 0
    workers: int = 1
    batch: int = 1000
    ber_denominator: str = "n"
    family: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))
        if self.decoder not in DECODER_NAMES:
            raise ValueError(f"decoder must be one of {', '.join(DECODER_NAMES)}")
        if self.channel not in CHANNEL_NAMES:
            raise ValueError(f"channel must be one of {', '.join(CHANNEL_NAMES)}")
        if self.max_iter < 1 or self.min_error_events < 1 or self.max_frames < 1:
            raise ValueError("max_iter, min_error_events and max_frames must be >= 1")
        if self.batch < 1 or self.workers < 1:
            raise ValueError("batch and workers must be >= 1")
        if self.ber_denominator not in ("n", "k"):
            raise ValueError("ber_denominator must be 'n' or 'k'")
        if self.decoder == "spa-pary":
            if self.channel != "psc":
                raise ValueError("the p-ary decoder runs on the psc channel")
        elif self.p != 2:
            raise ValueError(f"decoder {self.decoder} is binary; use spa-pary for p={self.p}")
        if self.channel == "psc" and any(not 0 <= e <= 1 for e in self.grid):
            raise ValueError("psc grid values are probabilities in [0, 1]")

    def graph(self) -> TannerGraph:
        return self.code if isinstance(self.code, TannerGraph) else self.code.build()

    @property
    def family_label(self) -> str:
        if self.family:
            return self.family
        if isinstance(self.code, ConstructionSpec):
            c = self.code
            return f"{c.family}-ell{c.ell}" if c.family == "type1a" else f"{c.family}-{c.p}^{c.s}"
        return "custom"


@dataclass
class PointResult:
    """Integer counts at one grid point; rates are derived."""

    param: float
    frames: int = 0
    bit_errors: int = 0
    symbol_errors: int = 0
    frame_errors: int = 0
    detected: int = 0
    undetected: int = 0
    iterations: int = 0
    positions: int = 1  # counted positions per frame
    bits_per_symbol: int = 1

    def add(self, other: "PointResult") -> None:
        for name in ("frames", "bit_errors", "symbol_errors", "frame_errors", "detected", "undetected", "iterations"):
            setattr(self, name, getattr(self, name) + getattr(other, name))

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.positions * self.bits_per_symbol) if self.frames else 0.0

    @property
    def ser(self) -> float:
        return self.symbol_errors / (self.frames * self.positions) if self.frames else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def avg_iters(self) -> float:
        return self.iterations / self.frames if self.frames else 0.0

    def ber_interval(self, z: float = 1.959964) -> tuple[float, float]:
        return wilson(self.bit_errors, self.frames * self.positions * self.bits_per_symbol, z)

    def fer_interval(self, z: float = 1.959964) -> tuple[float, float]:
        return wilson(self.frame_errors, self.frames, z)


@dataclass
class SimResult:
    config: SimConfig
    n: int
    k: int
    points: list[PointResult] = field(default_factory=list)


def wilson(successes: int, trials: int, z: float = 1.959964) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    ph = successes / trials
    den = 1 + z * z / trials
    mid = (ph + z * z / (2 * trials)) / den
    half = z * math.sqrt(ph * (1 - ph) / trials + z * z / (4 * trials * trials)) / den
    return max(0.0, mid - half), min(1.0, mid + half)


# -- worker side ----------------------------------------------------------------


@dataclass(frozen=True)
class _Job:
    H: np.ndarray
    p: int
    decoder: str
    channel: str
    rate: float
    max_iter: int
    seed: int
    counted: np.ndarray  # positions included in the error counts


def _run_batch(job: _Job, point: int, param: float, start: int, stop: int) -> PointResult:
    n = job.H.shape[1]
    streams = FrameStreams(job.seed, point)
    count = stop - start
    if job.channel == "awgn":
        chan = BiAwgn(param, job.rate)
        y = np.empty((count, n))
        for i, f in enumerate(range(start, stop)):
            y[i] = chan.transmit(np.zeros(n, dtype=np.int64), streams(f))
        inputs = chan.llr(y)
    else:
        chan = Psc(job.p, param)
        r = np.empty((count, n), dtype=np.int64)
        for i, f in enumerate(range(start, stop)):
            r[i] = chan.transmit(np.zeros(n, dtype=np.int64), streams(f))
        inputs = chan.likelihoods(r) if job.decoder == "spa-pary" else chan.llr(r)
    if job.decoder == "minsum":
        res = min_sum_batch(job.H, inputs, job.max_iter)
    elif job.decoder == "spa":
        res = sum_product_binary_batch(job.H, inputs, job.max_iter)
    else:
        res = sum_product_pary_batch(job.H, job.p, inputs, job.max_iter)
    words = res.words
    wrong = words.any(axis=1)
    counted = words[:, job.counted]
    # symbols differ from 0 in as many bits as their binary expansion has ones
    bits = np.bitwise_count(counted.astype(np.uint64)).sum() if job.p > 2 else np.count_nonzero(counted)
    return PointResult(
        param=param,
        frames=count,
        bit_errors=int(bits),
        symbol_errors=int(np.count_nonzero(counted)),
        frame_errors=int(wrong.sum()),
        detected=int((~res.converged).sum()),
        undetected=int((res.converged & wrong).sum()),
        iterations=int(res.iterations.sum()),
    )


def _call(args):
    return _run_batch(*args)


# -- driver ---------------------------------------------------------------------


def information_set(H, p: int) -> np.ndarray:
    """Pivot columns of a systematic generator: positions carrying the message."""
    B = nullspace_basis(H, p)
    if B.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    _, piv = row_reduce(B, p)
    return np.array(sorted(piv), dtype=np.int64)


def run(config: SimConfig) -> SimResult:
    """Simulate every grid point of ``config``.

    Returns
    -------
    SimResult
        Counts per grid point; identical for any ``config.workers``.
    """
    G = config.graph()
    H = G.to_matrix().astype(np.int64)
    n = G.n_var
    k = dimension(H, config.p)
    if k == 0:
        raise ValueError("code has dimension 0; nothing to simulate")
    counted = np.arange(n) if config.ber_denominator == "n" else information_set(H, config.p)
    job = _Job(H, config.p, config.decoder, config.channel, k / n, config.max_iter, config.seed, counted)
    result = SimResult(config, n, k)
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        for point, param in enumerate(config.grid):
            acc = PointResult(param, positions=len(counted), bits_per_symbol=max(1, (config.p - 1).bit_length()))
            starts = list(range(0, config.max_frames, config.batch))
            i = 0
            while i < len(starts) and acc.frame_errors < config.min_error_events:
                wave = starts[i : i + config.workers]
                args = [(job, point, param, s, min(s + config.batch, config.max_frames)) for s in wave]
                parts = list(pool.map(_call, args)) if pool else [_call(a) for a in args]
                for part in parts:
                    # later batches of a wave are dropped once the target is met
                    if acc.frame_errors >= config.min_error_events:
                        break
                    acc.add(part)
                i += len(wave)
            log.info(
                "point %d (%s=%g): %d frames, %d frame errors",
                point, "ebn0" if config.channel == "awgn" else "eps", param, acc.frames, acc.frame_errors,
            )
            result.points.append(acc)
    finally:
        if pool:
            pool.shutdown()
    return result


# -- CSV ------------------------------------------------------------------------


def emit_csv(result: SimResult) -> str:
    """One header line plus one row per grid point, fixed formatting."""
    c = result.config
    chan = c.channel if c.ber_denominator == "n" else f"{c.channel}[k]"
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for pt in result.points:
        out.write(
            f"{c.family_label},{result.n},{result.k},{c.p},{c.decoder},{chan},{pt.param:.6f},"
            f"{pt.frames},{pt.bit_errors},{pt.ber:.6e},{pt.ser:.6e},{pt.fer:.6e},"
            f"{pt.detected},{pt.undetected},{pt.avg_iters:.4f},{c.seed}\n"
        )
    return out.getvalue()


def parse_csv(text: str) -> list[dict]:
    """Rows of an emitted CSV with integer and float columns converted."""
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    cols = CSV_HEADER.split(",")
    ints = {"n", "k", "p", "frames", "bit_errors", "detected", "undetected", "seed"}
    floats = {"param", "ber", "ser", "fer", "avg_iters"}
    rows = []
    for ln in lines[1:]:
        vals = ln.split(",")
        row = {}
        for key, v in zip(cols, vals):
            row[key] = int(v) if key in ints else float(v) if key in floats else v
        rows.append(row)
    return rows


# -- config files ---------------------------------------------------------------

_SIM_KEYS = {
    "decoder": str,
    "channel": str,
    "grid": str,
    "ebn0": str,
    "epsilon": str,
    "alphabet": str,
    "max_iter": int,
    "max_frames": int,
    "min_error_events": int,
    "seed": int,
    "workers": int,
    "batch": int,
    "ber_denominator": str,
}


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.replace(" ", "").split(",") if x)


def parse_sim_config(text: str, **overrides) -> SimConfig:
    """Simulation config from ``key=value`` lines.

    Code keys are those of :func:`treeldpc.construct.parse_config`; the
    remaining keys are decoder, channel, ebn0 or epsilon (comma lists),
    alphabet (binary or pary), max_iter, max_frames, min_error_events,
    seed, workers, batch and ber_denominator.
    """
    spec = parse_config(text)
    vals: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if "=" not in line:
            continue
        key, val = (x.strip() for x in line.split("=", 1))
        key = key.lower()
        if key in _SIM_KEYS:
            try:
                vals[key] = _SIM_KEYS[key](val)
                if key in ("grid", "ebn0", "epsilon"):
                    vals[key] = _floats(val)
            except ValueError:
                raise ValueError(f"line {lineno}: bad value for {key}: {val!r}") from None
    vals.update({k: v for k, v in overrides.items() if v is not None})
    channel = vals.get("channel", "awgn")
    grid = vals.get("grid") or vals.get("ebn0" if channel == "awgn" else "epsilon")
    if not grid:
        raise ValueError("config needs a grid (ebn0=... or epsilon=...)")
    alphabet = vals.pop("alphabet", "binary")
    p = spec.natural_p if alphabet == "pary" else 2
    kw = {k: vals[k] for k in ("decoder", "max_iter", "max_frames", "min_error_events", "seed", "workers", "batch", "ber_denominator") if k in vals}
    return SimConfig(code=spec, grid=grid, p=p, channel=channel, **kw)
