"""Command-line entry point: ``python -m treeldpc <command> ...``."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from collections import Counter

import numpy as np

from . import construct, linalg, pseudo, sim
from .tanner import TannerGraph


class CliError(Exception):
    pass


def _add_code_args(ap: argparse.ArgumentParser) -> None:
    g = ap.add_argument_group("code")
    g.add_argument("--family", help="type1a, type1b, type2l3, type2l4 or eg2")
    g.add_argument("--ell", type=int, help="number of layers (type1a)")
    g.add_argument("--p", type=int, help="field characteristic")
    g.add_argument("--s", type=int, default=1, help="field extension degree (default 1)")
    g.add_argument("--f", default="builtin", help="four-layer map for type2l4 (builtin, linear, shifted)")
    g.add_argument("--config", help="key=value file describing the code")
    g.add_argument("--alist", help="read the graph from an alist file instead")


def _spec(args) -> construct.ConstructionSpec | None:
    if getattr(args, "alist", None):
        return None
    if args.config:
        with open(args.config) as fh:
            return construct.parse_config(fh.read())
    if not args.family:
        raise CliError("give --family (with --ell or --p/--s), --config or --alist")
    return construct.ConstructionSpec(family=args.family, ell=args.ell, p=args.p, s=args.s, f=args.f)


def _graph(args) -> tuple[construct.ConstructionSpec | None, TannerGraph]:
    spec = _spec(args)
    if spec is None:
        with open(args.alist) as fh:
            return None, TannerGraph.from_alist(fh.read())
    return spec, spec.build()


def _alphabet(args, spec) -> int:
    if getattr(args, "alphabet", "binary") == "pary":
        if spec is None:
            raise CliError("--alphabet pary needs a construction, not an alist")
        return spec.natural_p
    return 2


def _witnesses(spec, G, alphabet: str):
    if spec is None or spec.family not in ("type1b", "type2l3"):
        return []
    try:
        return [construct.witness_codeword(spec, alphabet, graph=G)]
    except ValueError:
        return []


def _fmt(x) -> str:
    if isinstance(x, float):
        return "inf" if math.isinf(x) else f"{x:.6f}"
    return str(x)


def cmd_construct(args) -> None:
    spec, G = _graph(args)
    vdeg, cdeg = G.degree_profile()
    print(f"n={G.n_var} checks={G.n_chk} edges={G.n_edges}")
    print("variable degrees: " + " ".join(f"{d}x{c}" for d, c in sorted(vdeg.items())))
    print("check degrees: " + " ".join(f"{d}x{c}" for d, c in sorted(cdeg.items())))
    if args.labels and G.var_labels:
        for i, adj in enumerate(G.var_adj):
            print(G.var_labels[i] + ": " + " ".join(G.chk_labels[c] for c in adj))
    if args.matrix:
        for row in G.to_matrix():
            print("".join(map(str, row)))


def analyze_report(spec, G: TannerGraph, p: int, cap: int) -> dict:
    """Table-style parameters of one code; shared by both output modes."""
    H = G.to_matrix()
    k = linalg.dimension(H, p)
    vdeg, cdeg = G.degree_profile()
    girth = G.girth()
    rep = {
        "family": spec.describe().replace(" ", ",") if spec else "alist",
        "alphabet": p,
        "n": G.n_var,
        "checks": G.n_chk,
        "k": k,
        "rate": k / G.n_var if G.n_var else 0.0,
        "d": min(vdeg) if vdeg else 0,
        "regular": G.is_regular(),
        "girth": girth,
        "diameter": G.diameter() if G.is_connected() else math.inf,
    }
    tb = pseudo.graph_tree_bound(G)
    rep["tree"] = tb if tb is not None else "n/a"
    res = linalg.min_distance(
        H, p, cap=cap, lower_bound=tb or 0, witnesses=_witnesses(spec, G, "pary" if p > 2 else "binary")
    )
    if res.exact:
        rep["d_min"] = res.value
    else:
        rep["d_min"] = "n/a"
        rep["d_min_lower"] = res.lower
        rep["d_min_upper"] = res.upper
    rep["d_min_method"] = res.method
    return rep


def cmd_analyze(args) -> None:
    spec, G = _graph(args)
    p = _alphabet(args, spec)
    rep = analyze_report(spec, G, p, args.cap)
    if args.kv:
        print(" ".join(f"{k}={_fmt(v)}" for k, v in rep.items()))
    else:
        width = max(map(len, rep))
        for k, v in rep.items():
            print(f"{k:<{width}}  {_fmt(v)}")


def cmd_mindist(args) -> None:
    spec, G = _graph(args)
    p = _alphabet(args, spec)
    tb = pseudo.graph_tree_bound(G) or 0
    res = linalg.min_distance(G.to_matrix(), p, cap=args.cap, lower_bound=tb, witnesses=_witnesses(spec, G, args.alphabet))
    print(res)
    if args.show_word and res.codeword is not None:
        print(" ".join(map(str, np.asarray(res.codeword).tolist())))


def cmd_bound(args) -> None:
    if args.d is not None and args.g is not None:
        print(pseudo.tree_bound(args.d, args.g))
        return
    _, G = _graph(args)
    tb = pseudo.graph_tree_bound(G)
    if tb is None:
        raise CliError("graph has girth below 6 or no cycles; the tree bound is undefined")
    print(tb)


def cmd_witness(args) -> None:
    spec, G = _graph(args)
    if spec is None:
        raise CliError("witness needs a construction, not an alist")
    w = construct.witness_codeword(spec, args.alphabet, graph=G)
    p = spec.natural_p if args.alphabet == "pary" else 2
    ok = linalg.is_codeword(G.to_matrix(), w, p)
    support = np.flatnonzero(w)
    print(f"weight={len(support)} syndrome_zero={ok} alphabet={p}")
    for i in support:
        lab = G.var_labels[i] if G.var_labels else str(i)
        print(f"{lab}={int(w[i])}")
    if not ok:
        raise CliError("witness vector has a nonzero syndrome")


def cmd_pseudo_sample(args) -> None:
    spec, G = _graph(args)
    p = _alphabet(args, spec)
    items = pseudo.sample_cover_pseudoweights(G, p, args.m, args.trials, args.seed, max_words=args.max_words)
    hist = Counter(w for _, w in items)
    tb = pseudo.graph_tree_bound(G)
    print(f"pseudocodewords={len(items)} partial={items.partial} tree={tb if tb is not None else 'n/a'}")
    if items:
        print(f"min_weight={min(hist)}")
    for w in sorted(hist):
        print(f"weight {w}: {hist[w]}")
    if args.dump:
        with open(args.dump, "w") as fh:
            for F, w in items:
                fh.write(F.dumps())


def cmd_simulate(args) -> None:
    over = dict(
        decoder=args.decoder,
        channel=args.channel,
        max_iter=args.max_iter,
        max_frames=args.max_frames,
        min_error_events=args.min_errors,
        seed=args.seed,
        workers=args.workers,
        batch=args.batch,
        ber_denominator=args.ber_denominator,
        alphabet=args.alphabet,
    )
    if args.ebn0:
        over["ebn0"] = sim._floats(args.ebn0)
    if args.epsilon:
        over["epsilon"] = sim._floats(args.epsilon)
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
    else:
        if not args.family:
            raise CliError("give --config or --family with its parameters")
        lines = [f"family={args.family}"]
        for key in ("ell", "p"):
            if getattr(args, key) is not None:
                lines.append(f"{key}={getattr(args, key)}")
        lines.append(f"s={args.s}")
        lines.append(f"f={args.f}")
        text = "\n".join(lines)
    cfg = sim.parse_sim_config(text, **over)
    sys.stdout.write(sim.emit_csv(sim.run(cfg)))


def cmd_export_alist(args) -> None:
    _, G = _graph(args)
    text = G.to_alist()
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treeldpc", description="Tree-based LDPC constructions and analysis.")
    ap.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph and summarise it")
    _add_code_args(c)
    c.add_argument("--labels", action="store_true", help="list each variable's checks by label")
    c.add_argument("--matrix", action="store_true", help="print the parity-check matrix")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="length, dimension, girth, diameter, tree bound, minimum distance")
    _add_code_args(a)
    a.add_argument("--alphabet", choices=("binary", "pary"), default="binary")
    a.add_argument("--cap", type=int, default=2**24, help="enumeration budget for the minimum distance")
    a.add_argument("--kv", action="store_true", help="single key=value line")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("mindist", help="minimum distance (exact or labelled bounds)")
    _add_code_args(m)
    m.add_argument("--alphabet", choices=("binary", "pary"), default="binary")
    m.add_argument("--cap", type=int, default=2**24)
    m.add_argument("--show-word", action="store_true", help="print a minimum-weight codeword when known")
    m.set_defaults(func=cmd_mindist)

    b = sub.add_parser("bound", help="tree bound from --d/--g or from a graph")
    _add_code_args(b)
    b.add_argument("--d", type=int, help="smallest variable degree")
    b.add_argument("--g", type=int, help="girth")
    b.set_defaults(func=cmd_bound)

    w = sub.add_parser("witness", help="low-weight witness codeword of type1b / type2l3")
    _add_code_args(w)
    w.add_argument("--alphabet", choices=("binary", "pary"), default="binary")
    w.set_defaults(func=cmd_witness)

    ps = sub.add_parser("pseudo-sample", help="pseudocodeword weights from random finite covers")
    _add_code_args(ps)
    ps.add_argument("--alphabet", choices=("binary", "pary"), default="binary")
    ps.add_argument("--m", type=int, default=2, help="cover degree")
    ps.add_argument("--trials", type=int, default=100)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--max-words", type=int, default=1 << 20)
    ps.add_argument("--dump", help="write the pseudocodewords to this file")
    ps.set_defaults(func=cmd_pseudo_sample)

    s = sub.add_parser("simulate", help="Monte-Carlo error rates as CSV on stdout")
    _add_code_args(s)
    s.add_argument("--alphabet", choices=("binary", "pary"))
    s.add_argument("--decoder", choices=sim.DECODER_NAMES)
    s.add_argument("--channel", choices=sim.CHANNEL_NAMES)
    s.add_argument("--ebn0", help="comma-separated Eb/N0 values in dB")
    s.add_argument("--epsilon", help="comma-separated symbol error probabilities")
    s.add_argument("--max-iter", type=int)
    s.add_argument("--max-frames", type=int)
    s.add_argument("--min-errors", type=int, help="frame errors to collect per point")
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--batch", type=int)
    s.add_argument("--ber-denominator", choices=("n", "k"))
    s.set_defaults(func=cmd_simulate)

    e = sub.add_parser("export-alist", help="write the graph in alist format")
    _add_code_args(e)
    e.add_argument("--out", help="output file ('-' or omitted for stdout)")
    e.set_defaults(func=cmd_export_alist)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except (CliError, ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"treeldpc: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
