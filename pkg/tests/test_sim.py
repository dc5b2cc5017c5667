import numpy as np
import pytest

from treeldpc.construct import ConstructionSpec, witness_codeword
from treeldpc.sim import (
    CSV_HEADER,
    PointResult,
    SimConfig,
    SimResult,
    emit_csv,
    information_set,
    parse_csv,
    parse_sim_config,
    run,
    wilson,
)

PG7 = ConstructionSpec("type2l3", p=2, s=1)


def small(**kw):
    base = dict(code=PG7, grid=(1.0, 3.0), max_frames=600, batch=100, min_error_events=20, seed=4)
    base.update(kw)
    return SimConfig(**base)


def test_zero_epsilon_gives_no_errors():
    r = run(small(channel="psc", grid=(0.0,), decoder="minsum"))
    pt = r.points[0]
    assert pt.frames == 600 and pt.frame_errors == 0 and pt.bit_errors == 0
    assert pt.avg_iters == 1.0


def test_zero_epsilon_pary():
    cfg = small(code=ConstructionSpec("type1b", p=3), p=3, channel="psc", decoder="spa-pary", grid=(0.0,))
    assert run(cfg).points[0].frame_errors == 0


@pytest.mark.parametrize("decoder", ["minsum", "spa"])
def test_conservation(decoder):
    r = run(small(decoder=decoder))
    for pt in r.points:
        assert pt.detected + pt.undetected == pt.frame_errors
        assert pt.bit_errors <= r.n * pt.frame_errors
        assert pt.symbol_errors == pt.bit_errors


def test_pary_conservation_and_bits():
    cfg = small(code=ConstructionSpec("type1b", p=3), p=3, channel="psc", decoder="spa-pary", grid=(0.2,))
    pt = run(cfg).points[0]
    assert pt.detected + pt.undetected == pt.frame_errors
    # symbols 1 and 2 differ from 0 in one bit each
    assert pt.bit_errors == pt.symbol_errors


def test_stopping_rule_reads_batches_in_order():
    r = run(small(grid=(-1.0,), min_error_events=30, batch=50))
    pt = r.points[0]
    assert pt.frame_errors >= 30
    assert pt.frames % 50 == 0
    # the batch before the last one had not yet reached the target
    if pt.frames == 50:
        return
    shorter = run(small(grid=(-1.0,), min_error_events=30, batch=50, max_frames=pt.frames - 50))
    assert shorter.points[0].frame_errors < 30


def test_determinism_across_workers():
    a = emit_csv(run(small(workers=1)))
    b = emit_csv(run(small(workers=3)))
    assert a == b
    assert a == emit_csv(run(small(workers=1)))


def test_different_seeds_differ():
    assert emit_csv(run(small(seed=1))) != emit_csv(run(small(seed=2)))


def test_csv_shape_and_round_trip():
    r = run(small())
    text = emit_csv(r)
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER and len(lines) == 3
    rows = parse_csv(text)
    for row, pt in zip(rows, r.points):
        assert row["frames"] == pt.frames
        assert row["bit_errors"] == pt.bit_errors
        assert row["detected"] == pt.detected and row["undetected"] == pt.undetected
        assert row["n"] == 7 and row["k"] == 3 and row["seed"] == 4


def test_empty_grid_gives_header_only():
    cfg = small()
    empty = SimResult(cfg, 7, 3, [])
    assert emit_csv(empty) == CSV_HEADER + "\n"


def test_one_point_two_lines():
    assert len(emit_csv(run(small(grid=(2.0,)))).splitlines()) == 2


def test_information_denominator():
    cfg = small(ber_denominator="k", grid=(1.0,))
    r = run(cfg)
    pt = r.points[0]
    assert pt.positions == 3
    assert "awgn[k]" in emit_csv(r)
    assert len(information_set(PG7.build().to_matrix(), 2)) == 3


def test_undetected_classification():
    # a point whose decoder output is a nonzero codeword counts as undetected
    cfg = small(grid=(-2.0,), min_error_events=30)
    pt = run(cfg).points[0]
    assert pt.undetected > 0


def test_witness_transmission_matches_all_zero_statistics():
    # with the channel symmetric, flipping the sign pattern of a codeword
    # leaves min-sum's error statistics unchanged frame by frame
    from treeldpc.channel import BiAwgn, stream
    from treeldpc.decode import min_sum_batch

    G = ConstructionSpec("type2l3", p=2, s=2).build()
    H = G.to_matrix()
    c = witness_codeword(ConstructionSpec("type2l3", p=2, s=2), "binary", graph=G)
    ch = BiAwgn(2.0, 11 / 21)
    y0 = np.stack([ch.transmit(np.zeros(21, dtype=int), stream(8, 0, f)) for f in range(2000)])
    yc = y0 * (1 - 2 * c)
    a = min_sum_batch(H, ch.llr(y0))
    b = min_sum_batch(H, ch.llr(yc))
    assert np.array_equal(a.words ^ c, b.words)
    assert np.array_equal(a.converged, b.converged)


def test_wilson_interval():
    lo, hi = wilson(50, 100)
    assert lo < 0.5 < hi
    assert wilson(0, 100)[0] == 0.0
    assert wilson(0, 0) == (0.0, 1.0)


@pytest.mark.parametrize(
    "kw",
    [
        dict(decoder="bogus"),
        dict(channel="fiber"),
        dict(max_iter=0),
        dict(min_error_events=0),
        dict(p=3),
        dict(decoder="spa-pary"),
        dict(channel="psc", grid=(1.5,)),
        dict(ber_denominator="x"),
    ],
)
def test_invalid_configs(kw):
    with pytest.raises(ValueError):
        small(**kw)


def test_parse_sim_config():
    cfg = parse_sim_config(
        "family=type2l3\np=2\ns=1\ndecoder=spa\nebn0=1, 2,3\nseed=9\nmax_frames=100\n# comment\n"
    )
    assert cfg.grid == (1.0, 2.0, 3.0) and cfg.decoder == "spa" and cfg.seed == 9
    cfg = parse_sim_config("family=type1b\np=3\nalphabet=pary\nchannel=psc\ndecoder=spa-pary\nepsilon=0.1\n")
    assert cfg.p == 3
    with pytest.raises(ValueError, match="line 3"):
        parse_sim_config("family=type2l3\np=2\nseed=abc\nebn0=1\n")
    with pytest.raises(ValueError, match="grid"):
        parse_sim_config("family=type2l3\np=2\n")


def test_point_rates():
    pt = PointResult(1.0, frames=10, bit_errors=7, symbol_errors=7, frame_errors=2, iterations=30, positions=7)
    assert pt.ber == 0.1 and pt.fer == 0.2 and pt.avg_iters == 3.0
