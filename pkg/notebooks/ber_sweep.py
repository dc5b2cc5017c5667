"""
Error rates over the AWGN channel
=================================

Min-sum and sum-product decoding of the [21,11] plane code at three
signal-to-noise ratios, each point run until 100 frame errors.  Takes
about a minute on one core.
"""

# %%
from treeldpc.construct import ConstructionSpec
from treeldpc.sim import SimConfig, emit_csv, run

code = ConstructionSpec("type2l3", p=2, s=2)

# %%
results = {}
for decoder in ("minsum", "spa"):
    cfg = SimConfig(code=code, decoder=decoder, grid=(2.0, 4.0, 6.0), min_error_events=100,
                    max_frames=2_000_000, batch=5000, seed=2024)
    results[decoder] = run(cfg)
    print(emit_csv(results[decoder]))

# %%
# 95% Wilson intervals; they separate cleanly between points
for decoder, res in results.items():
    for pt in res.points:
        lo, hi = pt.ber_interval()
        print(f"{decoder:>6} {pt.param:4.1f} dB  BER {pt.ber:.2e}  [{lo:.2e}, {hi:.2e}]  iters {pt.avg_iters:.2f}")

# %%
# the same harness runs the GF(3) decoder on the symmetric channel
cfg = SimConfig(code=ConstructionSpec("type1b", p=3), p=3, decoder="spa-pary", channel="psc",
                grid=(0.05, 0.1, 0.2), min_error_events=50, max_frames=200_000, batch=2000)
print(emit_csv(run(cfg)))
