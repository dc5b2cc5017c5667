import numpy as np
import pytest

from treeldpc.channel import BiAwgn, FrameStreams, Psc, llr, psc_likelihoods, psc_transmit, stream


def test_sigma_formula():
    ch = BiAwgn(0.0, 0.5)
    assert ch.sigma == pytest.approx(1.0)
    ch = BiAwgn(3.0, 1.0)
    assert ch.sigma**2 == pytest.approx(1 / (2 * 10**0.3))
    with pytest.raises(ValueError):
        BiAwgn(1.0, 0.0)


def test_llr_formula():
    assert llr(np.array([1.0]), 1.0)[0] == 2.0
    assert llr(np.array([-0.5]), 0.5)[0] == pytest.approx(-4.0)


def test_noiseless_limit_recovers_bpsk():
    bits = np.array([0, 1, 1, 0, 1])
    y = BiAwgn(200.0, 0.5).transmit(bits, stream(1, 0, 0))
    assert np.array_equal(np.sign(y), 1 - 2 * bits)


def test_mean_of_all_zero_word():
    ch = BiAwgn(2.0, 0.5)
    y = ch.transmit(np.zeros(10_000, dtype=int), stream(3, 0, 0))
    assert abs(y.mean() - 1.0) < 3 * ch.sigma / np.sqrt(y.size)


def test_psc_identity_and_forced_flip():
    x = np.array([0, 1, 1, 0])
    assert np.array_equal(psc_transmit(x, Psc(2, 0.0), stream(0, 0, 0)), x)
    assert np.array_equal(psc_transmit(x, Psc(2, 1.0), stream(0, 0, 0)), 1 - x)
    r = Psc(3, 1.0).transmit(np.zeros(1000, dtype=int), stream(0, 0, 1))
    assert (r != 0).all() and set(r.tolist()) == {1, 2}


def test_psc_error_rate():
    r = Psc(3, 0.1).transmit(np.zeros(100_000, dtype=int), stream(9, 1, 2))
    assert abs(np.mean(r != 0) - 0.1) < 0.01


@pytest.mark.parametrize("p,eps", [(2, 0.1), (3, 0.3), (7, 0.0), (5, 1.0)])
def test_likelihood_rows_sum_to_one(p, eps):
    r = np.arange(10) % p
    L = psc_likelihoods(r, Psc(p, eps))
    assert np.allclose(L.sum(axis=1), 1.0, atol=1e-15)
    assert np.allclose(L[np.arange(10), r], 1 - eps)


def test_psc_validation():
    with pytest.raises(ValueError):
        Psc(3, 1.5)
    with pytest.raises(ValueError):
        Psc(3, 0.1).llr([0])


def test_streams_reproducible_and_distinct():
    a = stream(5, 2, 17).standard_normal(8)
    b = stream(5, 2, 17).standard_normal(8)
    c = stream(5, 2, 18).standard_normal(8)
    d = stream(5, 3, 17).standard_normal(8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c) and not np.array_equal(a, d)


def test_reusable_streams_match_fresh_streams():
    fs = FrameStreams(11, 4)
    for f in (0, 7, 3, 7, 1000):
        assert np.array_equal(fs(f).standard_normal(5), stream(11, 4, f).standard_normal(5))
        assert np.array_equal(fs(f).random(3), stream(11, 4, f).random(3))
