import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treeldpc.channel import BiAwgn, Psc, stream
from treeldpc.construct import type1a, type1b, type2_l3, type2_l4
from treeldpc.decode import (
    _check_pary,
    min_sum,
    min_sum_batch,
    sum_product_binary,
    sum_product_binary_batch,
    sum_product_pary,
    sum_product_pary_batch,
)
from treeldpc.linalg import _span_table, is_codeword, nullspace_basis

BINARY = [min_sum, sum_product_binary]


def codewords(G, p):
    return _span_table(nullspace_basis(G.to_matrix(), p), p)


@pytest.mark.parametrize("dec", BINARY)
@pytest.mark.parametrize("G", [type2_l3(2, 1), type1a(3), type2_l4(2, 1)], ids=["pg7", "1a3", "gq15"])
def test_binary_codeword_fixed_point(dec, G):
    H = G.to_matrix()
    for c in codewords(G, 2):
        r = dec(H, 4.0 * (1 - 2.0 * c))
        assert r.converged and r.iterations == 1
        assert np.array_equal(r.word, c)


@pytest.mark.parametrize("G,p", [(type1b(3, 1), 3), (type2_l3(3, 1), 3), (type1b(2, 2), 2)])
def test_pary_codeword_fixed_point(G, p):
    H = G.to_matrix()
    ch = Psc(p, 0.0)
    C = codewords(G, p)
    for c in C[:: max(1, len(C) // 50)]:
        r = sum_product_pary(H, p, ch.likelihoods(c))
        assert r.converged and r.iterations == 1
        assert np.array_equal(r.word, c)


@pytest.mark.parametrize("dec", BINARY)
def test_single_error_correction_pg7(dec):
    G = type2_l3(2, 1)
    H = G.to_matrix()
    for c in codewords(G, 2):
        for i in range(7):
            llr = 5.0 * (1 - 2.0 * c)
            llr[i] = -0.9 * llr[i]
            r = dec(H, llr)
            assert r.converged and np.array_equal(r.word, c)


def test_single_error_correction_ternary_type1b():
    G = type1b(3, 1)
    H = G.to_matrix()
    ch = Psc(3, 0.1)
    for c in codewords(G, 3):
        for i in range(G.n_var):
            for a in (1, 2):
                r = c.copy()
                r[i] = (r[i] + a) % 3
                out = sum_product_pary(H, 3, ch.likelihoods(r))
                assert out.converged and np.array_equal(out.word, c)


@pytest.mark.parametrize("dec", BINARY)
def test_zero_llr_follows_tie_rule(dec):
    r = dec(type2_l3(2, 1).to_matrix(), np.zeros(7))
    # every hard decision is 0, which is itself a codeword
    assert np.array_equal(r.word, np.zeros(7)) and r.converged


def test_uniform_likelihoods_follow_tie_rule():
    r = sum_product_pary(type1b(3, 1).to_matrix(), 3, np.full((10, 3), 1 / 3))
    assert np.array_equal(r.word, np.zeros(10))


def test_large_llrs_stay_finite():
    H = type2_l3(2, 2).to_matrix()
    llr = np.full(21, 1e3)
    llr[:3] = -1e3
    for dec in BINARY:
        r = dec(H, llr, max_iter=5)
        assert np.isfinite(r.word).all()
    r = sum_product_binary(H, np.full(21, 1e6))
    assert r.converged


def test_min_sum_and_spa_agree_at_high_snr():
    G = type2_l3(2, 1)
    H = G.to_matrix()
    ch = BiAwgn(7.0, 3 / 7)
    y = np.stack([ch.transmit(np.zeros(7, dtype=int), stream(2, 0, f)) for f in range(10_000)])
    a = min_sum_batch(H, ch.llr(y))
    b = sum_product_binary_batch(H, ch.llr(y))
    same = (a.words == b.words).all(axis=1)
    assert same.mean() >= 0.99


def test_batch_matches_single_frame():
    G = type2_l3(2, 2)
    H = G.to_matrix()
    ch = BiAwgn(1.0, 11 / 21)
    y = np.stack([ch.transmit(np.zeros(21, dtype=int), stream(4, 0, f)) for f in range(200)])
    L = ch.llr(y)
    for batch, single in ((min_sum_batch, min_sum), (sum_product_binary_batch, sum_product_binary)):
        B = batch(H, L, 20)
        for f in range(0, 200, 7):
            r = single(H, L[f], 20)
            assert np.array_equal(r.word, B.words[f])
            assert (r.converged, r.iterations) == (bool(B.converged[f]), int(B.iterations[f]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["minsum", "spa", "pary"]))
def test_converged_implies_codeword(seed, which):
    rng = np.random.default_rng(seed)
    G = type1b(3, 1)
    H = G.to_matrix()
    if which == "pary":
        lik = rng.dirichlet(np.ones(3), size=(8, 10))
        res = sum_product_pary_batch(H, 3, lik, 15)
        p = 3
    else:
        L = rng.normal(1.0, 2.0, size=(8, 10))
        res = (min_sum_batch if which == "minsum" else sum_product_binary_batch)(H, L, 15)
        p = 2
    for i in range(len(res)):
        if res.converged[i]:
            assert is_codeword(H, res.words[i], p)
        else:
            assert res.iterations[i] == 15


def test_check_messages_are_normalized():
    rng = np.random.default_rng(0)
    X = rng.dirichlet(np.ones(5), size=(4, 6))
    out = _check_pary(X)
    assert np.allclose(out.sum(axis=-1), 1.0, atol=1e-12)


def test_check_message_by_enumeration():
    # oracle: message to slot 0 is P(x_0 = v) where v = -(x_1 + x_2) mod p
    rng = np.random.default_rng(1)
    p = 3
    X = rng.dirichlet(np.ones(p), size=3)
    want = np.zeros(p)
    for a in range(p):
        for b in range(p):
            want[(-(a + b)) % p] += X[1, a] * X[2, b]
    assert np.allclose(_check_pary(X)[0], want / want.sum())


def test_degree_one_variable_passes_through():
    # v2 hangs off check 0 only
    H = np.array([[1, 1, 1], [1, 1, 0]])
    llr = np.array([3.0, 3.0, -0.5])
    for dec in BINARY:
        r = dec(H, llr)
        assert r.converged and np.array_equal(r.word, [0, 0, 0])


def test_bad_inputs():
    H = type2_l3(2, 1).to_matrix()
    with pytest.raises(ValueError):
        min_sum(H, np.zeros(6))
    with pytest.raises(ValueError):
        min_sum(H, np.zeros(7), max_iter=0)
    with pytest.raises(ValueError):
        sum_product_pary(H, 3, np.ones((7, 2)))
