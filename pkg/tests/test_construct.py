import warnings

import numpy as np
import pytest

from treeldpc.construct import (
    ConstructionSpec,
    Permutation,
    build,
    builtin_permutations,
    eg2,
    expected_size,
    gf9_alpha_choice,
    parse_config,
    parse_cycles,
    type1a,
    type1b,
    type2_l3,
    type2_l4,
    witness_codeword,
)
from treeldpc.gf import field_new
from treeldpc.linalg import is_codeword
from treeldpc.tanner import StructureError


def test_parse_cycles_examples():
    assert parse_cycles("(0)(2)(1,3)", 4).map == (0, 3, 2, 1)
    assert parse_cycles("(0)(123)", 4).map == (0, 2, 3, 1)
    assert parse_cycles("", 3) == Permutation.identity(3)


@pytest.mark.parametrize("text", ["(0,1)(1,2)", "(0)(5)", "(0)(1,1)"])
def test_parse_cycles_errors(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 3)


def test_permutation_cycles_round_trip():
    P = parse_cycles("(0,4)(2,6)(1,3)(5,7)", 8)
    assert parse_cycles(str(P), 8) == P
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_builtin_permutations():
    pi, tau, tau1, tau2 = builtin_permutations(6)
    assert pi == tau == tau1 == tau2 == Permutation.identity(2)
    assert builtin_permutations(10)[3] == parse_cycles("(0,4)(2,6)(1,3)(5,7)", 8)
    pi12 = builtin_permutations(12)[0]
    assert all(pi12(x) == x for x in (0, 4, 8, 12))
    with pytest.raises(ValueError):
        builtin_permutations(14)


@pytest.mark.parametrize("ell,n,girth", [(3, 10, 6), (4, 22, 8), (5, 46, 10), (6, 94, 12)])
def test_type1a(ell, n, girth):
    G = type1a(ell)
    assert G.n_var == n == G.n_chk
    assert G.is_regular(3)
    assert G.girth() == girth
    assert G.is_transpose_consistent()


def test_type1a_ell7_needs_perms_and_warns():
    with pytest.raises(ValueError):
        type1a(7)
    ident = [Permutation.identity(32)] * 4
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        G = type1a(7, ident)
    assert any("girth" in str(x.message) for x in w)
    assert G.n_var == expected_size(ConstructionSpec("type1a", ell=7))
    with pytest.raises(ValueError):
        type1a(8)


def test_type1a_custom_permutation_size_checked():
    with pytest.raises(ValueError):
        type1a(4, [Permutation.identity(3)] * 4)


TYPE1B = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


@pytest.mark.parametrize("p,s", TYPE1B)
def test_type1b_counts_and_regularity(p, s):
    G = type1b(p, s)
    q = p**s
    assert G.n_var == q * q + 1 == G.n_chk
    assert G.is_regular(q)
    if q >= 3:
        assert G.girth() == 6


def test_type1b_2_1_measured_girth():
    # the smallest instance is a single 10-cycle
    G = type1b(2, 1)
    assert G.girth() == 10 and G.diameter() == 5


TYPE2L3 = [(2, 1), (2, 2), (3, 1), (2, 3), (5, 1), (7, 1), (3, 2)]


@pytest.mark.parametrize("p,s", TYPE2L3)
def test_type2_l3_is_projective_plane(p, s):
    G = type2_l3(p, s)
    q = p**s
    assert G.n_var == 1 + q + q * q == G.n_chk
    assert G.is_regular(q + 1)
    assert G.girth() == 6
    # any two points share exactly one line
    H = G.to_matrix().astype(np.int64)
    M = H.T @ H
    assert (M[~np.eye(G.n_var, dtype=bool)] == 1).all()


def test_type2_l3_diameter():
    assert type2_l3(2, 1).diameter() == 3
    assert type2_l3(2, 2).diameter() == 3


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_type2_l4(p, s):
    G = type2_l4(p, s)
    q = p**s
    assert G.n_var == 1 + q + q * q + q**3 == G.n_chk
    assert G.is_regular(q + 1)
    assert G.girth() == 8
    if q <= 3:
        assert G.diameter() == 4


def test_type2_l4_gf9_records_choice():
    G = type2_l4(3, 2)
    assert G.girth() == 8 and G.is_regular(10)
    e = gf9_alpha_choice()
    F = field_new(3, 2)
    # the constant that works is -1, i.e. one half in characteristic 3
    assert F.power(e) == F.neg(F.one.index)


def test_type2_l4_named_and_custom_maps():
    F = field_new(2, 1)
    custom = type2_l4(2, 1, f=lambda i, j, k, t: F.add(j, F.mul(F.add(i, 1), t)))
    assert custom == type2_l4(2, 1)
    assert type2_l4(2, 1, f="shifted") == type2_l4(2, 1)
    with pytest.raises(ValueError, match="not well defined"):
        type2_l4(2, 1, f=lambda i, j, k, t: 0 * i)
    with pytest.raises(ValueError):
        type2_l4(11, 1)


@pytest.mark.parametrize("p,s,n", [(2, 1, 3), (2, 2, 15), (3, 1, 8), (2, 3, 63)])
def test_eg2(p, s, n):
    G = eg2(p, s)
    q = p**s
    assert G.n_var == n == q * q - 1
    assert G.is_regular(q)
    if q > 2:
        assert G.girth() == 6


@pytest.mark.parametrize(
    "spec",
    [
        ConstructionSpec("type1a", ell=4),
        ConstructionSpec("type1b", p=3, s=1),
        ConstructionSpec("type2l3", p=2, s=2),
        ConstructionSpec("type2l4", p=2, s=1),
        ConstructionSpec("eg2", p=2, s=2),
    ],
)
def test_expected_size_matches_build(spec):
    G = build(spec)
    assert G.n_var == expected_size(spec)
    assert G.is_regular(spec.degree)


def test_spec_validation():
    with pytest.raises(ValueError):
        ConstructionSpec("type1b", p=4)
    with pytest.raises(ValueError):
        ConstructionSpec("type1a", ell=2)
    with pytest.raises(ValueError):
        ConstructionSpec("nope", p=2)
    assert ConstructionSpec("PG", p=2).family == "type2l3"


def test_parse_config():
    spec = parse_config("# a comment\nfamily = type2l3\np=2\ns=2\ndecoder=minsum  # kept\n")
    assert spec == ConstructionSpec("type2l3", p=2, s=2)
    assert spec.extra["decoder"] == "minsum"
    spec = parse_config("family=type1a\nell=4\npi=(0)(1)(2)(3)\n")
    assert spec.perms[0] == Permutation.identity(4)


@pytest.mark.parametrize(
    "text,line",
    [
        ("family=type1b\np=x\n", 2),
        ("family=type1b\n\nbroken line\n", 3),
        ("p=3\n\nfamily=oops\n", 3),
    ],
)
def test_parse_config_errors_carry_line_numbers(text, line):
    with pytest.raises(ValueError, match=f"line {line}"):
        parse_config(text)


# -- witnesses -------------------------------------------------------------------

WITNESS_CASES = (
    [("type1b", p, s, "binary") for p, s in TYPE1B]
    + [("type1b", p, s, "pary") for p, s in TYPE1B]
    + [("type2l3", 2, s, "binary") for s in (1, 2, 3, 4)]
    + [("type2l3", p, s, "pary") for p, s in [(3, 1), (5, 1), (7, 1), (3, 2)]]
)


def witness_weight(family, p, s, alphabet):
    q = p**s
    if family == "type1b":
        return 2 * (q - 1) if alphabet == "binary" and p > 2 else 2 * q + 1
    return q + 2 if p == 2 else 2 * q


@pytest.mark.parametrize("family,p,s,alphabet", WITNESS_CASES)
def test_witness_codewords(family, p, s, alphabet):
    spec = ConstructionSpec(family, p=p, s=s)
    G = spec.build()
    w = witness_codeword(spec, alphabet, graph=G)
    field_p = p if alphabet == "pary" else 2
    assert is_codeword(G.to_matrix(), w, field_p)
    assert np.count_nonzero(w) == witness_weight(family, p, s, alphabet)


def test_witness_unsupported():
    with pytest.raises(ValueError):
        witness_codeword(ConstructionSpec("type2l3", p=3), "binary")
    with pytest.raises(ValueError):
        witness_codeword(ConstructionSpec("type1a", ell=3), "binary")


def test_type1b_labels_present():
    G = type1b(2, 2)
    labels = set(G.var_labels) | set(G.chk_labels)
    assert "root" in labels and "root'_c" in labels
    from treeldpc.construct import _Builder

    b = _Builder()
    b.add_var("v")
    b.add_chk("c")
    b.connect("v", "c")
    with pytest.raises(StructureError):
        b.connect("v", "c")
