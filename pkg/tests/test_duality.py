import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_tate.duality import (CosetGroup, classify_grouplikes, comult, delta, enumerate_grouplikes,
                                identity, is_grouplike_exp, make_xb, pairing_matrix, tensor,
                                verify_level_compat, verify_perfect, xb_exponents)
from padic_tate.errors import BadParameter, ConductorTooSmall
from padic_tate.localfield import LocalFieldParams

from conftest import PARAMS, Q3, each_config


def test_pairing_matrix_q3():
    P = Q3
    m = pairing_matrix(P, 0, 1)
    z = P.ring.zeta_root(1, 3)
    assert m == [[1, 1, 1], [1, z, z * z], [1, z * z, z]]
    assert verify_perfect(P, 0, 1)
    assert verify_perfect(P, 0, 0)


def test_comult_examples():
    G = CosetGroup(Q3, 0, 1)
    c = comult(delta(G, 0))
    assert {k for k, v in c.items() if v == 1} == {(0, 0), (1, 2), (2, 1)}
    assert all(v == 1 for v in comult(identity(G)).values())
    zero = delta(G, 0) + delta(G, 0)
    zero = type(zero)(G, tuple(x - x for x in zero.coeffs))
    assert all(v == 0 for v in comult(zero).values())


def test_idempotents():
    G = CosetGroup(Q3, 0, 2)
    for a in G.reps[:3]:
        for b in G.reps[:3]:
            prod = delta(G, a) * delta(G, b)
            assert prod == (delta(G, a) if a == b else type(prod)(G, (Q3.ring.zero,) * G.size))


def test_xb_examples():
    G = CosetGroup(Q3, 1, 1)
    assert make_xb(G, Q3.K.zero) == identity(G)
    with pytest.raises(BadParameter):
        make_xb(G, Q3.K.pi_pow(-2))


@each_config
@given(data=st.data())
def test_xb_grouplike_and_multiplicative(P, data):
    G = CosetGroup(P, 1, 1)
    D = G.dual()
    b = data.draw(st.sampled_from(D.reps))
    c = data.draw(st.sampled_from(D.reps))
    xb, xc = make_xb(G, b), make_xb(G, c)
    assert comult(xb) == tensor(xb, xb)
    assert xb * xc == make_xb(G, b + c)


def test_level_compat_examples():
    assert verify_level_compat(Q3, 0, 1)
    assert verify_level_compat(Q3, 0, 0)
    assert verify_level_compat(Q3, 0, 2)
    with pytest.raises(ConductorTooSmall):
        verify_level_compat(LocalFieldParams(3, 1, 5, 1), 0, 1)


@each_config
def test_classification_small(P):
    for r, N in [(0, 1), (1, 1), (0, 2), (2, 0)]:
        info = classify_grouplikes(P, r, N)
        assert info["bijective"]
        assert info["grouplikes"] == info["order"] == info["dual_order"]
        assert verify_perfect(P, r, N)
        assert verify_level_compat(P, r, N)


def test_non_grouplike_rejected():
    G = CosetGroup(Q3, 0, 2)
    exps = list(xb_exponents(G, Q3.K.pi_pow(-2)))
    assert is_grouplike_exp(G, exps)
    exps[1] = (exps[1] + 1) % Q3.M
    assert not is_grouplike_exp(G, exps)
    assert len(enumerate_grouplikes(G)) == G.size
