from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_tate.errors import BadParameter, ZeroDilation
from padic_tate.stepfun import GeoTail, ShellFunction, StepFunction, vp_rational
from padic_tate.zeta import named_family

from conftest import Q3, each_config, elements, nonzero_elements, step_functions


def ind(P, a, N, c=1):
    return StepFunction.indicator(P, P.K.elem(a), N, c)


def test_canonical_examples():
    P = Q3
    f = ind(P, 0, 0) + ind(P, 1, 1)
    assert f.terms == [(P.K.elem(0), 1, 1), (P.K.elem(1), 1, 2), (P.K.elem(2), 1, 1)]
    assert StepFunction(P, []).is_zero()
    g = ind(P, 0, 0) - ind(P, 0, 1) - ind(P, 1, 1) - ind(P, 2, 1)
    assert g.is_zero()


def test_evaluate_examples():
    P = Q3
    K = P.K
    assert ind(P, 1, 1)(K.elem(4)) == 1
    assert ind(P, 1, 1)(K.elem(5)) == 0
    g = named_family(P, "g_alpha", alpha=5)
    assert g.evaluate(K.elem(9 * 2)) == 25
    assert g.evaluate(K.elem(Fraction(1, 3))) == 0
    assert g.value_at_zero() == 0


def test_translate_dilate_examples():
    P = Q3
    K = P.K
    one_o = ind(P, 0, 0)
    assert one_o.translate(K.one) == one_o
    assert one_o.dilate(K.pi) == ind(P, 0, -1)
    assert one_o.dilate(K.one) == one_o
    with pytest.raises(ZeroDilation):
        one_o.dilate(K.zero)


def test_pointwise_examples():
    P = Q3
    assert ind(P, 0, 0).mul(ind(P, 0, 1)) == ind(P, 0, 1)
    assert ind(P, 1, 1).mul(ind(P, 2, 1)).is_zero()
    f = ind(P, 1, 2, 5) + ind(P, 0, -1)
    assert (f + f.scale(-1)).is_zero()


def test_truncate_examples():
    P = Q3
    K = P.K
    a = Fraction(5)
    g = named_family(P, "g_alpha", alpha=a)
    shell = lambda n: ind(P, 0, n) - ind(P, 0, n + 1)
    assert g.truncate(0) == shell(0)
    assert g.truncate(2) == shell(0) + shell(1).scale(a) + shell(2).scale(a * a)
    step = ind(P, 1, 1)
    assert ShellFunction(P, step).truncate(5) == step


def test_tail_ratio_must_be_small():
    with pytest.raises(BadParameter):
        GeoTail("zero", 0, Fraction(1, 5), Q3.ring.one).check(5)
    with pytest.raises(BadParameter):
        named_family(Q3, "g_alpha", alpha=3)
    assert vp_rational(Fraction(50, 3), 5) == 2


def test_shell_translate_refuses_zero_tail():
    g = named_family(Q3, "g_alpha", alpha=5)
    with pytest.raises(BadParameter):
        g.translate(Q3.K.one)


def test_shell_translate_inf_tail():
    P = Q3
    K = P.K
    g = named_family(P, "g_beta_up", beta=5)
    h = K.elem(Fraction(1, 3))
    moved = g.translate(h)
    for x in (K.elem(Fraction(1, 9)), K.elem(Fraction(2, 3)), K.elem(Fraction(4, 27)), K.elem(7)):
        assert moved.evaluate(x) == g.evaluate(x - h)


@each_config
@given(data=st.data())
def test_canonical_form_preserves_values(P, data):
    f = data.draw(step_functions(P))
    again = StepFunction(P, f.terms)
    assert again == f
    raw = data.draw(step_functions(P))
    total = f + raw
    for _ in range(10):
        x = data.draw(elements(P, -3, 3))
        assert total(x) == f(x) + raw(x)
        assert f.mul(raw)(x) == f(x) * raw(x)


@each_config
@given(data=st.data())
def test_translate_dilate_inverse(P, data):
    f = data.draw(step_functions(P))
    h = data.draw(elements(P))
    lam = data.draw(nonzero_elements(P, -1, 2))
    assert f.translate(h).translate(-h) == f
    assert f.dilate(lam).dilate(lam.inverse()) == f
    x = data.draw(elements(P, -3, 3))
    assert f.translate(h)(x) == f(x - h)
    assert f.dilate(lam)(x) == f(lam * x)


@each_config
@given(data=st.data())
def test_truncate_agrees_on_shells(P, data):
    alpha = Fraction(P.p * data.draw(st.integers(1, 4)))
    g = named_family(P, "G_bracket", alpha=alpha)
    T = data.draw(st.integers(0, 4))
    trunc = g.truncate(T)
    K = P.K
    for n in range(T + 1):
        u = data.draw(nonzero_elements(P, 0, 2).filter(lambda x: x.valuation() == 0))
        x = u * K.pi_pow(n)
        assert trunc(x) == g.evaluate(x)
