from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from padic_tate.fourier import (cartier_pair, fourier, fourier_g_alpha, fourier_g_beta,
                                fourier_shell, haar_integral, haar_integral_shell, haar_measure,
                                inverse_fourier, poisson_check, psi, riemann_lebesgue_witness)
from padic_tate.localfield import add_char
from padic_tate.stepfun import ShellFunction, StepFunction
from padic_tate.zeta import named_family

from conftest import K32, Q3, each_config, elements, nonzero_elements, step_functions


def ind(P, a, N, c=1):
    return StepFunction.indicator(P, P.K.elem(a), N, c)


def test_haar_examples():
    ring = K32.ring
    assert haar_integral(ind(K32, 0, 1)) == ring.sqrtq / 9
    assert haar_integral(StepFunction.zero(Q3)) == 0
    units = ind(Q3, 0, 0) - ind(Q3, 0, 1)
    assert haar_integral(units) == Fraction(2, 3)


@each_config
def test_transform_of_unit_ball(P):
    d = P.delta
    assert fourier(ind(P, 0, 0)) == ind(P, 0, -d, P.ring.sqrtq_pow(-d))
    assert fourier(StepFunction.zero(P)).is_zero()


def test_transform_of_ball_over_q3():
    P = Q3
    z = P.ring.zeta_root(1, 3)
    want = StepFunction(P, [(P.K.elem(0), 0, Fraction(1, 3)),
                            (P.K.elem(Fraction(1, 3)), 0, z / 3),
                            (P.K.elem(Fraction(2, 3)), 0, z * z / 3)])
    assert fourier(ind(P, 1, 1)) == want


@each_config
@given(data=st.data())
def test_ball_transform_pointwise(P, data):
    """Independent oracle: evaluate zeta^{tr(ay)} q^{-N-delta/2} at sample points."""
    N = data.draw(st.integers(-1, 2))
    a = data.draw(elements(P, -2, N)) if N > -2 else P.K.zero
    fh = fourier(ind(P, a, N))
    for _ in range(8):
        y = data.draw(elements(P, -N - P.delta - 2, 3))
        inside = y.in_ideal(-N - P.delta)
        want = add_char(P, a * y) * haar_measure(P, N) if inside else 0
        assert fh(y) == want


@each_config
@given(data=st.data())
def test_inversion(P, data):
    f = data.draw(step_functions(P))
    assert inverse_fourier(fourier(f)) == f
    assert fourier(inverse_fourier(f)) == f


@each_config
@given(data=st.data())
def test_classic_identities(P, data):
    f = data.draw(step_functions(P, 3))
    h = data.draw(elements(P, -1, 2))
    lam = data.draw(nonzero_elements(P, -1, 2))
    t = data.draw(elements(P, -1, 2))
    fh = fourier(f)
    assert fourier(f.translate(h)) == fh.char_mul(h)
    q = Fraction(P.q)
    assert fourier(f.dilate(lam)) == fh.dilate(lam.inverse()).scale(q ** lam.valuation())
    lhs, rhs, ok = poisson_check(f, t)
    assert ok and lhs == rhs


def test_poisson_examples():
    P = K32
    lhs, rhs, ok = poisson_check(ind(P, 0, 0), P.K.zero)
    assert ok and lhs == P.ring.sqrtq_pow(-1)
    assert poisson_check(StepFunction.zero(P), P.K.one) == (0, 0, True)


@each_config
def test_psi_examples(P):
    one = ind(P, 0, 0)
    assert psi(one, one, P.K.one) == cartier_pair(one, one)
    assert cartier_pair(one, one) == P.ring.sqrtq_pow(-2 * P.delta)


@each_config
@given(data=st.data())
def test_cartier_pair_symmetric(P, data):
    f = data.draw(step_functions(P, 2))
    g = data.draw(step_functions(P, 2))
    assert cartier_pair(f, g) == cartier_pair(g, f)
    y = data.draw(nonzero_elements(P, -1, 2))
    assert psi(f, g, y) == psi(g, f, y)


@each_config
@given(data=st.data())
def test_riemann_lebesgue(P, data):
    f = data.draw(step_functions(P))
    w = riemann_lebesgue_witness(f)
    fh = fourier(f)
    if not fh.is_zero():
        assert fh.support_valuation() == w["far"]
    if w["integral_zero"] and w["near"] is not None:
        assert fh.restrict(P.K.zero, w["near"] - P.delta).is_zero()


def test_riemann_lebesgue_examples():
    P = Q3
    f = ind(P, 0, 0) - ind(P, 0, 1, 3)
    w = riemann_lebesgue_witness(f)
    assert w["integral_zero"] and w["near"] is not None
    w = riemann_lebesgue_witness(ind(P, 0, 0))
    assert not w["integral_zero"] and w["far"] == 0


@each_config
def test_shell_transforms_closed_forms(P):
    q, d, ring, K = Fraction(P.q), P.delta, P.ring, P.K
    for a in (Fraction(P.p), Fraction(2 * P.p), Fraction(P.p ** 2)):
        g = named_family(P, "g_alpha", alpha=a)
        # g_a = 1_{o^x} + a * g_a(x / pi), so its transform satisfies a self-similarity
        units = ind(P, 0, 0) - ind(P, 0, 1)
        gh = fourier_shell(g)
        assert gh == ShellFunction(P, fourier(units)) + gh.dilate(K.pi).scale(a / q)
        assert gh == fourier_g_alpha(P, a)
        gb = named_family(P, "g_beta_up", beta=a)
        assert fourier_shell(gb) == fourier_g_beta(P, a)
    assert fourier_shell(ShellFunction(P)).is_zero()


@each_config
def test_shell_inversion_and_integral(P):
    K = P.K
    G = named_family(P, "G_alpha_beta", alpha=P.p, beta=P.p * P.p)
    assert fourier_shell(fourier_shell(G), -1) == G
    g = named_family(P, "g_alpha", alpha=P.p)
    # the integral equals the transform at 0
    assert haar_integral_shell(g) == fourier_shell(g).evaluate(K.zero)


@each_config
def test_truncated_transform_matches(P):
    """Transform of a truncation equals the shell transform up to the transform of the remainder."""
    a = Fraction(P.p)
    g = named_family(P, "g_alpha", alpha=a)
    T = 3
    rest = ShellFunction(P, None, [t.advance(T + 1) for t in g.tails])
    assert ShellFunction(P, fourier(g.truncate(T))) + fourier_shell(rest) == fourier_shell(g)
