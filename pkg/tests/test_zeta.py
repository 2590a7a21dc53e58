from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_tate.characters import (Character, characters_of_level, dual_char, eval_char,
                                   make_character)
from padic_tate.errors import (BadParameter, FormalLambda, NotSchwartz, PreconditionViolated,
                               SupportContainsZero, UnramifiedCharacter)
from padic_tate.fourier import fourier, fourier_shell, haar_measure
from padic_tate.scalars import LaurentPoly, RationalFunc
from padic_tate.stepfun import ShellFunction, StepFunction
from padic_tate.zeta import (INF, continue_zeta, gauss_sum, named_family, rational_roots,
                             rho_closed, rho_from_h, schwartz_interval, verify_fe, zeta_integral,
                             zeta_shell)

from conftest import PARAMS, Q3, each_config, elements, rationals


def ind(P, a, N, c=1):
    return StepFunction.indicator(P, P.K.elem(a), N, c)


def units(P):
    return ind(P, 0, 0) - ind(P, 0, 1)


def poly(P, pairs):
    ring = P.ring
    return RationalFunc(LaurentPoly(ring, {k: ring(c) for k, c in pairs}))


def trivial(P):
    return characters_of_level(P, 0)[0]


@st.composite
def punctured_steps(draw, P, max_terms=3):
    """Step functions supported away from 0."""
    terms = []
    for _ in range(draw(st.integers(1, max_terms))):
        v = draw(st.integers(-1, 2))
        depth = draw(st.integers(1, 3))
        u = draw(elements(P, 0, depth).filter(lambda x: x.valuation() == 0))
        rep = u * P.K.pi_pow(v)
        terms.append((rep, v + depth, draw(rationals())))
    return StepFunction(P, terms)


@st.composite
def admissible(draw, P):
    """Supported away from 0 with zero integral."""
    f = draw(punctured_steps(P))
    u = draw(elements(P, 0, 2).filter(lambda x: x.valuation() == 0))
    ball = StepFunction.indicator(P, u, 3)
    return f - ball.scale(f.integral() / haar_measure(P, 3))


def brute_zeta(f, chi):
    """Refine until chi is constant on every ball, then sum chi(rep) vol(ball)."""
    P = f.params
    if f.is_zero():
        return RationalFunc(LaurentPoly(P.ring))
    L = f.max_level() + max(chi.level, 1)
    total = LaurentPoly(P.ring)
    for rep, N, c in f.refine(L):
        total = total + eval_char(chi, rep).scale(c * haar_measure(P, N))
    return RationalFunc(total)


def test_schwartz_interval_examples():
    P = Q3
    assert schwartz_interval(named_family(P, "g_alpha", alpha=5)).hi == 1
    assert schwartz_interval(named_family(P, "g_alpha", alpha=5)).lo == -INF
    si = schwartz_interval(named_family(P, "G_bracket", alpha=5))
    assert (si.lo, si.hi) == (-1, 1)
    assert si.contains(0) and not si.contains(1)
    h = schwartz_interval(named_family(P, "h_n", n=2))
    assert (h.lo, h.hi) == (-INF, INF)
    assert schwartz_interval(ind(P, 0, 0)).hi == 0
    assert schwartz_interval(named_family(P, "g_alpha", alpha=25)).as_moduli() == ("0", "p^2")


@each_config
def test_zeta_of_units(P):
    z = zeta_integral(units(P), trivial(P))
    assert z.value == poly(P, [(0, P.ring.sqrtq_pow(-P.delta) * (1 - Fraction(1, P.q)))])
    with pytest.raises(SupportContainsZero):
        zeta_integral(ind(P, 0, 0), trivial(P))


@each_config
@given(data=st.data())
def test_zeta_matches_brute_force(P, data):
    f = data.draw(punctured_steps(P))
    level = data.draw(st.integers(0, 2))
    chars = characters_of_level(P, level) or characters_of_level(P, 0)
    chi = data.draw(st.sampled_from(chars))
    assert zeta_integral(f, chi).value == brute_zeta(f, chi)


@each_config
def test_zeta_of_shells_matches_truncation(P):
    chi = trivial(P)
    G = named_family(P, "G_bracket", alpha=P.p)
    zG = zeta_shell(G, chi).value
    for T in (2, 5):
        diff = (zG - zeta_integral(G.truncate(T), chi).value).reduced()
        # the remainder is supported on shells beyond T in both directions
        assert not diff.is_zero()
    g = named_family(P, "g_alpha", alpha=P.p)
    for T in (3, 6):
        diff = (zeta_shell(g, chi).value - zeta_integral(g.truncate(T), chi).value).reduced()
        assert diff.num.min_deg() - diff.den.min_deg() >= T + 1


@each_config
def test_ramified_zeta_of_shells_vanishes(P):
    G = named_family(P, "G_bracket", alpha=P.p)
    for level in (1, 2):
        for chi in characters_of_level(P, level)[:3]:
            assert zeta_shell(G, chi).is_zero()


def test_h_families_over_q3():
    P = Q3
    K = P.K
    h2 = named_family(P, "h_n", n=2)
    assert h2.evaluate(K.one) == Fraction(2, 3)
    assert h2.evaluate(K.elem(4)) == Fraction(-1, 3)
    assert h2.evaluate(K.elem(10)) == Fraction(2, 3)
    assert h2.evaluate(K.elem(2)) == 0
    h0 = named_family(P, "h_n", n=0)
    assert h0.evaluate(K.elem(2)) == Fraction(-1, 3)
    assert h0.evaluate(K.one) == Fraction(2, 3)
    assert h0.evaluate(K.elem(3)) == -1
    with pytest.raises(BadParameter):
        named_family(P, "h_n", n=-1)


def test_zeta_of_h2_over_q3():
    P = Q3
    chi = characters_of_level(P, 2)[0]
    assert zeta_integral(named_family(P, "h_n", n=2), chi).value == poly(P, [(0, Fraction(1, 9))])
    assert zeta_integral(named_family(P, "h_n", n=2), trivial(P)).is_zero()


@each_config
def test_level_one_entry(P):
    """The level-1 entry of the first row is q^{-delta/2-1}(1 - lambda/q)."""
    q, d, ring = Fraction(P.q), P.delta, P.ring
    for chi in characters_of_level(P, 1):
        z = zeta_integral(named_family(P, "h_n", n=1), chi)
        assert z.value == poly(P, [(0, ring.sqrtq_pow(-d - 2)), (1, -ring.sqrtq_pow(-d - 2) / q)])


def test_gauss_sum_examples():
    P = Q3
    quad = make_character(P, 1, [-1])
    z3 = P.ring.zeta_root(1, 3)
    G = gauss_sum(quad)
    assert G == z3 - z3 * z3
    assert G * G == -3
    assert gauss_sum(trivial(P), level=1) == -1
    with pytest.raises(UnramifiedCharacter):
        gauss_sum(trivial(P))


@each_config
def test_gauss_sum_norm(P):
    for n in (1, 2):
        for chi in characters_of_level(P, n):
            G = gauss_sum(chi)
            Gi = gauss_sum(Character(P, chi.level, tuple(-t % P.M for t in chi.table)))
            sign = P.ring.root(chi.unit_exp(P.K.elem(-1)))
            assert G * Gi == sign * P.q ** n


def test_rho_unramified_q3():
    P = Q3
    lam = LaurentPoly.variable(P.ring)
    one = LaurentPoly.constant(P.ring, 1)
    want = RationalFunc(one - LaurentPoly.monomial(P.ring, P.ring.one, -1), one - lam.scale(Fraction(1, 3)))
    assert rho_closed(trivial(P)).value == want


@each_config
def test_rho_closed_matches_h(P):
    for level in (0, 1, 2):
        for chi in characters_of_level(P, level):
            assert rho_from_h(chi) == rho_closed(chi)


@each_config
def test_rho_at_negative_powers(P):
    ring, q, d = P.ring, Fraction(P.q), P.delta
    rho = rho_closed(trivial(P)).value
    for n in range(3):
        s = n + 1
        want = ring.sqrtq_pow(d * (2 * s - 1)) * ((1 - q ** (s - 1)) / (1 - q ** -s))
        assert rho.evaluate(ring(q ** -n)) == want


@each_config
def test_rho_alpha_independent(P):
    chi = trivial(P)
    ratios = set()
    for a in (P.p, 2 * P.p, P.p ** 2):
        G = named_family(P, "G_bracket", alpha=a)
        r = (zeta_shell(G, chi).value / zeta_shell(fourier_shell(G), dual_char(chi)).value).reduced()
        assert r == rho_closed(chi).value
        ratios.add(str(r))
    assert len(ratios) == 1


@each_config
def test_fe_examples(P):
    chi = characters_of_level(P, 2)[0]
    h2, h3 = named_family(P, "h_n", n=2), named_family(P, "h_n", n=3)
    assert verify_fe(h2, h3, chi)
    assert verify_fe(h2, h2, chi)
    with pytest.raises(PreconditionViolated):
        verify_fe(units(P), h2, trivial(P))
    with pytest.raises(PreconditionViolated):
        verify_fe(ind(P, 0, 0), h2, trivial(P))


@each_config
@given(data=st.data())
def test_functional_equation(P, data):
    f, g = data.draw(admissible(P)), data.draw(admissible(P))
    level = data.draw(st.integers(0, 2))
    chars = characters_of_level(P, level) or characters_of_level(P, 0)
    chi = data.draw(st.sampled_from(chars))
    assert verify_fe(f, g, chi)


def test_continuation_poles_and_zeros():
    P = Q3
    chi = trivial(P)
    G = named_family(P, "G_bracket", alpha=5)
    cont = continue_zeta(G, chi)
    assert cont.poles == [3] and cont.zeros == [1]
    assert cont.value == zeta_shell(G, chi)
    with pytest.raises(NotSchwartz):
        continue_zeta(units(P) + ind(P, 0, 0), chi)
    with pytest.raises(NotSchwartz):
        continue_zeta(units(P), chi)
    with pytest.raises(FormalLambda):
        continue_zeta(named_family(P, "h_n", n=2), chi.with_lambda(1))


@each_config
@given(data=st.data())
def test_continuation_agrees_inside_annulus(P, data):
    f = data.draw(admissible(P))
    chi = data.draw(st.sampled_from(characters_of_level(P, 0) + characters_of_level(P, 2)[:4]))
    cont = continue_zeta(f, chi)
    direct = zeta_integral(f, chi)
    for lam in (P.ring(1 + P.p), P.ring(Fraction(1, 1 + P.p))):
        assert cont.value.instantiate(lam) == direct.instantiate(lam)


def test_instantiation_annulus():
    P = Q3
    z = zeta_shell(named_family(P, "G_bracket", alpha=5), trivial(P))
    assert z.instantiate(1) == z.value.evaluate(P.ring.one)
    with pytest.raises(BadParameter):
        z.instantiate(25)
    with pytest.raises(BadParameter):
        z.instantiate(Fraction(3, 5))
    with pytest.raises(BadParameter):
        z.instantiate(Fraction(1, 25))


@each_config
def test_zeta_twist_law(P):
    t = 1 + P.ell
    Pt = P.with_twist(t)
    for level in (1, 2):
        for chi in characters_of_level(P, level):
            chit = Character(Pt, chi.level, chi.table, chi.pi_coeff, chi.pi_exp)
            factor = P.ring.root(-chi.unit_exp(P.K.elem(t)))
            assert rho_closed(chit).value == rho_closed(chi).value * factor
            if level == 1:
                assert factor == 1


def test_rational_roots():
    ring = Q3.ring
    lam = LaurentPoly.variable(ring)
    one = LaurentPoly.constant(ring, 1)
    assert rational_roots((one - lam) * (one - lam.scale(Fraction(1, 3)))) == [1, 3]
    assert rational_roots(one + lam * lam) == []
    assert rational_roots(lam.scale(ring.zeta_root(1, 3)) - one) is None
