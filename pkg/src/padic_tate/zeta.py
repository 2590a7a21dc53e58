"""Zeta integrals Z(f, chi) as Laurent polynomials or rational functions in
lambda, Schwartz-class bookkeeping, Gauss sums, rho-factors and the local
functional equation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from flint import fmpq_poly

from .characters import Character, dual_char, inverse
from .errors import (BadParameter, FormalLambda, NotSchwartz, PoleAtPoint,
                     PreconditionViolated, SupportContainsZero, UnramifiedCharacter)
from .fourier import fourier, fourier_shell, haar_measure, shell_measure
from .localfield import INF, LocalFieldParams, add_char_exp, enumerate_range, unit_reps
from .scalars import CycScalar, LaurentPoly, RationalFunc
from .stepfun import GeoTail, ShellFunction, StepFunction, as_shell, vp_rational


# --------------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class SchwartzInterval:
    """Exponents t (c = p^t) with lo < t < hi for which f is of Schwartz class c."""

    lo: float
    hi: float

    def contains(self, t) -> bool:
        return self.lo < t < self.hi

    def is_empty(self) -> bool:
        return not self.lo < self.hi

    def as_moduli(self) -> tuple[str, str]:
        def fmt(t):
            if t == -INF:
                return "0"
            if t == INF:
                return "inf"
            return f"p^{t}"
        return fmt(self.lo), fmt(self.hi)


@dataclass(frozen=True)
class ZetaValue:
    """A zeta integral in lambda with its open convergence annulus p^lo < |lambda|_p < p^hi."""

    value: RationalFunc
    lo: float = -INF
    hi: float = INF
    p: int = field(default=0, compare=False)

    def __eq__(self, other):
        if isinstance(other, ZetaValue):
            return self.value == other.value
        return self.value == other

    __hash__ = None

    def __mul__(self, other):
        o = other.value if isinstance(other, ZetaValue) else other
        lo = max(self.lo, other.lo) if isinstance(other, ZetaValue) else self.lo
        hi = min(self.hi, other.hi) if isinstance(other, ZetaValue) else self.hi
        return ZetaValue(self.value * o, lo, hi, self.p)

    def __truediv__(self, other):
        o = other.value if isinstance(other, ZetaValue) else other
        return ZetaValue(self.value / o, self.lo, self.hi, self.p)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def is_laurent(self) -> bool:
        return self.value.reduced().is_laurent()

    def instantiate(self, lam, check: bool = True) -> CycScalar:
        """Evaluate at a concrete lambda; rational lambdas are checked against the annulus."""
        ring = self.value.ring
        lam = ring(lam)
        if check and self.p and lam.is_rational() and not lam.is_zero():
            t = -vp_rational(lam.to_fraction(), self.p)
            if not (self.lo < t < self.hi):
                raise BadParameter(f"|lambda|_p = p^{t} lies outside the annulus")
        return self.value.evaluate(lam)

    def __str__(self):
        return str(self.value)


def _zv(params: LocalFieldParams, value: RationalFunc, lo=-INF, hi=INF) -> ZetaValue:
    return ZetaValue(value, lo, hi, params.p)


# --------------------------------------------------------------------------
# Schwartz classes


def schwartz_interval(F, p: int | None = None) -> SchwartzInterval:
    """Open interval of exponents t such that F is of Schwartz class p^t.

    Toward-infinity tails need |chi(pi)|^{-n} |rho|^n -> 0, giving t > -v_p(rho);
    toward-zero tails need t < v_p(rho); a nonzero value at 0 needs t < 0.
    """
    F = as_shell(F)
    p = F.params.p if p is None else p
    lo, hi = -INF, INF
    for t in F.normalized().tails:
        v = vp_rational(t.ratio, p)
        if t.direction == "inf":
            lo = max(lo, -v)
        else:
            hi = min(hi, v)
    if not F.value_at_zero().is_zero():
        hi = min(hi, 0)
    return SchwartzInterval(lo, hi)


# --------------------------------------------------------------------------
# zeta integrals


def _pi_power(chi: Character, m: int) -> LaurentPoly:
    ring = chi.params.ring
    c = ring(chi.pi_coeff) ** m
    return LaurentPoly.monomial(ring, c, chi.pi_exp * m)


def _laurent_zeta(f: StepFunction, chi: Character) -> LaurentPoly:
    params = f.params
    ring = params.ring
    K = params.K
    n = chi.level
    d = params.delta
    acc: dict[int, CycScalar] = {}
    for rep, N, c in f.terms:
        v = rep.valuation()
        if v >= N:
            raise SupportContainsZero("f(0) != 0: the zeta integral is not a finite object")
        u0 = rep * K.pi_pow(-v)
        depth = N - v
        if n <= depth:
            val = c * ring.root(chi.unit_exp(u0)) * haar_measure(params, N)
        else:
            s = ring.zero
            for x in enumerate_range(params, depth, n):
                s = s + ring.root(chi.unit_exp(u0 + x))
            val = c * s * haar_measure(params, n + v)
        mono = _pi_power(chi, v)
        for k, coeff in mono.items():
            term = coeff * val
            acc[k] = acc[k] + term if k in acc else term
    return LaurentPoly(ring, acc)


def zeta_integral(f: StepFunction, chi: Character) -> ZetaValue:
    """Z(f, chi) = sum over shells of chi(pi)^n * integral of f chi~ over pi^n o^x."""
    if isinstance(f, ShellFunction):
        return zeta_shell(f, chi)
    return _zv(f.params, RationalFunc(_laurent_zeta(f, chi)))


def _tail_zeta(params: LocalFieldParams, t: GeoTail, chi: Character) -> RationalFunc:
    ring = params.ring
    if chi.level >= 1:
        return RationalFunc(LaurentPoly(ring))
    q = Fraction(params.q)
    U = shell_measure(params, 0)
    mu = RationalFunc(_pi_power(chi, 1))
    one = RationalFunc(LaurentPoly.constant(ring, 1))
    if t.direction == "zero":
        num = RationalFunc(_pi_power(chi, t.start)) * (t.coeff * U * q ** (-t.start))
        return num / (one - mu * (t.ratio / q))
    num = RationalFunc(_pi_power(chi, -t.start)) * (t.coeff * U * q ** t.start)
    return num / (one - RationalFunc(_pi_power(chi, -1)) * (t.ratio * q))


def zeta_shell(F, chi: Character) -> ZetaValue:
    """Z(F, chi) for a shell function, tails summed in closed form."""
    F = as_shell(F)
    params = F.params
    if not F.value_at_zero().is_zero():
        raise SupportContainsZero("F(0) != 0: the zeta integral is not a finite object")
    value = RationalFunc(_laurent_zeta(F.step, chi))
    for t in F.tails:
        value = value + _tail_zeta(params, t, chi)
    si = schwartz_interval(F)
    return _zv(params, value, si.lo, si.hi)


# --------------------------------------------------------------------------
# named families


def named_family(params: LocalFieldParams, name: str, **kw):
    K = params.K
    q = Fraction(params.q)
    d = params.delta
    ring = params.ring

    def small(x, label):
        x = Fraction(x)
        if vp_rational(x, params.p) <= 0:
            raise BadParameter(f"{label}={x} must satisfy |{label}|_p < 1")
        return x

    if name == "g_alpha":
        a = small(kw["alpha"], "alpha")
        return ShellFunction(params, None, [GeoTail("zero", 0, a, ring.one)])
    if name == "g_beta_up":
        b = small(kw["beta"], "beta")
        return ShellFunction(params, None, [GeoTail("inf", d + 1, b, ring.one)])
    if name == "G_alpha_beta":
        a, b = small(kw["alpha"], "alpha"), small(kw["beta"], "beta")
        c = -q ** (-1 - d) * (1 - b * q) / (1 - a / q)
        return ShellFunction(params, None, [GeoTail("zero", 0, a, ring.one),
                                            GeoTail("inf", d + 1, b, ring(c))])
    if name == "G_bracket":
        a = small(kw["alpha"], "alpha")
        return named_family(params, "G_alpha_beta", alpha=a * q, beta=a / q)
    if name == "h_n":
        n = int(kw["n"])
        if n < 0:
            raise BadParameter("h_n needs n >= 0")
        if n <= 1:
            return StepFunction(params, [
                (K.zero, 0, -1 / q), (K.zero, 1, 1 / q),
                (K.one, 1, 1), (K.pi, 2, -1)])
        return StepFunction(params, [(K.one, n, 1), (K.one, n - 1, -1 / q)])
    if name == "h_n_hat":
        n = int(kw["n"])
        if n < 0:
            raise BadParameter("h_n_hat needs n >= 0")
        if n <= 1:
            a = StepFunction.shell(params, -d - 1).char_mul(K.one)
            b = StepFunction.shell(params, -d - 2).char_mul(K.pi)
            return (a - b.scale(1 / q)).scale(ring.sqrtq_pow(-d - 2))
        return StepFunction.shell(params, -d - n).char_mul(K.one).scale(ring.sqrtq_pow(-d - 2 * n))
    raise BadParameter(f"unknown family {name!r}")


# --------------------------------------------------------------------------
# Gauss sums and rho


def gauss_sum(chi: Character, level: int | None = None) -> CycScalar:
    """G(chi) = sum over a in (o/pi^n)^x of zeta^{tr(a / pi^{delta+n})} chi(a)."""
    params = chi.params
    n = chi.level if level is None else level
    if n < 1:
        raise UnramifiedCharacter("Gauss sums need a level >= 1")
    ring = params.ring
    K = params.K
    shift = K.pi_pow(-params.delta - n)
    total = ring.zero
    for a in unit_reps(params, n):
        k = add_char_exp(params, (a * shift).trace()) + chi.unit_exp(a)
        total = total + ring.root(k)
    return total


def _mu(chi: Character) -> RationalFunc:
    return RationalFunc(_pi_power(chi, 1))


def rho_closed(chi: Character) -> ZetaValue:
    params = chi.params
    ring = params.ring
    q = Fraction(params.q)
    d = params.delta
    n = chi.level
    one = RationalFunc(LaurentPoly.constant(ring, 1))
    mu_inv = RationalFunc(_pi_power(chi, -1))
    if n == 0:
        val = RationalFunc(_pi_power(chi, -d)) * ring.sqrtq_pow(d) * (one - mu_inv) / (one - _mu(chi) * (1 / q))
        return _zv(params, val)
    G = gauss_sum(inverse(chi))
    val = RationalFunc(_pi_power(chi, -d - n)) * (ring.sqrtq_pow(d + 2 * n) * G.inverse())
    return _zv(params, val)


def rho_from_h(chi: Character) -> ZetaValue:
    """Z(h_n, chi) / Z(h_n^, chi*) with the transform computed, not quoted."""
    params = chi.params
    h = named_family(params, "h_n", n=chi.level)
    num = zeta_integral(h, chi)
    den = zeta_integral(fourier(h), dual_char(chi))
    return _zv(params, (num.value / den.value).reduced())


# --------------------------------------------------------------------------
# functional equation and continuation


def _check_admissible(f: StepFunction, label: str):
    if f.contains_zero():
        raise PreconditionViolated(f"{label} does not vanish at 0")
    if not f.integral().is_zero():
        raise PreconditionViolated(f"the transform of {label} does not vanish at 0 (nonzero integral)")


def fe_sides(f: StepFunction, g: StepFunction, chi: Character) -> tuple[RationalFunc, RationalFunc]:
    _check_admissible(f, "f")
    _check_admissible(g, "g")
    chis = dual_char(chi)
    lhs = zeta_integral(f, chi).value * zeta_integral(fourier(g), chis).value
    rhs = zeta_integral(fourier(f), chis).value * zeta_integral(g, chi).value
    return lhs, rhs


def verify_fe(f: StepFunction, g: StepFunction, chi: Character) -> bool:
    """Z(f, chi) Z(g^, chi*) = Z(f^, chi*) Z(g, chi) as rational functions."""
    lhs, rhs = fe_sides(f, g, chi)
    return lhs == rhs


def rational_roots(p: LaurentPoly) -> list[Fraction] | None:
    """Nonzero rational roots of a Laurent polynomial; None if it is not rational up to scaling."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    lead = p.coeff(p.max_deg())
    try:
        p = p.scale(lead.inverse())
    except Exception:
        return None
    base = p.min_deg()
    coeffs = []
    for k in range(base, p.max_deg() + 1):
        c = p.coeff(k)
        if not c.is_rational():
            return None
        coeffs.append(c.to_fraction())
    poly = fmpq_poly([_q(c) for c in coeffs])
    roots = []
    _, factors = poly.factor()
    for fac, _mult in factors:
        if fac.degree() == 1:
            a0, a1 = fac.coeffs()
            r = -Fraction(int(a0.p), int(a0.q)) / Fraction(int(a1.p), int(a1.q))
            if r != 0:
                roots.append(r)
    return sorted(roots)


def _q(c: Fraction):
    from flint import fmpq
    return fmpq(c.numerator, c.denominator)


@dataclass
class Continuation:
    value: ZetaValue
    annulus: tuple
    poles: list
    zeros: list
    rho: ZetaValue


def continue_zeta(f, chi: Character) -> Continuation:
    """rho(chi) Z(f^, chi*) on the Laurent domain allowed by the Schwartz classes of f and f^."""
    if not chi.is_formal:
        raise FormalLambda("continuation needs the formal parameter")
    params = chi.params
    if isinstance(f, StepFunction):
        if f.contains_zero() or not f.integral().is_zero():
            raise NotSchwartz("step function must vanish at 0 and have zero integral")
        fh = fourier(f)
        H = INF
        zh = zeta_integral(fh, dual_char(chi))
    else:
        F = as_shell(f)
        Fh = fourier_shell(F)
        s1, s2 = schwartz_interval(F), schwartz_interval(Fh)
        lo, hi = max(s1.lo, s2.lo), min(s1.hi, s2.hi)
        if not (hi > 0 and hi > lo):
            raise NotSchwartz("f and its transform share no Schwartz class c >= 1")
        H = min(hi, -lo) if lo < 0 else hi
        zh = zeta_shell(Fh, dual_char(chi))
    rho = rho_closed(chi)
    value = (rho.value * zh.value).reduced()
    r = rho.value.reduced()
    zeros = rational_roots(r.num) if r.num.max_deg() > r.num.min_deg() else []
    poles = rational_roots(r.den) if r.den.max_deg() > r.den.min_deg() else []
    return Continuation(_zv(params, value, -H, H), (-H, H), poles, zeros, rho)
