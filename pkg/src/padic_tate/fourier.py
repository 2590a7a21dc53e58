"""Haar integration, the Fourier transform, and the classic identities.

For a ball a + l^N the transform is supported on l^{-N} d^{-1} and equals
zeta^{tr(a y)} q^{-N - delta/2} there.  The character y -> zeta^{tr(a y)}
is constant on cosets of l^m with m = -ord(a) - delta, and its exponent is
additive in the pi-adic digits of y, so the expansion costs one integer
addition per coset.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .localfield import INF, KElement, LocalFieldParams, add_char_exp
from .scalars import CycScalar
from .stepfun import GeoTail, ShellFunction, StepFunction, as_shell


def haar_measure(params: LocalFieldParams, N: int) -> CycScalar:
    """vol(a + l^N) = q^{-N - delta/2}."""
    return params.ring.sqrtq_pow(-2 * N - params.delta)


def haar_integral(f: StepFunction) -> CycScalar:
    return f.integral()


def shell_measure(params: LocalFieldParams, n: int) -> CycScalar:
    """vol(pi^n o^x) = q^{-n - delta/2}(1 - 1/q)."""
    return haar_measure(params, n) * (1 - Fraction(1, params.q))


def tail_integral(params: LocalFieldParams, t: GeoTail) -> CycScalar:
    """Closed-form sum of the geometric series of shell measures."""
    q = Fraction(params.q)
    if t.direction == "zero":
        return t.coeff * shell_measure(params, t.start) / (1 - t.ratio / q)
    return t.coeff * shell_measure(params, -t.start) / (1 - t.ratio * q)


def haar_integral_shell(F, require_convergence: bool = True) -> CycScalar:
    """Integral of a shell function.

    Shell measures are p-adic units times powers of q, so every tail with
    |ratio|_p < 1 is summable; ``require_convergence`` re-checks the ratios.
    """
    F = as_shell(F)
    if require_convergence:
        for t in F.tails:
            t.check(F.params.p)
    total = F.step.integral()
    for t in F.tails:
        total = total + tail_integral(F.params, t)
    return total


def _ball_transform(params: LocalFieldParams, a: KElement, N: int, c: CycScalar, sign: int):
    """Terms of the transform of c * 1_{a + l^N}."""
    ring = params.ring
    d = params.delta
    base = -N - d
    scale = c * haar_measure(params, N)
    va = a.valuation()
    if va >= N:  # a is 0 modulo l^N
        return [({}, base, scale)]
    m = -va - d
    K = params.K
    n = m - base
    params.check_size(params.ell ** n, "transform expansion")
    js = list(range(base, m))
    exps = [add_char_exp(params, (a * K.pi_pow(j)).trace()) for j in js]
    out = []
    M = params.M
    roots = {}
    for ds in product(range(params.ell), repeat=n):
        k = sign * sum(dj * ej for dj, ej in zip(ds, exps)) % M
        r = roots.get(k)
        if r is None:
            r = roots[k] = scale * ring.root(k)
        out.append(({j: dj for j, dj in zip(js, ds) if dj}, m, r))
    return out


def fourier(f: StepFunction, sign: int = 1) -> StepFunction:
    """f^(y) = integral of f(x) zeta^{sign tr(x y)} dx."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    params = f.params
    out = []
    for rep, N, c in f.terms:
        out.extend(_ball_transform(params, rep, N, c, sign))
    return StepFunction.from_digit_terms(params, out)


def inverse_fourier(f: StepFunction) -> StepFunction:
    return fourier(f, -1)


# -- shell transforms -------------------------------------------------------


def fourier_g_alpha(params: LocalFieldParams, alpha) -> ShellFunction:
    """Transform of g_alpha = sum alpha^n 1_{pi^n o^x}."""
    ring, q, d = params.ring, Fraction(params.q), params.delta
    alpha = Fraction(alpha)
    pre = ring.sqrtq_pow(-d) / (1 - alpha / q)
    step = StepFunction.indicator(params, params.K.zero, -d, pre * (1 - 1 / q))
    tail = GeoTail("inf", d + 1, alpha / q, -pre * ((1 - alpha) / q))
    return ShellFunction(params, step, [tail])


def fourier_g_beta(params: LocalFieldParams, beta) -> ShellFunction:
    """Transform of g^beta = sum beta^n 1_{pi^{-n-1-delta} o^x}."""
    ring, q, d = params.ring, Fraction(params.q), params.delta
    beta = Fraction(beta)
    pre = ring.sqrtq_pow(d) / (1 - beta * q)
    step = StepFunction.indicator(params, params.K.zero, 0, pre * (q - 1))
    tail = GeoTail("zero", 0, beta * q, -pre * q * (1 - beta))
    return ShellFunction(params, step, [tail])


def _tail_transform(params: LocalFieldParams, t: GeoTail) -> ShellFunction:
    K = params.K
    q = Fraction(params.q)
    if t.direction == "zero":
        # t(x) = c g_r(pi^{-n0} x), so t^ = c q^{-n0} g_r^(pi^{n0} y)
        base = fourier_g_alpha(params, t.ratio)
        return base.dilate(K.pi_pow(t.start)).scale(t.coeff * q ** (-t.start))
    # t(x) = c g^r(pi^{s} x) with s = n0 - 1 - delta
    s = t.start - 1 - params.delta
    base = fourier_g_beta(params, t.ratio)
    return base.dilate(K.pi_pow(-s)).scale(t.coeff * q ** s)


def fourier_shell(F, sign: int = 1) -> ShellFunction:
    """Transform of a shell function; tails are radial, so ``sign`` only affects the step part."""
    F = as_shell(F)
    params = F.params
    out = ShellFunction(params, fourier(F.step, sign))
    for t in F.tails:
        out = out + _tail_transform(params, t)
    return out


# -- classic identities -------------------------------------------------------


def poisson_check(f: StepFunction, t) -> tuple[CycScalar, CycScalar, bool]:
    """Both sides of  int_o f(x+t) dx = q^{-delta/2} int_{d^-1} f^(y) zeta^{-tr(t y)} dy."""
    params = f.params
    K = params.K
    t = K.elem(t)
    lhs = f.translate(-t).restrict(K.zero, 0).integral()
    fh = fourier(f).char_mul(t, sign=-1).restrict(K.zero, -params.delta)
    rhs = params.ring.sqrtq_pow(-params.delta) * fh.integral()
    return lhs, rhs, lhs == rhs


def harr(params: LocalFieldParams, lam: KElement) -> Fraction:
    """chi_Harr(lam) = q^{-ord(lam)}."""
    return Fraction(params.q) ** (-lam.valuation())


def psi(f: StepFunction, g: StepFunction, y) -> CycScalar:
    """Psi(f, g)(y) = int f(x) g^(x y) dx."""
    y = f.params.K.elem(y)
    gh = fourier(g)
    return f.mul(gh.dilate(y)).integral()


def cartier_pair(f: StepFunction, g: StepFunction) -> CycScalar:
    """<f, g> = int f g^ dx."""
    return psi(f, g, f.params.K.one)


def riemann_lebesgue_witness(f: StepFunction) -> dict:
    """Exact decay data for the transform of a step function.

    ``far`` is the smallest valuation met by the support of f^ (so f^ vanishes
    below it); when the integral of f is zero, ``near`` is an m such that f^
    vanishes on l^m d^{-1}.
    """
    params = f.params
    fh = fourier(f)
    out = {"far": fh.support_valuation(), "near": None, "integral_zero": f.integral().is_zero()}
    if out["integral_zero"]:
        if fh.contains_zero():
            raise AssertionError("transform does not vanish at 0 despite zero integral")
        top = max((rep.valuation() for rep, _N, _c in fh.terms), default=-params.delta - 1)
        out["near"] = top + 1 + params.delta
        if top == INF:
            out["near"] = None
    return out
