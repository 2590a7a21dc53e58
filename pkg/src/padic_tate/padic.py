"""The embedding iota_p of exact scalars into an unramified extension of Q_p.

Q(zeta_M)[sqrt q] is sent into W(F_{p^d})[1/p], realized as
(Z/p^prec)[x]/(F) where F is a monic lift of an irreducible polynomial
over F_p.  zeta_M goes to a Teichmueller root and sqrt q to a
Hensel-lifted square root; both are fixed by deterministic residue choices
so every session embeds the same way.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from flint import fmpz_mod_poly_ctx

from .errors import BadParameter, DenominatorDivisibleByP, PrecisionInconclusive
from .fourier import riemann_lebesgue_witness
from .localfield import INF, is_prime
from .scalars import CycScalar, ScalarRing
from .stepfun import StepFunction, vp_rational

DEFAULT_PRECISION = 40
PRECISION_CAP = 640

__all__ = ["PadicContext", "padic_context", "embed", "vp", "vp_rational",
           "check_ultrametric", "check_riemann_lebesgue", "DEFAULT_PRECISION", "PRECISION_CAP"]


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _multiplicative_order(a: int, m: int) -> int:
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def _digits(k: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        k, r = divmod(k, p)
        out.append(r)
    return out


def unramified_degree(p: int, M: int, q: int) -> int:
    """Least d with M | p^d - 1, doubled when it is odd and q is not a square mod p."""
    d = _multiplicative_order(p, M)
    if d % 2 and pow(q % p, (p - 1) // 2, p) != 1:
        d *= 2
    return d


@dataclass(frozen=True)
class PadicContext:
    p: int
    M: int
    q: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise BadParameter("the p-adic layer needs an odd prime p")
        if self.M % self.p == 0 or self.q % self.p == 0:
            raise BadParameter("p must not divide M or q")
        if self.precision < 1:
            raise BadParameter("precision must be positive")

    @cached_property
    def d(self) -> int:
        return unramified_degree(self.p, self.M, self.q)

    @cached_property
    def modulus_residue(self) -> list[int]:
        """Least monic irreducible polynomial of degree d over F_p (constant term first)."""
        C = fmpz_mod_poly_ctx(self.p)
        d = self.d
        for k in range(self.p ** d):
            coeffs = _digits(k, self.p, d) + [1]
            if C(coeffs).is_irreducible():
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    @cached_property
    def _ctx(self):
        return fmpz_mod_poly_ctx(self.p ** self.precision)

    @cached_property
    def _F(self):
        return self._ctx(self.modulus_residue)

    def _residue_pow(self, g, e: int):
        C = fmpz_mod_poly_ctx(self.p)
        return C(g).pow_mod(e, C(self.modulus_residue))

    @cached_property
    def teich_seed(self) -> list[int]:
        """Least residue g whose power g^((p^d-1)/M) has exact order M."""
        p, d, M = self.p, self.d, self.M
        C = fmpz_mod_poly_ctx(p)
        f = C(self.modulus_residue)
        e = (p ** d - 1) // M
        primes = _prime_factors(M)
        for k in range(1, p ** d):
            g = C(_digits(k, p, d))
            w = g.pow_mod(e, f)
            if all(not w.pow_mod(M // r, f).is_one() for r in primes):
                return [int(c) for c in g.coeffs()]
        raise AssertionError("no primitive root found")

    @cached_property
    def teich_root(self):
        """Hensel lift of the primitive M-th root to precision p^precision."""
        F, C, M = self._F, self._ctx, self.M
        w = C(self.teich_seed).pow_mod((self.p ** self.d - 1) // self.M, F)
        inv_M = pow(M, -1, self.p ** self.precision)
        one = C([1])
        for _ in range(self.precision.bit_length() + 2):
            err = w.pow_mod(M, F) - one
            if err.is_zero():
                break
            w = w - err.mul_mod(w, F) * inv_M
        if not (w.pow_mod(M, F) - one).is_zero():
            raise AssertionError("Teichmueller lift did not converge")
        return w

    @cached_property
    def sqrtq_image(self):
        """sqrt(q): Tonelli-Shanks in F_{p^d}, then inverse-square-root Newton steps."""
        p, d, q = self.p, self.d, self.q
        Cp = fmpz_mod_poly_ctx(p)
        f = Cp(self.modulus_residue)
        s0 = _tonelli_shanks(Cp, f, p ** d, Cp([q % p]))
        # y ~ 1/sqrt(q): y <- y (3 - q y^2) / 2, then sqrt(q) = q y
        y0 = s0.pow_mod(p ** d - 2, f)
        C, F = self._ctx, self._F
        y = C([int(c) for c in y0.coeffs()])
        half = pow(2, -1, p ** self.precision)
        three = C([3])
        for _ in range(self.precision.bit_length() + 2):
            y = y.mul_mod(three - y.mul_mod(y, F) * q, F) * half
        s = y * q
        if not (s.mul_mod(s, F) - C([q])).is_zero():
            raise AssertionError("square-root lift did not converge")
        return s

    def with_precision(self, precision: int) -> "PadicContext":
        return PadicContext(self.p, self.M, self.q, precision)

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "precision": self.precision,
                "teich_seed": self.teich_seed, "modulus": self.modulus_residue}


@lru_cache(maxsize=None)
def padic_context(p: int, M: int, q: int, precision: int = DEFAULT_PRECISION) -> PadicContext:
    return PadicContext(p, M, q, precision)


def _tonelli_shanks(C, f, order: int, a):
    """Square root of a in F_{p^d} = F_p[x]/(f), order = p^d."""
    if a.is_zero():
        return a
    Q, S = order - 1, 0
    while Q % 2 == 0:
        Q //= 2
        S += 1
    p = C.modulus()
    deg = f.degree()
    half = (order - 1) // 2
    for k in range(2, order):
        z = C(_digits(k, int(p), deg))
        if not z.pow_mod(half, f).is_one():
            break
    if not a.pow_mod(half, f).is_one():
        raise AssertionError("q is not a square in the residue field")
    m, c, t, r = S, z.pow_mod(Q, f), a.pow_mod(Q, f), a.pow_mod((Q + 1) // 2, f)
    while not t.is_one():
        i, tt = 0, t
        while not tt.is_one():
            tt = tt.mul_mod(tt, f)
            i += 1
        b = c.pow_mod(2 ** (m - i - 1), f)
        m, c = i, b.mul_mod(b, f)
        t, r = t.mul_mod(c, f), r.mul_mod(b, f)
    return r


def _poly_image(ctx: PadicContext, coeffs: list[Fraction]):
    mod = ctx.p ** ctx.precision
    vals = []
    for c in coeffs:
        if c.denominator % ctx.p == 0:
            raise DenominatorDivisibleByP(f"coefficient {c} has p in its denominator")
        vals.append(c.numerator * pow(c.denominator, -1, mod) % mod)
    P = ctx._ctx(vals)
    return P.compose_mod(ctx.teich_root, ctx._F) if P.degree() > 0 else P


def embed(x, ctx: PadicContext):
    """iota_p(x) as a polynomial over Z/p^precision reduced modulo F."""
    if not isinstance(x, CycScalar):
        x = Fraction(x)
        return _poly_image(ctx, [x])
    a = _poly_image(ctx, x.a_coeffs())
    if x.b.is_zero():
        return a
    b = _poly_image(ctx, x.b_coeffs())
    return a + b.mul_mod(ctx.sqrtq_image, ctx._F)


def _image_valuation(img, p: int) -> float:
    best = INF
    for c in img.coeffs():
        c = int(c)
        if c:
            v = 0
            while c % p == 0:
                c //= p
                v += 1
            best = min(best, v)
    return best


def vp(x, ctx: PadicContext) -> float:
    """p-adic valuation of iota_p(x); raises precision until the image is nonzero."""
    if not isinstance(x, CycScalar):
        return vp_rational(Fraction(x), ctx.p)
    if x.is_zero():
        return INF
    if x.is_rational():
        return vp_rational(x.to_fraction(), ctx.p)
    c = ctx
    while True:
        v = _image_valuation(embed(x, c), c.p)
        if v < INF:
            return v
        if c.precision * 2 > PRECISION_CAP:
            raise PrecisionInconclusive(f"image of {x} vanishes modulo p^{c.precision}")
        c = padic_context(c.p, c.M, c.q, c.precision * 2)


def check_ultrametric(f: StepFunction, ctx: PadicContext) -> bool:
    """|integral of f|_p <= sup |f|_p, i.e. vp(integral) >= min vp(coefficient)."""
    if f.is_zero():
        return vp(f.integral(), ctx) == INF
    lower = min(vp(c, ctx) for _rep, _N, c in f.terms)
    return vp(f.integral(), ctx) >= lower


def check_riemann_lebesgue(f: StepFunction, ctx: PadicContext | None = None) -> dict:
    """Exact decay witnesses for the transform; ``ok`` is set when they are confirmed."""
    from .fourier import fourier

    params = f.params
    w = riemann_lebesgue_witness(f)
    fh = fourier(f)
    far_ok = fh.is_zero() or w["far"] > -INF
    near_ok = True
    if w["integral_zero"] and w["near"] is not None:
        near_ok = fh.restrict(params.K.zero, w["near"] - params.delta).is_zero()
    w["ok"] = bool(far_ok and near_ok)
    return w
