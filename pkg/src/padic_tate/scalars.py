"""Exact scalars Q(zeta_M)[sqrtq]/(sqrtq^2 - q), Laurent polynomials and
rational functions in the character parameter lambda.

Cyclotomic coordinates are kept as ``flint.fmpq_poly`` reduced modulo the
M-th cyclotomic polynomial; the formal square root is a second coordinate.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from flint import fmpq, fmpq_poly, fmpz_poly

from .errors import BadOrder, DivisionByZeroPoly, PoleAtPoint, ZeroDivisorInverse

LAMBDA = "λ"


def to_fraction(c) -> Fraction:
    if isinstance(c, fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def _fmpq(x) -> fmpq:
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


class ScalarRing:
    """The ring R = Q(zeta_M)[s]/(s^2 - q)."""

    def __init__(self, M: int, q: int):
        if M < 1 or q < 1:
            raise ValueError("M and q must be positive")
        self.M = M
        self.q = q
        self.phi = fmpq_poly(fmpz_poly.cyclotomic(M).coeffs())
        self.degree = self.phi.degree()
        self._roots: dict[int, CycScalar] = {}
        self._zero_poly = fmpq_poly([])
        self.zero = CycScalar(self, self._zero_poly, self._zero_poly)
        self.one = CycScalar(self, fmpq_poly([1]), self._zero_poly)
        self.sqrtq = CycScalar(self, self._zero_poly, fmpq_poly([1]))

    def __repr__(self):
        return f"ScalarRing(M={self.M}, q={self.q})"

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and (self.M, self.q) == (other.M, other.q)

    def __hash__(self):
        return hash((self.M, self.q))

    def __call__(self, x) -> "CycScalar":
        if isinstance(x, CycScalar):
            if x.ring != self:
                raise ValueError("scalar belongs to a different ring")
            return x
        if isinstance(x, (int, Rational, fmpq)):
            return CycScalar(self, fmpq_poly([_fmpq(to_fraction(x))]), self._zero_poly)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def from_coeffs(self, a, b=()) -> "CycScalar":
        a = fmpq_poly([_fmpq(c) for c in a]) % self.phi
        b = fmpq_poly([_fmpq(c) for c in b]) % self.phi
        return CycScalar(self, a, b)

    def root(self, k: int) -> "CycScalar":
        """zeta_M ** k."""
        k %= self.M
        r = self._roots.get(k)
        if r is None:
            a = fmpq_poly([0] * k + [1]) % self.phi
            r = CycScalar(self, a, self._zero_poly)
            self._roots[k] = r
        return r

    def zeta_root(self, k: int, order: int) -> "CycScalar":
        """zeta_M ** (k * M / order): a primitive order-th root when gcd(k, order) = 1."""
        if order < 1 or self.M % order:
            raise BadOrder(f"order {order} does not divide M={self.M}")
        return self.root(k * (self.M // order))

    def sqrtq_pow(self, k: int) -> "CycScalar":
        """sqrtq ** k for any integer k (so q^(k/2))."""
        half, odd = divmod(k, 2)
        c = self(Fraction(self.q) ** half)
        return c * self.sqrtq if odd else c


@lru_cache(maxsize=None)
def get_ring(M: int, q: int) -> ScalarRing:
    return ScalarRing(M, q)


class CycScalar:
    """a(zeta_M) + b(zeta_M) * sqrtq, with a, b reduced mod Phi_M."""

    __slots__ = ("ring", "a", "b", "_hash")

    def __init__(self, ring: ScalarRing, a: fmpq_poly, b: fmpq_poly):
        self.ring = ring
        self.a = a
        self.b = b
        self._hash = None

    def _coerce(self, other) -> "CycScalar | None":
        if isinstance(other, CycScalar):
            if other.ring != self.ring:
                raise ValueError("scalars from different rings")
            return other
        if isinstance(other, (int, Rational, fmpq)):
            return self.ring(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            c = _fmpq(other)
            return CycScalar(self.ring, self.a * c, self.b * c)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        phi = self.ring.phi
        if self.b.is_zero() and o.b.is_zero():
            return CycScalar(self.ring, (self.a * o.a) % phi, self.b)
        a = (self.a * o.a + self.ring.q * (self.b * o.b)) % phi
        b = (self.a * o.b + self.b * o.a) % phi
        return CycScalar(self.ring, a, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            c = _fmpq(Fraction(1) / Fraction(other))
            return CycScalar(self.ring, self.a * c, self.b * c)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        phi = self.ring.phi
        norm = (self.a * self.a - self.ring.q * (self.b * self.b)) % phi
        if norm.is_zero():
            raise ZeroDivisorInverse(
                "a^2 - q b^2 vanishes: sqrtq already lies in Q(zeta_M)")
        g, s, _ = norm.xgcd(phi)
        # g is a nonzero constant since Phi_M is irreducible
        ninv = s * (1 / g[0])
        return CycScalar(self.ring, (self.a * ninv) % phi, (-(self.b * ninv)) % phi)

    def sqrt_conjugate(self) -> "CycScalar":
        """Image under the automorphism sqrtq -> -sqrtq."""
        return CycScalar(self.ring, self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.b.is_zero() and self.a.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return to_fraction(self.a[0])

    def a_coeffs(self) -> list[Fraction]:
        return _padded(self.a, self.ring.degree)

    def b_coeffs(self) -> list[Fraction]:
        return _padded(self.b, self.ring.degree)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.M, tuple(self.a.coeffs()), tuple(self.b.coeffs())))
        return self._hash

    def __repr__(self):
        return f"CycScalar({self})"

    def __str__(self):
        return format_scalar(self)


def _padded(poly: fmpq_poly, n: int) -> list[Fraction]:
    cs = [to_fraction(c) for c in poly.coeffs()]
    return cs + [Fraction(0)] * (n - len(cs))


def _format_poly(poly: fmpq_poly) -> str:
    parts = []
    for k, c in enumerate(poly.coeffs()):
        c = to_fraction(c)
        if c == 0:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def format_scalar(x: CycScalar) -> str:
    if x.b.is_zero():
        return _format_poly(x.a)
    bs = _format_poly(x.b)
    if bs == "1":
        bpart = "sqrtq"
    elif bs == "-1":
        bpart = "-sqrtq"
    else:
        bpart = f"{bs}*sqrtq" if x.b.degree() == 0 else f"({bs})*sqrtq"
    if x.a.is_zero():
        return bpart
    return f"{_format_poly(x.a)} + {bpart}"


# --------------------------------------------------------------------------
# Laurent polynomials in lambda


class LaurentPoly:
    """Finite sum of c_n * lambda^n over a ScalarRing."""

    __slots__ = ("ring", "_c")

    def __init__(self, ring: ScalarRing, coeffs=None):
        self.ring = ring
        c = {}
        for n, v in (coeffs or {}).items():
            v = ring(v)
            if not v.is_zero():
                c[int(n)] = v
        self._c = c

    @classmethod
    def monomial(cls, ring, coeff, n: int = 0) -> "LaurentPoly":
        return cls(ring, {n: coeff})

    @classmethod
    def constant(cls, ring, coeff) -> "LaurentPoly":
        return cls(ring, {0: coeff})

    @classmethod
    def variable(cls, ring) -> "LaurentPoly":
        return cls(ring, {1: 1})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, n: int) -> CycScalar:
        return self._c.get(n, self.ring.zero)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_deg(self) -> int:
        if not self._c:
            raise ValueError("zero Laurent polynomial has no degree")
        return min(self._c)

    def max_deg(self) -> int:
        if not self._c:
            raise ValueError("zero Laurent polynomial has no degree")
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def _lift(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational, CycScalar)):
            return LaurentPoly.constant(self.ring, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for n, v in o._c.items():
            c[n] = c[n] + v if n in c else v
        return LaurentPoly(self.ring, c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {n: -v for n, v in self._c.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, CycScalar)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, CycScalar] = {}
        for n, v in self._c.items():
            for m, w in other._c.items():
                k = n + m
                c[k] = c[k] + v * w if k in c else v * w
        return LaurentPoly(self.ring, c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (n, v), = self._c.items()
            return LaurentPoly(self.ring, {-n * (-k): v.inverse() ** (-k)})
        out = LaurentPoly.constant(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "LaurentPoly":
        c = self.ring(c)
        return LaurentPoly(self.ring, {n: v * c for n, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by lambda^k."""
        return LaurentPoly(self.ring, {n + k: v for n, v in self._c.items()})

    def evaluate(self, x) -> CycScalar:
        x = self.ring(x)
        total = self.ring.zero
        if not self._c:
            return total
        lo = min(self._c)
        if lo < 0 and x.is_zero():
            raise PoleAtPoint("negative powers of lambda at lambda = 0")
        xinv = x.inverse() if lo < 0 else None
        for n, v in self._c.items():
            total = total + v * (x ** n if n >= 0 else xinv ** (-n))
        return total

    def substitute_monomial(self, c, k: int) -> "LaurentPoly":
        """Replace lambda by c * lambda^k (c must be invertible if negative powers occur)."""
        c = self.ring(c)
        out: dict[int, CycScalar] = {}
        for n, v in self._c.items():
            m = n * k
            term = v * (c ** n)
            out[m] = out[m] + term if m in out else term
        return LaurentPoly(self.ring, out)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


def _fmt_coeff(c: CycScalar) -> tuple[str, bool]:
    """Return (text, is_simple) where simple texts need no parentheses."""
    s = str(c)
    simple = " " not in s
    return s, simple


def format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for n, c in p.items():
        mono = "" if n == 0 else (LAMBDA if n == 1 else f"{LAMBDA}^{n}")
        text, simple = _fmt_coeff(c)
        if not mono:
            parts.append(text if simple else f"({text})")
        elif text == "1":
            parts.append(mono)
        elif text == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{text}*{mono}" if simple else f"({text})*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# --------------------------------------------------------------------------
# polynomial helpers (lists of CycScalar, index = degree)


def _trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    ring_one_inv = den[-1].inverse()
    num = list(num)
    quot = [den[0].ring.zero] * max(len(num) - len(den) + 1, 0)
    while len(_trim(num)) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] * ring_one_inv
        quot[shift] = c
        for i, d in enumerate(den):
            num[i + shift] = num[i + shift] - c * d
        num.pop()
    return quot, num


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _trim(r)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _to_poly(p: LaurentPoly, base: int) -> list:
    n = p.max_deg() - base + 1
    out = [p.ring.zero] * n
    for k, c in p.items():
        out[k - base] = c
    return out


# --------------------------------------------------------------------------
# rational functions


class RationalFunc:
    """num/den with Laurent numerator and denominator.

    Canonical form: the denominator's lowest exponent is 0 and, when that
    lowest coefficient is invertible, it equals 1.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        ring = num.ring
        if den is None:
            den = LaurentPoly.constant(ring, 1)
        if den.is_zero():
            raise DivisionByZeroPoly("zero denominator")
        shift = -den.min_deg()
        num, den = num.shift(shift), den.shift(shift)
        lead = den.coeff(0)
        if lead != 1:
            try:
                inv = lead.inverse()
            except ZeroDivisorInverse:
                inv = None
            if inv is not None:
                num, den = num.scale(inv), den.scale(inv)
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFunc":
        return cls(p)

    def _lift(self, other) -> "RationalFunc | None":
        if isinstance(other, RationalFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunc(other)
        if isinstance(other, (int, Rational, CycScalar)):
            return RationalFunc(LaurentPoly.constant(self.ring, other))
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_monomial():
            raise ValueError("not a Laurent polynomial")
        (n, c), = self.den.items()
        return self.num.scale(c.inverse()).shift(-n)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunc(self.num + o.num, self.den)
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise DivisionByZeroPoly("division by the zero rational function")
        return RationalFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def evaluate(self, x) -> CycScalar:
        x = self.ring(x)
        num, den = self.num, self.den
        if x.is_zero() and not num.is_zero():
            # clear negative powers jointly so a removable point at 0 evaluates
            shift = LaurentPoly.monomial(self.ring, self.ring.one, -min(num.min_deg(), den.min_deg()))
            num, den = num * shift, den * shift
        d = den.evaluate(x)
        if d.is_zero():
            raise PoleAtPoint(f"denominator vanishes at {x}")
        return num.evaluate(x) * d.inverse()

    def substitute_monomial(self, c, k: int) -> "RationalFunc":
        return RationalFunc(self.num.substitute_monomial(c, k),
                            self.den.substitute_monomial(c, k))

    def reduced(self) -> "RationalFunc":
        """Cancel the polynomial gcd of numerator and denominator when possible."""
        if self.num.is_zero():
            return RationalFunc(self.num, LaurentPoly.constant(self.ring, 1))
        if self.den.is_monomial():
            return self
        nb, db = self.num.min_deg(), 0
        n_poly, d_poly = _to_poly(self.num, nb), _to_poly(self.den, db)
        try:
            g = _poly_gcd(n_poly, d_poly)
            if len(g) <= 1:
                return self
            nq, nr = _poly_divmod(n_poly, g)
            dq, dr = _poly_divmod(d_poly, g)
        except ZeroDivisorInverse:
            return self
        if _trim(nr) or _trim(dr):
            return self
        num = LaurentPoly(self.ring, {i + nb: c for i, c in enumerate(nq)})
        den = LaurentPoly(self.ring, {i + db: c for i, c in enumerate(dq)})
        return RationalFunc(num, den)

    def __repr__(self):
        return f"RationalFunc({self})"

    def __str__(self):
        return format_rational(self)


def format_rational(r: RationalFunc) -> str:
    r = r.reduced()
    if r.den == LaurentPoly.constant(r.ring, 1):
        return format_laurent(r.num)
    return f"({format_laurent(r.num)})/({format_laurent(r.den)})"
