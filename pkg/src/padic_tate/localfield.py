"""Exact model of K = Q_l(pi) with pi^e = l and gcd(e, l) = 1.

Elements are stored by their rational coordinates in the basis
1, pi, ..., pi^(e-1).  Every element whose coordinates are nonnegative
numbers in Z[1/l] has a finite pi-adic digit expansion, and the digit view
is exposed through :meth:`KElement.digits` and :meth:`Field.from_digits`.
Negative or non-l-adic-terminating coordinates (for instance -1 in Z_3)
have only infinite expansions, so the coordinate form is the primary one;
``reduce`` produces the finite canonical digit representative modulo l^N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

from .errors import BadParameter, ConductorTooSmall, SizeOverflow, ZeroArgument
from .scalars import CycScalar, ScalarRing, get_ring

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def vl(x: Fraction, ell: int) -> float:
    """l-adic valuation of a rational (inf for zero)."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % ell == 0:
        n //= ell
        v += 1
    while d % ell == 0:
        d //= ell
        v -= 1
    return v


def ell_split(x: Fraction, ell: int) -> tuple[int, int]:
    """For x = n / (l^t w) with gcd(w, l) = 1, return (x * l^t * w) * w^-1 mod l^t and t.

    That is, the residue u mod l^t with x = u / l^t modulo Z_(l), and t >= 0.
    """
    x = Fraction(x)
    d = x.denominator
    t = 0
    while d % ell == 0:
        d //= ell
        t += 1
    if t == 0:
        return 0, 0
    mod = ell ** t
    return (x.numerator * pow(d, -1, mod)) % mod, t


@dataclass(frozen=True)
class Field:
    """The field K itself: only l and e matter for element arithmetic."""

    ell: int
    e: int

    @property
    def q(self) -> int:
        return self.ell

    @property
    def delta(self) -> int:
        return self.e - 1

    def elem(self, x) -> "KElement":
        if isinstance(x, KElement):
            if x.K != self:
                raise ValueError("element of a different field")
            return x
        return KElement(self, (Fraction(x),) + (Fraction(0),) * (self.e - 1))

    @property
    def zero(self) -> "KElement":
        return self.elem(0)

    @property
    def one(self) -> "KElement":
        return self.elem(1)

    def pi_pow(self, j: int) -> "KElement":
        """pi^j for any integer j."""
        k, i = divmod(j, self.e)
        coords = [Fraction(0)] * self.e
        coords[i] = Fraction(self.ell) ** k
        return KElement(self, tuple(coords))

    @property
    def pi(self) -> "KElement":
        return self.pi_pow(1)

    def from_coords(self, coords: Iterable) -> "KElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.e:
            raise BadParameter(f"expected {self.e} coordinates")
        return KElement(self, coords)

    def from_digits(self, digits) -> "KElement":
        """Sum of c_j pi^j from a mapping or iterable of (j, c_j) pairs."""
        items = digits.items() if isinstance(digits, dict) else digits
        e, ell = self.e, self.ell
        clean: dict[int, int] = {}
        for j, c in items:
            c = int(c)
            if not 0 <= c < ell:
                raise BadParameter(f"digit {c} out of range for l={ell}")
            if c:
                clean[int(j)] = c
        if not clean:
            return KElement(self, (Fraction(0),) * e, {})
        kmin = min(j // e for j in clean)
        shift = max(0, -kmin)
        nums = [0] * e
        for j, c in clean.items():
            k, i = divmod(j, e)
            nums[i] += c * ell ** (k + shift)
        den = ell ** shift
        coords = tuple(Fraction(n, den) for n in nums)
        return KElement(self, coords, dict(sorted(clean.items())))


class KElement:
    """An element of K, immutable and hashable."""

    __slots__ = ("K", "coords", "_hash", "_fd")

    def __init__(self, K: Field, coords: tuple, finite_digits: dict | None = None):
        self.K = K
        self.coords = coords
        self._hash = None
        self._fd = finite_digits

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> "KElement | None":
        if isinstance(other, KElement):
            if other.K != self.K:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.K.elem(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return KElement(self.K, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.K, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return KElement(self.K, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        e, ell = self.K.e, self.K.ell
        out = [Fraction(0)] * e
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if not b:
                    continue
                k = i + j
                if k >= e:
                    out[k - e] += ell * a * b
                else:
                    out[k] += a * b
        return KElement(self.K, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "KElement":
        if self.is_zero():
            raise ZeroArgument("inverse of zero")
        e = self.K.e
        if e == 1:
            return KElement(self.K, (1 / self.coords[0],))
        # solve M c = (1, 0, ..., 0) where column j of M is self * pi^j
        cols = [(self * self.K.pi_pow(j)).coords for j in range(e)]
        mat = [[cols[j][i] for j in range(e)] + [Fraction(int(i == 0))] for i in range(e)]
        for col in range(e):
            piv = next(r for r in range(col, e) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            pv = mat[col][col]
            mat[col] = [v / pv for v in mat[col]]
            for r in range(e):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
        return KElement(self.K, tuple(mat[i][e] for i in range(e)))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.K.one
        for _ in range(n):
            out = out * self
        return out

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def valuation(self):
        """ord_pi(x); math.inf for zero."""
        e, ell = self.K.e, self.K.ell
        return min((e * vl(a, ell) + i for i, a in enumerate(self.coords) if a), default=INF)

    def trace(self) -> Fraction:
        return self.K.e * self.coords[0]

    def digits(self, upto: int) -> dict[int, int]:
        """pi-adic digits c_j for valuation <= j < upto (nonzero only)."""
        if self._fd is not None:
            return {j: c for j, c in self._fd.items() if j < upto}
        if self.is_zero():
            return {}
        e, ell = self.K.e, self.K.ell
        out: dict[int, int] = {}
        for i, a in enumerate(self.coords):
            if not a:
                continue
            lo = vl(a, ell)
            # number of l-adic digits of a needed: exponents k with e*k + i < upto
            hi = -((i - upto) // e)  # ceil((upto - i)/e)
            if hi <= lo:
                continue
            scaled = a / Fraction(ell) ** lo
            mod = ell ** (hi - lo)
            n = (scaled.numerator * pow(scaled.denominator, -1, mod)) % mod
            k = lo
            while n:
                n, c = divmod(n, ell)
                if c:
                    out[e * k + i] = c
                k += 1
        return dict(sorted(out.items()))

    def reduce(self, N: int) -> "KElement":
        """Canonical representative of x + l^N: the digit expansion truncated below N."""
        return self.K.from_digits(self.digits(N))

    def has_finite_digits(self) -> bool:
        """True when all coordinates are nonnegative with l-power denominators."""
        ell = self.K.ell
        for a in self.coords:
            if a < 0:
                return False
            d = a.denominator
            while d % ell == 0:
                d //= ell
            if d != 1:
                return False
        return True

    def finite_digits(self) -> dict[int, int]:
        """All digits of an element with a finite expansion."""
        if self._fd is not None:
            return dict(self._fd)
        if not self.has_finite_digits():
            raise ValueError("element has no finite pi-adic expansion")
        if self.is_zero():
            return {}
        top = max(self.K.e * (vl(a, self.K.ell) + len(_base_digits(a, self.K.ell))) + i
                  for i, a in enumerate(self.coords) if a)
        return self.digits(top + 1)

    def unit_part(self) -> tuple[int, "KElement"]:
        """(m, u) with x = pi^m u and u a unit."""
        m = self.valuation()
        if m == INF:
            raise ZeroArgument("zero has no unit part")
        return m, self * self.K.pi_pow(-m)

    def in_ideal(self, N) -> bool:
        """x in l^N."""
        return self.valuation() >= N

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.K == o.K and self.coords == o.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.K, self.coords))
        return self._hash

    def sort_key(self):
        return self.coords

    def __repr__(self):
        return f"KElement({self})"

    def __str__(self):
        return format_element(self)


def _base_digits(a: Fraction, ell: int) -> list[int]:
    n = (a * Fraction(ell) ** (-vl(a, ell))).numerator
    out = []
    while n:
        n, c = divmod(n, ell)
        out.append(c)
    return out


def format_element(x: KElement) -> str:
    if x.is_zero():
        return "0"
    if x.K.e == 1:
        return str(x.coords[0])
    parts = []
    for i, a in enumerate(x.coords):
        if not a:
            continue
        mono = "" if i == 0 else ("pi" if i == 1 else f"pi^{i}")
        if not mono:
            parts.append(str(a))
        elif a == 1:
            parts.append(mono)
        else:
            parts.append(f"{a}*{mono}")
    return " + ".join(parts)


# --------------------------------------------------------------------------
# session parameters


@dataclass(frozen=True)
class LocalFieldParams:
    """Arithmetic context: the field K, the scalar prime p and the conductor M.

    ``zeta_twist`` t selects the generative system zeta^t in place of zeta
    (t must be a unit at l); ``cap`` bounds every coset enumeration.
    """

    ell: int
    e: int
    p: int
    n_root: int
    M: int | None = None
    zeta_twist: int = 1
    cap: int = 10 ** 6
    _field: Field = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.ell) or not is_prime(self.p):
            raise BadParameter("l and p must be prime")
        if self.ell == self.p:
            raise BadParameter("l and p must differ")
        if self.e < 1 or math.gcd(self.e, self.ell) != 1:
            raise BadParameter("ramification degree must be positive and prime to l")
        if self.n_root < 0:
            raise BadParameter("n_root must be nonnegative")
        if self.M is None:
            object.__setattr__(self, "M", self.ell ** self.n_root * (self.ell - 1))
        if self.M % (self.ell ** self.n_root) or self.M % (self.ell - 1):
            raise BadParameter("M must be divisible by l^n_root and by l-1")
        if self.zeta_twist % self.ell == 0:
            raise BadParameter("the twist of zeta must be prime to l")
        object.__setattr__(self, "_field", Field(self.ell, self.e))

    @property
    def q(self) -> int:
        return self.ell

    @property
    def delta(self) -> int:
        return self.e - 1

    @property
    def K(self) -> Field:
        return self._field

    @property
    def ring(self) -> ScalarRing:
        return get_ring(self.M, self.q)

    def with_twist(self, t: int) -> "LocalFieldParams":
        return LocalFieldParams(self.ell, self.e, self.p, self.n_root, self.M, t, self.cap)

    def check_size(self, n: int, what: str = "enumeration"):
        if n > self.cap:
            raise SizeOverflow(f"{what} of size {n} exceeds cap {self.cap}")


# --------------------------------------------------------------------------
# trace and additive character


def trace(x: KElement) -> Fraction:
    """tr_{K/Q_l}(x) as an exact rational."""
    return x.trace()


def add_char_exp(params: LocalFieldParams, r: Fraction) -> int:
    """Exponent k mod M with zeta^r = zeta_M^k, for r a rational (a trace value)."""
    u, t = ell_split(Fraction(r) * params.zeta_twist, params.ell)
    if t == 0:
        return 0
    if t > params.n_root:
        raise ConductorTooSmall(
            f"additive character of order l^{t} needs n_root >= {t} (have {params.n_root})")
    return u * (params.M // params.ell ** t) % params.M


def trace_of_product(x: KElement, y: KElement) -> Fraction:
    """tr(x y); uses the digit expansions when both are finite (integer arithmetic only)."""
    if x._fd is None or y._fd is None:
        return (x * y).trace()
    K = x.K
    e, ell = K.e, K.ell
    terms = [(i + j, a * b) for i, a in x._fd.items() for j, b in y._fd.items() if (i + j) % e == 0]
    if not terms:
        return Fraction(0)
    low = min(0, min(k // e for k, _ in terms))
    num = sum(c * ell ** (k // e - low) for k, c in terms)
    return Fraction(e * num, ell ** (-low))


def add_char(params: LocalFieldParams, x: KElement) -> CycScalar:
    """zeta^{tr(x)}."""
    return params.ring.root(add_char_exp(params, x.trace()))


# --------------------------------------------------------------------------
# enumeration


def enumerate_range(params: LocalFieldParams, lo: int, hi: int) -> Iterator[KElement]:
    """Representatives sum_{lo <= j < hi} c_j pi^j of l^lo / l^hi."""
    n = max(hi - lo, 0)
    params.check_size(params.ell ** n)
    K = params.K
    js = range(lo, hi)
    for ds in product(range(params.ell), repeat=n):
        yield K.from_digits({j: c for j, c in zip(js, ds) if c})


def enumerate_cosets(params: LocalFieldParams, r: int, N: int) -> list[KElement]:
    """Representatives of l^{-r} / l^N (empty range gives the single class 0)."""
    if N + r < 0:
        return [params.K.zero]
    return list(enumerate_range(params, -r, N))


def unit_reps(params: LocalFieldParams, n: int) -> list[KElement]:
    """Representatives of (o/pi^n)^x as digit expansions (n >= 1)."""
    if n < 1:
        return [params.K.one]
    params.check_size((params.ell - 1) * params.ell ** (n - 1))
    K = params.K
    out = []
    for c0 in range(1, params.ell):
        for x in enumerate_range(params, 1, n):
            ds = x.finite_digits()
            ds[0] = c0
            out.append(K.from_digits(ds))
    return out
