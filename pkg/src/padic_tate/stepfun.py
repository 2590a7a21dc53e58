"""Step functions (finite combinations of coset indicators) and shell
functions carrying geometric tails toward 0 or toward infinity.

A StepFunction is always kept in canonical form: the maximal balls on which
it is constant with a nonzero value.  Because this partition is unique, two
step functions are equal exactly when their term sets are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BadParameter, ZeroDilation
from .localfield import INF, KElement, LocalFieldParams, add_char_exp, enumerate_range
from .scalars import CycScalar


def vp_rational(r, p: int):
    """p-adic valuation of a rational (inf for zero)."""
    r = Fraction(r)
    if r == 0:
        return INF
    v = 0
    n, d = r.numerator, r.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


Term = tuple  # (rep: KElement, level: int, coeff: CycScalar)


class _Node:
    __slots__ = ("own", "kids")

    def __init__(self):
        self.own = None
        self.kids: dict[int, _Node] = {}


def _canonical_terms(params: LocalFieldParams, terms: Iterable[Term]) -> dict:
    ring = params.ring
    K = params.K
    live = []
    for rep, N, c in terms:
        c = ring(c)
        if c.is_zero():
            continue
        N = int(N)
        live.append((K.elem(rep).digits(N), N, c))
    return _canonical_digit_terms(params, live)


def _canonical_digit_terms(params: LocalFieldParams, live: list) -> dict:
    """Canonical form from terms (digits below the level, level, nonzero coeff)."""
    ring = params.ring
    K = params.K
    if not live:
        return {}
    top = min(min(N, min(ds, default=N)) for ds, N, _ in live)
    root = _Node()
    for ds, N, c in live:
        node = root
        for j in range(top, N):
            node = node.kids.setdefault(ds.get(j, 0), _Node())
        node.own = c if node.own is None else node.own + c

    out: dict = {}
    ell = params.ell
    zero = ring.zero

    def walk(node: _Node, acc: CycScalar, digits: dict, level: int):
        """Return the uniform value of the subtree or None; emit maximal balls."""
        if node.own is not None:
            acc = acc + node.own
        if not node.kids:
            return acc
        vals = {}
        for d in range(ell):
            kid = node.kids.get(d)
            if kid is None:
                vals[d] = acc
            else:
                sub = dict(digits)
                if d:
                    sub[level] = d
                vals[d] = walk(kid, acc, sub, level + 1)
        first = vals[0]
        if first is not None and all(v is not None and v == first for v in vals.values()):
            return first
        for d, v in vals.items():
            if v is not None and not v.is_zero():
                sub = dict(digits)
                if d:
                    sub[level] = d
                out[(K.from_digits(sub), level + 1)] = v
        return None

    v = walk(root, zero, {}, top)
    if v is not None and not v.is_zero():
        out[(K.zero, top)] = v
    return out


class StepFunction:
    """sum of coeff * 1_{rep + l^level}, canonical and immutable."""

    __slots__ = ("params", "_terms")

    def __init__(self, params: LocalFieldParams, terms: Iterable[Term] = (), *, _canonical=None):
        self.params = params
        self._terms = _canonical if _canonical is not None else _canonical_terms(params, terms)

    # -- construction ------------------------------------------------------
    @classmethod
    def from_digit_terms(cls, params, items) -> "StepFunction":
        """Build from (digits dict with keys below level, level, coeff) triples."""
        ring = params.ring
        live = [(ds, int(N), ring(c)) for ds, N, c in items]
        return cls(params, _canonical=_canonical_digit_terms(
            params, [t for t in live if not t[2].is_zero()]))

    @classmethod
    def zero(cls, params) -> "StepFunction":
        return cls(params, ())

    @classmethod
    def indicator(cls, params, rep, level: int, coeff=1) -> "StepFunction":
        return cls(params, [(rep, level, coeff)])

    @classmethod
    def shell(cls, params, n: int, coeff=1) -> "StepFunction":
        """coeff * 1_{pi^n o^x}."""
        K = params.K
        return cls(params, [(K.zero, n, coeff), (K.zero, n + 1, -params.ring(coeff))])

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> list[Term]:
        return [(rep, N, c) for (rep, N), c in
                sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0].sort_key()))]

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.params.K == other.params.K and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def evaluate(self, x) -> CycScalar:
        x = self.params.K.elem(x)
        for (rep, N), c in self._terms.items():
            if (x - rep).valuation() >= N:
                return c
        return self.params.ring.zero

    __call__ = evaluate

    def min_level(self):
        return min((N for (_, N) in self._terms), default=None)

    def max_level(self):
        return max((N for (_, N) in self._terms), default=None)

    def support_valuation(self):
        """Smallest valuation of a point of the support (inf for zero)."""
        return min((min(rep.valuation(), N) for (rep, N) in self._terms), default=INF)

    def contains_zero(self) -> bool:
        return any(rep.is_zero() for (rep, _N) in self._terms)

    # -- algebra -----------------------------------------------------------
    def _same(self, other: "StepFunction"):
        if other.params.K != self.params.K or other.params.M != self.params.M:
            raise ValueError("step functions over different contexts")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, StepFunction):
            return NotImplemented
        self._same(other)
        return StepFunction(self.params, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "StepFunction":
        c = self.params.ring(c)
        if c.is_zero():
            return StepFunction.zero(self.params)
        return StepFunction(self.params, _canonical={k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return self.mul(other)
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        return NotImplemented

    def mul(self, other: "StepFunction") -> "StepFunction":
        """Pointwise product through the common refinement of two canonical partitions."""
        self._same(other)
        out = []
        for (a, N), c in self._terms.items():
            for (b, L), d in other._terms.items():
                if (a - b).valuation() >= min(N, L):
                    out.append((a, N, c * d) if N >= L else (b, L, c * d))
        return StepFunction(self.params, out)

    def restrict(self, rep, level: int) -> "StepFunction":
        return self.mul(StepFunction.indicator(self.params, rep, level))

    def translate(self, h) -> "StepFunction":
        """x -> f(x - h)."""
        h = self.params.K.elem(h)
        if h.is_zero():
            return self
        return StepFunction(self.params, [(rep + h, N, c) for (rep, N), c in self._terms.items()])

    def dilate(self, lam) -> "StepFunction":
        """x -> f(lam * x)."""
        lam = self.params.K.elem(lam)
        if lam.is_zero():
            raise ZeroDilation("dilation by zero")
        inv = lam.inverse()
        m = lam.valuation()
        return StepFunction(self.params, [(rep * inv, N - m, c) for (rep, N), c in self._terms.items()])

    def refine(self, level: int) -> list[Term]:
        """Terms split so that every ball has level >= ``level``."""
        out = []
        for (rep, N), c in self._terms.items():
            if N >= level:
                out.append((rep, N, c))
                continue
            for x in enumerate_range(self.params, N, level):
                out.append((rep + x, level, c))
        return out

    def char_mul(self, t, sign: int = 1) -> "StepFunction":
        """Pointwise product with y -> zeta^{sign * tr(t y)}."""
        params = self.params
        t = params.K.elem(t)
        if t.is_zero() or self.is_zero():
            return self
        m = -t.valuation() - params.delta
        ring = params.ring
        out = []
        for rep, N, c in self.refine(m):
            k = add_char_exp(params, (t * rep).trace())
            out.append((rep, N, c * ring.root(sign * k)))
        return StepFunction(params, out)

    def integral(self) -> CycScalar:
        """Haar integral with the self-dual normalization vol(o) = q^{-delta/2}."""
        ring = self.params.ring
        total = ring.zero
        d = self.params.delta
        for (_, N), c in self._terms.items():
            total = total + c * ring.sqrtq_pow(-2 * N - d)
        return total

    def __repr__(self):
        return f"StepFunction({format_step(self)})"

    def __str__(self):
        return format_step(self)


def format_step(f: StepFunction) -> str:
    if f.is_zero():
        return "0"
    return " + ".join(f"({c})*1[{rep} + l^{N}]" for rep, N, c in f.terms)


# --------------------------------------------------------------------------
# geometric tails


@dataclass(frozen=True)
class GeoTail:
    """coeff * sum_{k>=0} ratio^k * 1_{pi^{s(n0+k)} o^x}, s = +1 toward 0, -1 toward infinity."""

    direction: str
    start: int
    ratio: Fraction
    coeff: CycScalar

    def __post_init__(self):
        if self.direction not in ("zero", "inf"):
            raise BadParameter(f"unknown tail direction {self.direction!r}")
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        object.__setattr__(self, "start", int(self.start))

    def check(self, p: int):
        if vp_rational(self.ratio, p) <= 0:
            raise BadParameter(f"tail ratio {self.ratio} is not p-adically small (p={p})")

    def shell_exponent(self, k: int) -> int:
        """Valuation of the k-th shell."""
        return self.start + k if self.direction == "zero" else -(self.start + k)

    def value_at(self, x: KElement) -> CycScalar:
        ring = self.coeff.ring
        if x.is_zero():
            return ring.zero
        m = x.valuation()
        k = m - self.start if self.direction == "zero" else -m - self.start
        if k < 0:
            return ring.zero
        return self.coeff * (self.ratio ** k)

    def advance(self, k: int) -> "GeoTail":
        """The same tail with its first k shells removed."""
        return GeoTail(self.direction, self.start + k, self.ratio, self.coeff * (self.ratio ** k))

    def head(self, params, k: int) -> StepFunction:
        """The first k shells as a step function."""
        terms = []
        for i in range(k):
            c = self.coeff * (self.ratio ** i)
            n = self.shell_exponent(i)
            terms += [(params.K.zero, n, c), (params.K.zero, n + 1, -c)]
        return StepFunction(params, terms)


class ShellFunction:
    """step + sum of geometric tails; values simply add where pieces overlap."""

    __slots__ = ("params", "step", "tails")

    def __init__(self, params: LocalFieldParams, step: StepFunction | None = None,
                 tails: Iterable[GeoTail] = ()):
        self.params = params
        step = step if step is not None else StepFunction.zero(params)
        merged: dict = {}
        for t in tails:
            t = GeoTail(t.direction, t.start, t.ratio, params.ring(t.coeff))
            t.check(params.p)
            if t.coeff.is_zero():
                continue
            if t.ratio == 0:
                step = step + t.head(params, 1)
                continue
            key = (t.direction, t.start, t.ratio)
            merged[key] = merged[key] + t.coeff if key in merged else t.coeff
        self.step = step
        self.tails = tuple(GeoTail(d, s, r, c) for (d, s, r), c in
                           sorted(merged.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
                           if not c.is_zero())

    @classmethod
    def from_step(cls, f: StepFunction) -> "ShellFunction":
        return cls(f.params, f)

    def evaluate(self, x) -> CycScalar:
        x = self.params.K.elem(x)
        v = self.step.evaluate(x)
        for t in self.tails:
            v = v + t.value_at(x)
        return v

    __call__ = evaluate

    def value_at_zero(self) -> CycScalar:
        return self.step.evaluate(self.params.K.zero)

    def normalized(self) -> "ShellFunction":
        """Align tails with equal direction and ratio to a common start."""
        groups: dict = {}
        for t in self.tails:
            groups.setdefault((t.direction, t.ratio), []).append(t)
        step = self.step
        tails = []
        for (d, r), ts in groups.items():
            s = max(t.start for t in ts)
            c = self.params.ring.zero
            for t in ts:
                step = step + t.head(self.params, s - t.start)
                c = c + t.advance(s - t.start).coeff
            tails.append(GeoTail(d, s, r, c))
        return ShellFunction(self.params, step, tails)

    def is_zero(self) -> bool:
        n = self.normalized()
        return n.step.is_zero() and not n.tails

    def __eq__(self, other):
        if isinstance(other, StepFunction):
            other = ShellFunction.from_step(other)
        if not isinstance(other, ShellFunction):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, StepFunction):
            return ShellFunction(self.params, self.step + other, self.tails)
        if not isinstance(other, ShellFunction):
            return NotImplemented
        return ShellFunction(self.params, self.step + other.step, self.tails + other.tails)

    __radd__ = __add__

    def scale(self, c) -> "ShellFunction":
        c = self.params.ring(c)
        return ShellFunction(self.params, self.step.scale(c),
                             [GeoTail(t.direction, t.start, t.ratio, t.coeff * c) for t in self.tails])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, StepFunction):
            other = ShellFunction.from_step(other)
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, CycScalar)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def dilate(self, lam) -> "ShellFunction":
        """x -> F(lam x); shells move by -ord(lam)."""
        lam = self.params.K.elem(lam)
        if lam.is_zero():
            raise ZeroDilation("dilation by zero")
        m = lam.valuation()
        tails = [GeoTail(t.direction, t.start - m if t.direction == "zero" else t.start + m,
                         t.ratio, t.coeff) for t in self.tails]
        return ShellFunction(self.params, self.step.dilate(lam), tails)

    def translate(self, h) -> "ShellFunction":
        """x -> F(x - h).

        Shells pi^{-n} o^x with -n < ord(h) are stable under the shift, so a
        toward-infinity tail keeps its far part and only finitely many shells
        move into the step part.  A toward-zero tail is not stable and is refused.
        """
        h = self.params.K.elem(h)
        if h.is_zero():
            return self
        if any(t.direction == "zero" for t in self.tails):
            raise BadParameter("translation of a tail accumulating at 0 leaves the shell class")
        vh = h.valuation()
        step = self.step
        tails = []
        for t in self.tails:
            k = max(0, 1 - vh - t.start)  # first k with -(start+k) < ord(h)
            step = step + t.head(self.params, k)
            tails.append(t.advance(k))
        return ShellFunction(self.params, step.translate(h), tails)

    def truncate(self, T: int) -> StepFunction:
        """Step part plus shells 0..T of every tail."""
        out = self.step
        for t in self.tails:
            out = out + t.head(self.params, T + 1)
        return out

    def __repr__(self):
        tails = ", ".join(f"{t.direction}:{t.start}:{t.ratio}:{t.coeff}" for t in self.tails)
        return f"ShellFunction(step={self.step}, tails=[{tails}])"


def as_shell(f) -> ShellFunction:
    return f if isinstance(f, ShellFunction) else ShellFunction.from_step(f)

