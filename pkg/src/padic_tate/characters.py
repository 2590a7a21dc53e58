"""Multiplicative characters chi = chi~ * chi_lambda of K^x.

A character stores its level n, the unit part as a table from
representatives of (o/pi^n)^x to exponents of zeta_M, and the value at pi
as ``pi_coeff * lambda^pi_exp``.  ``pi_exp = 1, pi_coeff = 1`` is the
formal parameter lambda; ``pi_exp = 0`` means a concrete value.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import BadOrder, FormalLambda, NotMultiplicative, ZeroArgument
from .localfield import KElement, LocalFieldParams, unit_reps
from .scalars import CycScalar, LaurentPoly
from .stepfun import vp_rational


class UnitGroup:
    """(o/pi^n)^x by brute force: representatives, multiplication, generators."""

    def __init__(self, params: LocalFieldParams, n: int):
        self.params = params
        self.n = n
        self.reps: list[KElement] = unit_reps(params, n)
        self._index = {u: i for i, u in enumerate(self.reps)}
        size = len(self.reps)
        params.check_size(size * size, "unit group table")
        self.mul = [[self.index(u * v) for v in self.reps] for u in self.reps]
        self.one = self.index(params.K.one)
        self.generators = self._generators()

    def index(self, u) -> int:
        u = self.params.K.elem(u)
        if self.n < 1:
            return 0
        return self._index[u.reduce(self.n)]

    @property
    def size(self) -> int:
        return len(self.reps)

    def order(self, i: int) -> int:
        k, x = 1, i
        while x != self.one:
            x = self.mul[x][i]
            k += 1
        return k

    def _generators(self) -> list[int]:
        span = {self.one}
        gens: list[int] = []
        for i in sorted(range(self.size), key=lambda i: (-self.order(i), i)):
            if i in span:
                continue
            gens.append(i)
            stack = list(span)
            while stack:
                x = stack.pop()
                for g in gens:
                    y = self.mul[x][g]
                    if y not in span:
                        span.add(y)
                        stack.append(y)
        return gens

    def principal(self, k: int) -> list[int]:
        """Indices of representatives of 1 + pi^k o (k >= 1)."""
        return [i for i, u in enumerate(self.reps) if (u - 1).valuation() >= k]


@lru_cache(maxsize=None)
def unit_group(params: LocalFieldParams, n: int) -> UnitGroup:
    return UnitGroup(params, n)


@dataclass(frozen=True)
class Character:
    params: LocalFieldParams
    level: int
    table: tuple  # exponents of zeta_M, indexed like unit_group(params, level).reps
    pi_coeff: object = 1
    pi_exp: int = 1

    @property
    def is_formal(self) -> bool:
        return self.pi_exp != 0

    @property
    def levels(self) -> set[int]:
        """All admissible levels: a character trivial on units reports {0, 1} when o^x = 1 + pi o."""
        if self.level == 0 and self.params.q == 2:
            return {0, 1}
        return {self.level}

    @property
    def is_ramified(self) -> bool:
        return self.level >= 1

    def unit_exp(self, u: KElement) -> int:
        if self.level == 0:
            return 0
        g = unit_group(self.params, self.level)
        return self.table[g.index(u)]

    def unit_value(self, u: KElement) -> CycScalar:
        return self.params.ring.root(self.unit_exp(u))

    def pi_value(self):
        """chi(pi) as a Laurent monomial (formal) or a scalar."""
        ring = self.params.ring
        if self.is_formal:
            return LaurentPoly.monomial(ring, self.pi_coeff, self.pi_exp)
        return ring(self.pi_coeff)

    def with_lambda(self, lam) -> "Character":
        """Specialize the formal parameter to a concrete value."""
        if not self.is_formal:
            raise ValueError("character already has a concrete lambda")
        ring = self.params.ring
        value = ring(self.pi_coeff) * ring(lam) ** self.pi_exp
        if value.is_rational():
            value = value.to_fraction()
        return Character(self.params, self.level, self.table, value, 0)

    def __str__(self):
        lam = "FORMAL" if (self.pi_exp, self.pi_coeff) == (1, 1) else \
            (f"{self.pi_coeff}*λ^{self.pi_exp}" if self.pi_exp else str(self.pi_coeff))
        return f"Character(level={self.level}, table={list(self.table)}, pi={lam})"


def _minimize(params: LocalFieldParams, level: int, table: tuple) -> tuple[int, tuple]:
    """Smallest level on which the table is defined, re-indexed to that level."""
    if level == 0:
        return 0, ()
    if all(k == 0 for k in table):
        return 0, ()
    g = unit_group(params, level)
    n = level
    while n > 1:
        # trivial on 1 + pi^{n-1}? then the level drops
        if all(table[i] == 0 for i in g.principal(n - 1)):
            n -= 1
        else:
            break
    if n == level:
        return level, tuple(table)
    small = unit_group(params, n)
    new = [None] * small.size
    for i, u in enumerate(g.reps):
        j = small.index(u)
        if new[j] is None:
            new[j] = table[i]
        elif new[j] != table[i]:
            raise NotMultiplicative("table is not constant on cosets of the smaller level")
    return n, tuple(new)


def _root_exponent(params: LocalFieldParams, value) -> int:
    ring = params.ring
    v = ring(value)
    for k in range(params.M):
        if ring.root(k) == v:
            return k
    raise BadOrder(f"{value} is not a root of unity in Q(zeta_{params.M})")


def make_character(params: LocalFieldParams, level: int, generator_images=(),
                   *, exponents: bool = False, pi_coeff=1, pi_exp: int = 1) -> Character:
    """Character of (o/pi^level)^x given by images of ``unit_group(params, level).generators``.

    Images are roots of unity (scalars, or exponents of zeta_M when
    ``exponents`` is set).  The full table is built by propagating along
    the generators and then checked for multiplicativity.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    if level == 0:
        return Character(params, 0, (), pi_coeff, pi_exp)
    M = params.M
    g = unit_group(params, level)
    imgs = list(generator_images)
    if len(imgs) != len(g.generators):
        raise ValueError(f"expected {len(g.generators)} generator images")
    imgs = [int(k) % M if exponents else _root_exponent(params, k) for k in imgs]
    for gen, k in zip(g.generators, imgs):
        if k * g.order(gen) % M:
            raise BadOrder("image order does not divide the generator order")
    table: list = [None] * g.size
    table[g.one] = 0
    stack = [g.one]
    while stack:
        x = stack.pop()
        for gen, k in zip(g.generators, imgs):
            y = g.mul[x][gen]
            val = (table[x] + k) % M
            if table[y] is None:
                table[y] = val
                stack.append(y)
            elif table[y] != val:
                raise NotMultiplicative("generator images are inconsistent")
    for a in range(g.size):
        for b in range(g.size):
            if table[g.mul[a][b]] != (table[a] + table[b]) % M:
                raise NotMultiplicative("table fails multiplicativity")
    lvl, tab = _minimize(params, level, tuple(table))
    return Character(params, lvl, tab, pi_coeff, pi_exp)


def character_from_table(params: LocalFieldParams, level: int, table, *, pi_coeff=1,
                         pi_exp: int = 1) -> Character:
    """Character from a full exponent table (checked and level-minimized)."""
    g = unit_group(params, level) if level else None
    table = tuple(int(k) % params.M for k in table)
    if g is not None:
        if len(table) != g.size:
            raise ValueError("table size does not match the unit group")
        for a in range(g.size):
            for b in range(g.size):
                if table[g.mul[a][b]] != (table[a] + table[b]) % params.M:
                    raise NotMultiplicative("table fails multiplicativity")
    lvl, tab = _minimize(params, level, table)
    return Character(params, lvl, tab, pi_coeff, pi_exp)


def characters_of_level(params: LocalFieldParams, n: int) -> list[Character]:
    """All characters (formal lambda) whose minimal level is exactly n."""
    if n == 0:
        return [make_character(params, 0)]
    g = unit_group(params, n)
    M = params.M
    choices = []
    for gen in g.generators:
        o = g.order(gen)
        if M % o:
            raise BadOrder(f"unit group element order {o} does not divide M={M}")
        choices.append([k * (M // o) for k in range(o)])
    out, seen = [], set()
    for imgs in product(*choices):
        try:
            chi = make_character(params, n, imgs, exponents=True)
        except NotMultiplicative:
            continue
        if chi.level == n and chi.table not in seen:
            seen.add(chi.table)
            out.append(chi)
    return out


def formal_lambda_character(params: LocalFieldParams) -> Character:
    return make_character(params, 0)


def haar_char(params: LocalFieldParams) -> Character:
    """chi_Harr = chi_{1/q}: d(ax) = chi_Harr(a) dx."""
    return Character(params, 0, (), Fraction(1, params.q), 0)


def inverse(chi: Character) -> Character:
    M = chi.params.M
    ring = chi.params.ring
    c = chi.pi_coeff
    inv_c = 1 / Fraction(c) if not isinstance(c, CycScalar) else c.inverse()
    return Character(chi.params, chi.level, tuple((-k) % M for k in chi.table), inv_c, -chi.pi_exp)


def dual_char(chi: Character) -> Character:
    """chi* = (chi chi_Harr)^{-1}: table inverted, lambda -> q / lambda."""
    M = chi.params.M
    q = chi.params.q
    c = chi.pi_coeff
    new_c = q / Fraction(c) if not isinstance(c, CycScalar) else c.inverse() * q
    return Character(chi.params, chi.level, tuple((-k) % M for k in chi.table), new_c, -chi.pi_exp)


def eval_char(chi: Character, x):
    """chi(x) for nonzero x = pi^m u: lambda-monomial when formal, scalar otherwise."""
    params = chi.params
    x = params.K.elem(x)
    if x.is_zero():
        raise ZeroArgument("characters are not defined at 0")
    m, u = x.unit_part()
    ring = params.ring
    unit = ring.root(chi.unit_exp(u))
    c = ring(chi.pi_coeff) ** m
    if chi.is_formal:
        return LaurentPoly.monomial(ring, unit * c, chi.pi_exp * m)
    return unit * c


def modulus(chi: Character, p: int | None = None) -> int:
    """v_p(chi(pi)); the modulus itself is p^{-v}."""
    if chi.is_formal:
        raise FormalLambda("the modulus of a formal character is undefined")
    p = chi.params.p if p is None else p
    c = chi.pi_coeff
    if isinstance(c, CycScalar):
        c = c.to_fraction()
    return vp_rational(c, p)
