"""Cartier duality for the finite constant group G = l^{-r} o / l^N.

The group algebra of functions on G has the idempotent basis delta_a, the
comultiplication delta_a -> sum_{b+c=a} delta_b (x) delta_c, and grouplike
elements x_b = sum_a zeta^{tr(ab)} delta_a indexed by the dual group
l^{-N} d^{-1} / l^{r} d^{-1}.  Grouplike coefficients are roots of unity,
so the checks below compare exponents of zeta_M instead of scalars.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import BadParameter, ConductorTooSmall
from .localfield import (KElement, LocalFieldParams, add_char_exp, ell_split,
                         enumerate_cosets, trace_of_product)
from .scalars import CycScalar


class CosetGroup:
    """G = l^{-r} / l^N with its canonical digit representatives."""

    def __init__(self, params: LocalFieldParams, r: int, N: int):
        self.params = params
        self.r = r
        self.N = N
        self.reps: list[KElement] = enumerate_cosets(params, r, N)
        self._index = {a: i for i, a in enumerate(self.reps)}

    @property
    def size(self) -> int:
        return len(self.reps)

    def __len__(self):
        return len(self.reps)

    def index(self, x) -> int:
        x = self.params.K.elem(x)
        if self.N + self.r <= 0:
            return 0
        return self._index[x.reduce(self.N)]

    @cached_property
    def add_table(self) -> list[list[int]]:
        n = self.size
        self.params.check_size(n * n, "group addition table")
        return [[self.index(a + b) for b in self.reps] for a in self.reps]

    @cached_property
    def neg(self) -> list[int]:
        return [self.index(-a) for a in self.reps]

    def dual(self) -> "CosetGroup":
        """l^{-N} d^{-1} / l^{r} d^{-1} = l^{-N-delta} / l^{r-delta}."""
        d = self.params.delta
        return CosetGroup(self.params, self.N + d, self.r - d)

    @cached_property
    def generators(self) -> list[int]:
        """Greedy generating set: scan by decreasing order, keep elements outside the span so far."""
        add = self.add_table
        span = {0}
        gens: list[int] = []
        by_order = sorted(range(self.size), key=lambda i: (-self.order(i), i))
        for i in by_order:
            if i in span:
                continue
            gens.append(i)
            stack = list(span)
            while stack:
                x = stack.pop()
                for g in gens:
                    y = add[x][g]
                    if y not in span:
                        span.add(y)
                        stack.append(y)
        return gens

    def order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.add_table[x][i]
            k += 1
        return k


def pairing_exp(params: LocalFieldParams, a: KElement, b: KElement) -> int:
    """Exponent of zeta^{tr(ab)} as a power of zeta_M."""
    return add_char_exp(params, trace_of_product(a, b))


@dataclass(frozen=True)
class GroupAlgebraElement:
    """sum_a coeffs[a] delta_a, indexed like ``group.reps``."""

    group: CosetGroup
    coeffs: tuple

    def coeff(self, a) -> CycScalar:
        return self.coeffs[self.group.index(a)]

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, tuple(x * y for x, y in zip(self.coeffs, other.coeffs)))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.coeffs == other.coeffs

    __hash__ = None


def delta(group: CosetGroup, a) -> GroupAlgebraElement:
    ring = group.params.ring
    i = group.index(a)
    return GroupAlgebraElement(group, tuple(ring.one if j == i else ring.zero for j in range(group.size)))


def identity(group: CosetGroup) -> GroupAlgebraElement:
    ring = group.params.ring
    return GroupAlgebraElement(group, (ring.one,) * group.size)


def comult(x: GroupAlgebraElement) -> dict[tuple[int, int], CycScalar]:
    """Coefficients c(u, v) = x(u + v) of s(x) on delta_u (x) delta_v."""
    g = x.group
    g.params.check_size(g.size ** 2, "comultiplication table")
    add = g.add_table
    return {(u, v): x.coeffs[add[u][v]] for u in range(g.size) for v in range(g.size)}


def tensor(x: GroupAlgebraElement, y: GroupAlgebraElement) -> dict[tuple[int, int], CycScalar]:
    return {(u, v): a * b for u, a in enumerate(x.coeffs) for v, b in enumerate(y.coeffs)}


def xb_exponents(group: CosetGroup, b) -> tuple[int, ...]:
    params = group.params
    b = params.K.elem(b)
    return tuple(pairing_exp(params, a, b) for a in group.reps)


def make_xb(group: CosetGroup, b) -> GroupAlgebraElement:
    """x_b = sum_a zeta^{tr(ab)} delta_a."""
    params = group.params
    b = params.K.elem(b)
    if b.valuation() < -group.N - params.delta:
        raise BadParameter("b must lie in l^{-N} d^{-1}")
    ring = params.ring
    return GroupAlgebraElement(group, tuple(ring.root(k) for k in xb_exponents(group, b)))


def is_grouplike_exp(group: CosetGroup, exps) -> bool:
    """s(z) = z (x) z for z with coefficients zeta_M^{exps}."""
    M = group.params.M
    add = group.add_table
    n = group.size
    return all(exps[add[u][v]] == (exps[u] + exps[v]) % M for u in range(n) for v in range(n))


def pairing_matrix(params: LocalFieldParams, r: int, N: int) -> list[list[CycScalar]]:
    G = CosetGroup(params, r, N)
    D = G.dual()
    ring = params.ring
    return [[ring.root(pairing_exp(params, a, b)) for b in D.reps] for a in G.reps]


def pairing_exp_matrix(params: LocalFieldParams, r: int, N: int) -> list[list[int]]:
    G = CosetGroup(params, r, N)
    D = G.dual()
    return [[pairing_exp(params, a, b) for b in D.reps] for a in G.reps]


def verify_perfect(params: LocalFieldParams, r: int, N: int) -> bool:
    """Both kernels of (a, b) -> zeta^{tr(ab)} are trivial and the sizes agree."""
    P = pairing_exp_matrix(params, r, N)
    rows, cols = len(P), len(P[0])
    if rows != cols:
        return False
    col_vecs = [tuple(P[i][j] for i in range(rows)) for j in range(cols)]
    row_vecs = [tuple(row) for row in P]
    trivial_col = all(k == 0 for k in col_vecs[0])
    trivial_row = all(k == 0 for k in row_vecs[0])
    left = all(any(k != 0 for k in col_vecs[j]) for j in range(1, cols))
    right = all(any(k != 0 for k in row_vecs[i]) for i in range(1, rows))
    injective = len(set(col_vecs)) == cols and len(set(row_vecs)) == rows
    return trivial_col and trivial_row and left and right and injective


def enumerate_grouplikes(group: CosetGroup) -> list[tuple[int, ...]]:
    """Every homomorphism G -> mu(Q(zeta_M)), as exponent vectors.

    Each candidate assigns a root of unity of admissible order to every
    generator, is propagated along the generators, and is kept only if the
    full comultiplication identity holds.
    """
    params = group.params
    M = params.M
    gens = group.generators
    add = group.add_table
    choices = []
    for g in gens:
        o = group.order(g)
        step = M // _gcd(o, M)
        choices.append([k * step % M for k in range(_gcd(o, M))])
    found = []
    for imgs in product(*choices):
        exps = [None] * group.size
        exps[0] = 0
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g, k in zip(gens, imgs):
                y = add[x][g]
                val = (exps[x] + k) % M
                if exps[y] is None:
                    exps[y] = val
                    stack.append(y)
                elif exps[y] != val:
                    ok = False
                    break
        if ok and is_grouplike_exp(group, exps):
            found.append(tuple(exps))
    return found


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def classify_grouplikes(params: LocalFieldParams, r: int, N: int) -> dict:
    """Match every grouplike element with a unique x_b and count them."""
    G = CosetGroup(params, r, N)
    D = G.dual()
    xb = {}
    for b in D.reps:
        xb.setdefault(xb_exponents(G, b), []).append(b)
    homs = enumerate_grouplikes(G)
    unique = all(len(v) == 1 for v in xb.values())
    matched = all(h in xb for h in homs)
    xb_grouplike = all(is_grouplike_exp(G, e) for e in xb)
    return {
        "order": G.size,
        "grouplikes": len(homs),
        "dual_order": D.size,
        "bijective": unique and matched and xb_grouplike and len(homs) == G.size == len(xb),
    }


def _level_exp_from_trace(params: LocalFieldParams, r: int, N: int, tr) -> int:
    """zeta_{N,r}^{[l^k] tr} with k the exponent of the level-(r, N) pairing values."""
    e = params.e
    k = -((-(N + r)) // e)  # ceil((N + r) / e)
    if k <= 0:
        return 0
    if k > params.n_root:
        raise ConductorTooSmall(f"level ({r}, {N}) pairs into roots of order l^{k}")
    x = tr * params.ell ** k * params.zeta_twist
    if ell_split(x, params.ell)[1]:
        raise AssertionError("pairing value outside the level's root group")
    n = x.numerator * pow(x.denominator, -1, params.ell ** k) % params.ell ** k
    return n * (params.M // params.ell ** k) % params.M


def _level_pairing_exp(params: LocalFieldParams, r: int, N: int, a: KElement, b: KElement) -> int:
    return _level_exp_from_trace(params, r, N, trace_of_product(a, b))


def verify_level_compat(params: LocalFieldParams, r: int, N: int) -> bool:
    """Pairings computed at levels (r+1, N) and (r, N+1) restrict to level (r, N)."""
    G = CosetGroup(params, r, N)
    D = G.dual()
    # inclusion G_{r,N} -> G_{r+1,N}; dual surjects l^{-N-d}/l^{r+1-d} -> l^{-N-d}/l^{r-d}
    D_big = CosetGroup(params, r + 1, N).dual()
    for a in G.reps:
        for b in D_big.reps:
            t = trace_of_product(a, b)
            if _level_exp_from_trace(params, r + 1, N, t) != _level_exp_from_trace(params, r, N, t):
                return False
    # quotient G_{r,N+1} -> G_{r,N}; dual includes l^{-N-d}/l^{r-d} -> l^{-N-1-d}/l^{r-d}
    G_big = CosetGroup(params, r, N + 1)
    for a in G_big.reps:
        a_small = a.reduce(N)
        for b in D.reps:
            lhs = _level_exp_from_trace(params, r, N + 1, trace_of_product(a, b))
            rhs = _level_exp_from_trace(params, r, N, trace_of_product(a_small, b))
            if lhs != rhs:
                return False
    return True
