"""JSON forms of the domain objects.  Rationals travel as "num/den" strings."""
from __future__ import annotations

import math
from fractions import Fraction

from .characters import Character, character_from_table, unit_group
from .errors import ParseError
from .localfield import KElement, LocalFieldParams
from .scalars import CycScalar, LaurentPoly, RationalFunc
from .stepfun import GeoTail, ShellFunction, StepFunction
from .zeta import ZetaValue


def rat_to_json(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_json(s) -> Fraction:
    try:
        if isinstance(s, bool):
            raise TypeError
        if isinstance(s, int):
            return Fraction(s)
        return Fraction(str(s))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def _bound_to_json(t):
    if t == math.inf:
        return "inf"
    if t == -math.inf:
        return "-inf"
    return rat_to_json(t)


def _trim_zeros(xs: list) -> list:
    xs = list(xs)
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def scalar_to_json(x: CycScalar) -> dict:
    return {"a": [rat_to_json(c) for c in _trim_zeros(x.a_coeffs())],
            "b": [rat_to_json(c) for c in _trim_zeros(x.b_coeffs())],
            "M": x.ring.M}


def scalar_from_json(params: LocalFieldParams, obj) -> CycScalar:
    ring = params.ring
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return ring(rat_from_json(obj))
    try:
        if obj.get("M", ring.M) != ring.M:
            raise ParseError(f"scalar lives in Q(zeta_{obj['M']}), session uses M={ring.M}")
        a = [rat_from_json(c) for c in obj.get("a", [])]
        b = [rat_from_json(c) for c in obj.get("b", [])]
    except AttributeError as exc:
        raise ParseError("scalar must be an object or a rational") from exc
    return ring.from_coeffs(a, b)


def element_to_json(x: KElement) -> dict:
    return {"digits": [[j, c] for j, c in sorted(x.finite_digits().items())]}


def element_from_json(params: LocalFieldParams, obj) -> KElement:
    try:
        digits = {int(j): int(c) for j, c in obj["digits"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("element must be {\"digits\": [[j, c_j], ...]}") from exc
    return params.K.from_digits(digits)


def tail_to_json(t: GeoTail) -> dict:
    return {"direction": t.direction, "start": t.start, "ratio": rat_to_json(t.ratio),
            "coeff": scalar_to_json(t.coeff)}


def tail_from_json(params: LocalFieldParams, obj) -> GeoTail:
    try:
        return GeoTail(obj["direction"], int(obj["start"]), rat_from_json(obj["ratio"]),
                       scalar_from_json(params, obj.get("coeff", 1)))
    except (KeyError, TypeError) as exc:
        raise ParseError("bad tail") from exc


def function_to_json(f) -> dict:
    step = f.step if isinstance(f, ShellFunction) else f
    out = {"terms": [{"rep": element_to_json(rep), "level": N, "coeff": scalar_to_json(c)}
                     for rep, N, c in step.terms]}
    if isinstance(f, ShellFunction):
        out["tails"] = [tail_to_json(t) for t in f.tails]
    return out


def function_from_json(params: LocalFieldParams, obj):
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ParseError("function must be an object with \"terms\"")
    try:
        terms = [(element_from_json(params, t["rep"]), int(t["level"]),
                  scalar_from_json(params, t.get("coeff", 1))) for t in obj["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("bad term") from exc
    step = StepFunction(params, terms)
    if "tails" in obj:
        return ShellFunction(params, step, [tail_from_json(params, t) for t in obj["tails"]])
    return step


def laurent_to_json(p: LaurentPoly) -> list:
    return [[k, scalar_to_json(c)] for k, c in sorted(p.items())]


def rational_to_json(r: RationalFunc) -> dict:
    return {"num": laurent_to_json(r.num), "den": laurent_to_json(r.den)}


def zeta_to_json(z: ZetaValue) -> dict:
    r = z.value.reduced()
    out = rational_to_json(r)
    out["annulus"] = [_bound_to_json(z.lo), _bound_to_json(z.hi)]
    out["text"] = str(r)
    return out


def character_to_json(chi: Character) -> dict:
    g = unit_group(chi.params, chi.level) if chi.level else None
    values = [] if g is None else [[element_to_json(u), scalar_to_json(chi.unit_value(u))]
                                   for u in g.reps]
    if chi.pi_exp == 1 and chi.pi_coeff == 1:
        lam = "FORMAL"
    elif chi.pi_exp == 0 and not isinstance(chi.pi_coeff, CycScalar):
        lam = rat_to_json(chi.pi_coeff)
    elif chi.pi_exp == 0:
        lam = scalar_to_json(chi.pi_coeff)
    else:
        lam = {"coeff": rat_to_json(chi.pi_coeff) if not isinstance(chi.pi_coeff, CycScalar)
               else scalar_to_json(chi.pi_coeff), "exp": chi.pi_exp}
    return {"level": chi.level, "unit_values": values, "lambda": lam}


def character_from_json(params: LocalFieldParams, obj) -> Character:
    try:
        level = int(obj["level"])
        g = unit_group(params, level) if level else None
        table = [0] * (g.size if g else 0)
        for rep, val in obj.get("unit_values", []):
            u = element_from_json(params, rep)
            v = scalar_from_json(params, val)
            k = next((k for k in range(params.M) if params.ring.root(k) == v), None)
            if k is None:
                raise ParseError("unit value is not a root of unity")
            table[g.index(u)] = k
        lam = obj.get("lambda", "FORMAL")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("bad character") from exc
    if lam == "FORMAL":
        return character_from_table(params, level, table)
    if isinstance(lam, dict) and "a" in lam:
        return character_from_table(params, level, table, pi_coeff=scalar_from_json(params, lam), pi_exp=0)
    return character_from_table(params, level, table, pi_coeff=rat_from_json(lam), pi_exp=0)
