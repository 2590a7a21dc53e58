from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from padic_tate.config import REFERENCE_CONFIGS
from padic_tate.localfield import LocalFieldParams
from padic_tate.stepfun import StepFunction

settings.register_profile(
    "default", deadline=None, max_examples=30,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

PARAMS = [cfg.params() for cfg in REFERENCE_CONFIGS]
IDS = [cfg.label for cfg in REFERENCE_CONFIGS]
Q3 = LocalFieldParams(3, 1, 5, 4)
K32 = LocalFieldParams(3, 2, 5, 3)


def each_config(fn):
    return pytest.mark.parametrize("P", PARAMS, ids=IDS)(fn)


def elements(P, lo=-2, hi=2):
    return st.lists(st.integers(0, P.ell - 1), min_size=hi - lo, max_size=hi - lo).map(
        lambda ds: P.K.from_digits({lo + i: d for i, d in enumerate(ds) if d}))


def nonzero_elements(P, lo=-2, hi=2):
    return elements(P, lo, hi).filter(lambda x: not x.is_zero())


def rationals(max_num=6, dens=(1, 2, 3, 4, 7)):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.sampled_from(dens))


def scalars(P):
    ring = P.ring
    term = st.builds(lambda c, k, s: ring.root(k) * c * (ring.sqrtq if s else 1),
                     rationals(), st.integers(0, P.M - 1), st.booleans())
    return st.lists(term, min_size=0, max_size=3).map(lambda ts: sum(ts, ring.zero))


@st.composite
def balls(draw, P, lo=-1, hi=2):
    N = draw(st.integers(lo, hi))
    rep = draw(elements(P, -2, N)) if N > -2 else P.K.zero
    return rep, N


@st.composite
def step_functions(draw, P, max_terms=4):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        rep, N = draw(balls(P))
        c = draw(rationals()) if draw(st.booleans()) else P.ring.root(draw(st.integers(0, P.M - 1)))
        terms.append((rep, N, c))
    return StepFunction(P, terms)
