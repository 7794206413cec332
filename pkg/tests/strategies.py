"""Hypothesis strategies that drive the library's seeded generators."""

import random

from hypothesis import strategies as st

from lmw.search.generators import Bounds, random_formula, random_model
from lmw.syntax.base import E, prop

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def formulas(language: str, budget: int = 3, nprops: int = 2, nvars: int = 2):
    symbols = (E,) if language in ("fo", "fo+") else ()
    return seeds.map(lambda s: random_formula(random.Random(s), language, budget, nprops, nvars, symbols))


def models(kind: str, **bounds):
    b = Bounds(**bounds)
    symbols = tuple(prop(i) for i in range(b.props)) + (E,)
    return seeds.map(lambda s: random_model(random.Random(s), kind, b, symbols))
