"""Shared random-value generators for the test suite.

Everything takes an explicit random.Random so test runs are seeded and
reproducible. Generators return normalized library values; "nonzero"
variants retry until they get one.
"""

from __future__ import annotations

import random

from perffield.multipoly import MultiPoly
from perffield.perfclosure import PerfContext, PerfElem
from perffield.primefield import PrimeField
from perffield.ratfunc import RatFunc
from perffield.septools import UniPoly


def random_multipoly(
    rng: random.Random,
    field: PrimeField,
    nvars: int,
    max_terms: int = 4,
    max_deg: int = 4,
) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = _random_mono(rng, nvars, max_deg)
        terms[mono] = rng.randrange(field.p)
    return MultiPoly(field, nvars, terms)


def _random_mono(rng: random.Random, nvars: int, max_deg: int) -> tuple[int, ...]:
    total = rng.randint(0, max_deg)
    mono = [0] * nvars
    for _ in range(total):
        mono[rng.randrange(nvars)] += 1
    return tuple(mono)


def random_nonzero_multipoly(rng, field, nvars, max_terms=4, max_deg=4) -> MultiPoly:
    while True:
        f = random_multipoly(rng, field, nvars, max_terms, max_deg)
        if not f.is_zero:
            return f


def random_ratfunc(rng, field, nvars, max_terms=3, max_deg=3) -> RatFunc:
    num = random_multipoly(rng, field, nvars, max_terms, max_deg)
    den = random_nonzero_multipoly(rng, field, nvars, max_terms, max_deg)
    return RatFunc(num, den)


def random_perfelem(
    rng: random.Random,
    ctx: PerfContext,
    max_level: int = 3,
    max_terms: int = 3,
    max_deg: int = 6,
) -> PerfElem:
    level = rng.randint(0, max_level)
    body = random_ratfunc(rng, ctx.field, ctx.nvars, max_terms, max_deg)
    return PerfElem.canonical(ctx, level, body)


def random_nonzero_perfelem(rng, ctx, max_level=3, max_terms=3, max_deg=6) -> PerfElem:
    while True:
        a = random_perfelem(rng, ctx, max_level, max_terms, max_deg)
        if not a.is_zero:
            return a


def random_unipoly(
    rng: random.Random,
    ctx: PerfContext,
    max_deg: int = 4,
    mode: str = "perfect",
    coeff_level: int = 0,
    coeff_deg: int = 2,
) -> UniPoly:
    deg = rng.randint(0, max_deg)
    coeffs = [
        random_perfelem(rng, ctx, coeff_level, max_terms=2, max_deg=coeff_deg)
        for _ in range(deg + 1)
    ]
    return UniPoly(ctx, coeffs, mode)


def random_monic_unipoly(
    rng: random.Random,
    ctx: PerfContext,
    min_deg: int = 1,
    max_deg: int = 3,
    mode: str = "perfect",
    coeff_level: int = 0,
    coeff_deg: int = 2,
) -> UniPoly:
    deg = rng.randint(min_deg, max_deg)
    coeffs = [
        random_perfelem(rng, ctx, coeff_level, max_terms=2, max_deg=coeff_deg)
        for _ in range(deg)
    ]
    coeffs.append(ctx.one())
    return UniPoly(ctx, coeffs, mode)
