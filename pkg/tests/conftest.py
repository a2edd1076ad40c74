"""Shared oracles.

``naive_count`` walks P^3(F_p) one point at a time in plain Python; it shares
no code with the package and only works over prime fields.
"""

from __future__ import annotations

import itertools

import pytest

from delsarte_k3.field_characters import make_field
from delsarte_k3.pencil_counts import get_pencil


def projective_points(p: int):
    for x in itertools.product(range(p), repeat=4):
        first = next((v for v in x if v), None)
        if first == 1:
            yield x


def naive_count(label: str, psi: int, p: int) -> int:
    spec = get_pencil(label)
    n = 0
    for x in projective_points(p):
        val = -spec.dT * psi * x[0] * x[1] * x[2] * x[3]
        for row in spec.A:
            m = 1
            for xi, e in zip(x, row):
                m *= xi**e
            val += m
        n += val % p == 0
    return n


def naive_gauss(p: int, m: int) -> complex:
    """g(m) over F_p with omega(g) = e^{2 pi i / (p-1)} for the package's generator g."""
    import cmath

    ctx = make_field(p)
    total = 0j
    for x in range(1, p):
        k = ctx.dlog(x)
        total += cmath.exp(2j * cmath.pi * (m * k / (p - 1) + x / p))
    return total


@pytest.fixture(scope="session")
def oracle():
    return naive_count
