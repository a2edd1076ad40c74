import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delsarte_k3 import field_characters as fc

from conftest import naive_gauss

SMALL_FIELDS = [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3), (7, 2)]


@pytest.mark.parametrize("p,u", SMALL_FIELDS)
def test_generator_has_full_order(p, u):
    ctx = fc.make_field(p, u)
    seen = {ctx.pow(ctx.generator, k) for k in range(ctx.qx)}
    assert seen == set(range(1, ctx.q))


def test_field_data_for_small_extensions():
    f9 = fc.make_field(3, 2)
    assert f9.modulus == (1, 0, 1)
    assert f9.generator == 4
    f1681 = fc.make_field(41, 2)
    assert f1681.modulus == (3, 0, 1)
    assert f1681.generator == 43


@pytest.mark.parametrize("bad", [1, 2, 4, 9, -3])
def test_rejects_non_odd_primes(bad):
    with pytest.raises(fc.InvalidPrime):
        fc.make_field(bad)


def test_rejects_bad_degree():
    with pytest.raises(fc.InvalidDegree):
        fc.make_field(5, 0)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_gauss_table_matches_direct_sum(p):
    table = fc.gauss_table(fc.make_field(p))
    for m in range(p - 1):
        assert abs(complex(table[m]) - naive_gauss(p, m)) < 1e-9


@pytest.mark.parametrize("p,u", [(5, 1), (3, 2), (5, 2)])
def test_high_precision_agrees_with_fft(p, u):
    ctx = fc.make_field(p, u)
    lo = fc.gauss_table(ctx, 53)
    hi = fc.gauss_table(ctx, 128)
    for m in range(ctx.qx):
        assert abs(complex(lo[m]) - complex(hi[m])) < 1e-10


def test_unsupported_precision():
    with pytest.raises(ValueError):
        fc.gauss_table(fc.make_field(5), 64)


def test_conjugate_pairing():
    ctx = fc.make_field(13)
    table = fc.gauss_table(ctx)
    # g(-m) = omega(-1)^m conj g(m)
    for m in range(1, ctx.qx):
        lhs = complex(table[-m])
        rhs = (-1) ** m * complex(table[m]).conjugate()
        assert abs(lhs - rhs) < 1e-9


def test_hasse_davenport_rejects_non_divisor():
    table = fc.gauss_table(fc.make_field(7))
    with pytest.raises(fc.InvalidDivisor):
        fc.hasse_davenport_residual(table, 4, 1)


def test_certify_integer():
    assert fc.certify_integer(3.0000001 + 1e-9j) == 3
    with pytest.raises(fc.PrecisionError):
        fc.certify_integer(2.5)
    with pytest.raises(fc.PrecisionError):
        fc.certify_integer(3 + 0.01j)


def test_sqrt_minus_one():
    ctx = fc.make_field(13)
    roots = ctx.sqrt_minus_one()
    assert roots == [5, 8]
    assert fc.make_field(7).sqrt_minus_one() == []
    ctx9 = fc.make_field(3, 2)
    for r in ctx9.sqrt_minus_one():
        assert ctx9.mul(r, r) == ctx9.neg(1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_field_axioms(field, data):
    ctx = fc.make_field(*field)
    a, b, c = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.pow(a, ctx.qx) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_trace_is_additive(field, data):
    ctx = fc.make_field(*field)
    a, b = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(2))
    assert ctx.trace(ctx.add(a, b)) == (ctx.trace(a) + ctx.trace(b)) % ctx.p
    assert ctx.trace(ctx.frobenius(a)) == ctx.trace(a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10_000), st.integers(1, 10_000))
def test_from_rational_roundtrip(num, den):
    ctx = fc.make_field(11)
    if den % 11 == 0:
        with pytest.raises(ZeroDivisionError):
            ctx.from_rational(num, den)
        return
    x = ctx.from_rational(num, den)
    assert ctx.mul(x, ctx.from_int(den)) == ctx.from_int(num)


def test_omega_is_multiplicative():
    ctx = fc.make_field(11)
    for a in range(1, 11):
        for b in range(1, 11):
            lhs = ctx.omega(ctx.mul(a, b))
            assert cmath.isclose(lhs, ctx.omega(a) * ctx.omega(b), abs_tol=1e-12)
