"""Finite-field hypergeometric sums H_q(alpha, beta | t) and F_q(gamma, delta, N | t).

Parameter multisets are kept as sorted tuples of ``Fraction`` in (0, 1].  All
combinatorial data (the gcd D, the multiplicities s(m), M, epsilon, D_delta,
gamma^gamma) is exact; only the character sums themselves are numeric.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .field_characters import FieldContext, GaussTable, PrecisionError, gauss_table

__all__ = [
    "BadPrimeForParameters",
    "DivisibilityError",
    "GammaTriple",
    "HypParams",
    "InvalidArgument",
    "InvalidGammaTriple",
    "MalformedParameters",
    "angle",
    "cyclotomic_poly",
    "gamma_sum",
    "gamma_triple",
    "hyp_params_from_alpha_beta",
    "hyp_params_from_cyclotomic",
    "hyp_sum",
    "s_multiplicity",
]


class MalformedParameters(ValueError):
    pass


class BadPrimeForParameters(ValueError):
    pass


class InvalidArgument(ValueError):
    pass


class InvalidGammaTriple(ValueError):
    pass


class DivisibilityError(ValueError):
    pass


def angle(x: Fraction | int) -> Fraction:
    """Reduce a rational into (0, 1]."""
    x = Fraction(x) % 1
    return x if x else Fraction(1)


def _sorted(xs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sorted(xs))


def _primitive_angles(d: int) -> list[Fraction]:
    return [angle(Fraction(k, d)) for k in range(1, d + 1) if gcd(k, d) == 1]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    res, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            res = -res
        f += 1
    return -res if n > 1 else res


# -- integer polynomial helpers (coefficients lowest degree first) -----------


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pdivexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("inexact division")
        out[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact division")
    return out


def _xn_minus_1(n: int) -> list[int]:
    return [-1] + [0] * (n - 1) + [1]


def cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    num, den = [1], [1]
    for d in _divisors(n):
        mu = _mobius(n // d)
        if mu == 1:
            num = _pmul(num, _xn_minus_1(d))
        elif mu == -1:
            den = _pmul(den, _xn_minus_1(d))
    return _pdivexact(num, den)


def _cyclotomic_exponents(lst: Sequence[int]) -> Counter:
    c = Counter()
    for n in lst:
        for d in _divisors(n):
            c[d] += 1
    return c


@dataclass(frozen=True)
class HypParams:
    """Hypergeometric data defined over Q.

    ``D_factors`` maps d to the multiplicity of the d-th cyclotomic polynomial
    in D(x) = gcd(prod(x^p_j - 1), prod(x^q_j - 1)).
    """

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    p_list: tuple[int, ...]
    q_list: tuple[int, ...]
    D_factors: tuple[tuple[int, int], ...]
    M: Fraction
    epsilon: int

    @property
    def D(self) -> list[int]:
        poly = [1]
        for d, e in self.D_factors:
            for _ in range(e):
                poly = _pmul(poly, cyclotomic_poly(d))
        return poly

    @property
    def lcd(self) -> int:
        return reduce(lcm, (x.denominator for x in self.alpha + self.beta), 1)

    def is_good(self, q: int) -> bool:
        return gcd(q, self.lcd) == 1

    def swapped(self) -> "HypParams":
        return hyp_params_from_alpha_beta(self.beta, self.alpha)


def hyp_params_from_cyclotomic(p_list: Sequence[int], q_list: Sequence[int]) -> HypParams:
    """Build (alpha, beta) from prod(x^p - 1) / prod(x^q - 1) after removing the gcd."""
    p_list = tuple(sorted(int(x) for x in p_list))
    q_list = tuple(sorted(int(x) for x in q_list))
    if any(x <= 0 for x in p_list + q_list):
        raise MalformedParameters("entries must be positive")
    if set(p_list) & set(q_list):
        raise MalformedParameters("p_list and q_list must be disjoint")
    num = _cyclotomic_exponents(p_list)
    den = _cyclotomic_exponents(q_list)
    D = {d: min(num[d], den[d]) for d in num if min(num[d], den[d]) > 0}
    alpha, beta = [], []
    for d in sorted(set(num) | set(den)):
        alpha += _primitive_angles(d) * (num[d] - D.get(d, 0))
        beta += _primitive_angles(d) * (den[d] - D.get(d, 0))
    if len(alpha) != len(beta) or not alpha:
        raise MalformedParameters(f"unbalanced parameters: |alpha|={len(alpha)}, |beta|={len(beta)}")
    M = Fraction(1)
    for x in p_list:
        M *= Fraction(x) ** x
    for x in q_list:
        M /= Fraction(x) ** x
    epsilon = -1 if sum(q_list) % 2 else 1
    params = HypParams(_sorted(alpha), _sorted(beta), p_list, q_list, tuple(sorted(D.items())), M, epsilon)
    _check_rational_identity(params)
    return params


def _check_rational_identity(params: HypParams) -> None:
    """prod(x^p-1) * prod_beta-cyclotomics == prod(x^q-1) * prod_alpha-cyclotomics."""
    lhs, rhs = [1], [1]
    for x in params.p_list:
        lhs = _pmul(lhs, _xn_minus_1(x))
    for x in params.q_list:
        rhs = _pmul(rhs, _xn_minus_1(x))
    for d, e in _cyclotomic_counts(params.beta).items():
        for _ in range(e):
            lhs = _pmul(lhs, cyclotomic_poly(d))
    for d, e in _cyclotomic_counts(params.alpha).items():
        for _ in range(e):
            rhs = _pmul(rhs, cyclotomic_poly(d))
    if lhs != rhs:
        raise MalformedParameters("parameter pair does not match the cyclotomic quotient")


def _cyclotomic_counts(angles: Sequence[Fraction]) -> Counter:
    """Multiplicity of each Phi_d, assuming the multiset is Galois-stable."""
    by_den = Counter(a.denominator for a in angles)
    out = Counter()
    for d, n in by_den.items():
        phi = len(_primitive_angles(d))
        if n % phi:
            raise MalformedParameters(f"angles with denominator {d} are not Galois-stable")
        out[d] = n // phi
    return out


def hyp_params_from_alpha_beta(alpha: Iterable, beta: Iterable) -> HypParams:
    """Recover the cyclotomic data (p_list, q_list) of a pair defined over Q."""
    alpha = _sorted(angle(Fraction(a)) for a in alpha)
    beta = _sorted(angle(Fraction(b)) for b in beta)
    if len(alpha) != len(beta):
        raise MalformedParameters("|alpha| != |beta|")
    if set(alpha) & set(beta):
        raise MalformedParameters("alpha and beta must not share values")
    c = _cyclotomic_counts(alpha)
    c.subtract(_cyclotomic_counts(beta))
    # Phi_d = prod_{n | d} (x^n - 1)^{mu(d/n)}
    e = Counter()
    for d, k in c.items():
        for n in _divisors(d):
            e[n] += k * _mobius(d // n)
    p_list = [n for n, k in e.items() for _ in range(max(k, 0))]
    q_list = [n for n, k in e.items() for _ in range(max(-k, 0))]
    params = hyp_params_from_cyclotomic(p_list, q_list)
    if params.alpha != alpha or params.beta != beta:
        raise MalformedParameters("pair is not reproduced by its cyclotomic data")  # pragma: no cover
    return params


def s_multiplicity(params: HypParams, m: int, qx: int) -> int:
    """Multiplicity of exp(2 pi i m / qx) as a root of D(x)."""
    if not params.is_good(qx + 1):
        raise BadPrimeForParameters(f"q={qx + 1} is not good for these parameters")
    order = qx // gcd(m % qx, qx)
    return dict(params.D_factors).get(order, 0)


def _real_or_raise(value, what: str, tol: float = 1e-6):
    if abs(complex(value).imag) > tol:
        raise PrecisionError(f"{what} has imaginary part {complex(value).imag:.3g}")
    return value.real


def _weight(q: int, exponents: np.ndarray, table: GaussTable) -> np.ndarray:
    if table.high_precision:
        import mpmath

        return np.array([mpmath.mpf(q) ** int(e) for e in exponents], dtype=object)
    return np.power(float(q), exponents.astype(float))


def hyp_sum(params: HypParams, t: int, ctx: FieldContext, table: GaussTable | None = None):
    """H_q(alpha, beta | t) for t in F_q^x; returns the real part (float or mpf)."""
    table = table or gauss_table(ctx)
    q, qx = ctx.q, ctx.qx
    if not params.is_good(q):
        raise BadPrimeForParameters(f"q={q} is not good for these parameters")
    if t == 0:
        raise InvalidArgument("t must be nonzero")
    r, s = len(params.p_list), len(params.q_list)
    M = params.M
    arg = ctx.mul(ctx.from_int(params.epsilon), ctx.from_rational(M.denominator, M.numerator))
    arg = ctx.mul(arg, t)
    m = np.arange(qx, dtype=np.int64)
    D = dict(params.D_factors)
    orders = qx // np.gcd(m, qx)
    s_m = np.array([D.get(int(o), 0) for o in orders], dtype=np.int64)
    with table.workprec():
        terms = _weight(q, s_m - s_m[0], table) * table.omega_power(arg, m)
        for pj in params.p_list:
            terms = terms * table.values[(pj * m) % qx]
        for qj in params.q_list:
            terms = terms * table.values[(-qj * m) % qx]
        value = terms.sum() * ((-1) ** (r + s)) / (1 - q)
        return _real_or_raise(value, "H_q")


# -- gamma triples -----------------------------------------------------------


def _multiset_minus(a: Counter, b: Counter) -> Counter:
    out = Counter(a)
    out.subtract(b)
    return +out


@dataclass(frozen=True)
class GammaTriple:
    gamma: tuple[int, ...]
    delta: tuple[int, ...]
    N: int
    induced_alpha: tuple[Fraction, ...]
    induced_beta: tuple[Fraction, ...]
    D_delta: tuple[tuple[Fraction, int], ...]
    gamma_power: Fraction

    def s_delta(self, m: int, qx: int) -> int:
        """Multiplicity of exp(2 pi i m / qx) in D_delta."""
        return dict(self.D_delta).get(angle(Fraction(m, qx)), 0)

    def scaled(self, k: int) -> "GammaTriple":
        """The triple (gamma, k delta, N)."""
        return gamma_triple(self.gamma, [k * d for d in self.delta], self.N)

    def stabilizer(self) -> list[int]:
        """Units k mod lcd(alpha, beta) with k*alpha = alpha and k*beta = beta."""
        L = reduce(lcm, (x.denominator for x in self.induced_alpha + self.induced_beta), 1)
        a, b = Counter(self.induced_alpha), Counter(self.induced_beta)
        out = []
        for k in range(1, L + 1):
            if gcd(k, L) != 1:
                continue
            if Counter(angle(k * x) for x in a.elements()) == a and Counter(angle(k * x) for x in b.elements()) == b:
                out.append(k % L)
        return sorted(out)

    @property
    def lcd(self) -> int:
        return reduce(lcm, (x.denominator for x in self.induced_alpha + self.induced_beta), 1)


def _roots_of(a: int, b: int, N: int) -> list[Fraction]:
    """Angles of the roots of T^a - zeta_N^b (a > 0)."""
    return [angle((Fraction(b, N) + k) / a) for k in range(a)]


def gamma_triple(gamma: Sequence[int], delta: Sequence[int], N: int) -> GammaTriple:
    gamma = tuple(int(g) for g in gamma)
    delta = tuple(int(d) for d in delta)
    if len(gamma) != len(delta):
        raise InvalidGammaTriple("gamma and delta must have the same length")
    if N < 1:
        raise InvalidGammaTriple("N must be positive")
    if sum(gamma) != 0 or reduce(gcd, gamma, 0) != 1:
        raise InvalidGammaTriple("need sum(gamma) = 0 and gcd(gamma) = 1")
    num, den = Counter(), Counter()
    for g, d in zip(gamma, delta):
        if g < 0:
            num.update(_roots_of(-g, d, N))
        elif g > 0:
            den.update(_roots_of(g, -d, N))
    common = num & den
    alpha = _sorted(_multiset_minus(num, common).elements())
    beta = _sorted(_multiset_minus(den, common).elements())
    power = Fraction(1)
    for g in gamma:
        if g:
            power *= Fraction(g) ** g
    return GammaTriple(gamma, delta, N, alpha, beta, tuple(sorted(common.items())), power)


def gamma_sum(tri: GammaTriple, t: int, ctx: FieldContext, table: GaussTable | None = None):
    """F_q(gamma, delta, N | t) as a complex number."""
    table = table or gauss_table(ctx)
    q, qx = ctx.q, ctx.qx
    if qx % tri.N:
        raise DivisibilityError(f"N={tri.N} does not divide q-1={qx}")
    if t == 0:
        raise InvalidArgument("t must be nonzero")
    step = qx // tri.N
    m = np.arange(qx, dtype=np.int64)
    gp = tri.gamma_power
    arg = ctx.mul(ctx.from_rational(gp.numerator, gp.denominator), t)
    s0 = tri.s_delta(0, qx)
    s_neg = np.array([tri.s_delta(-int(k), qx) - s0 for k in m], dtype=np.int64)
    with table.workprec():
        terms = _weight(q, s_neg, table) * table.omega_power(arg, m)
        for g, d in zip(tri.gamma, tri.delta):
            shift = d * step
            terms = terms * table.values[(-g * m + shift) % qx] / table[shift]
        return terms.sum() / (1 - q)
