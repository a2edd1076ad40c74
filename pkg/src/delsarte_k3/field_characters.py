"""Finite fields F_{p^u}, multiplicative/additive characters and Gauss sums.

Elements of F_q are encoded as integers ``c_0 + c_1 p + ... + c_{u-1} p^{u-1}``
where ``c_0 + c_1 x + ...`` is the residue modulo the field's defining
polynomial.  For ``u = 1`` this is the usual representative in ``[0, p)``.

The multiplicative character is ``omega(x) = exp(2 pi i dlog(x) / qx)`` with
respect to a fixed generator, and the additive character is
``Theta(x) = exp(2 pi i Tr(x) / p)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import mpmath
import numpy as np

__all__ = [
    "FieldContext",
    "GaussTable",
    "InvalidDegree",
    "InvalidDivisor",
    "InvalidPrime",
    "PrecisionError",
    "certify_integer",
    "default_precision",
    "gauss_table",
    "hasse_davenport_residual",
    "is_prime",
    "make_field",
]

MAX_FIELD_SIZE = 10**7
SUPPORTED_PRECISIONS = (53, 128, 256)


class InvalidPrime(ValueError):
    pass


class InvalidDegree(ValueError):
    pass


class InvalidDivisor(ValueError):
    pass


class PrecisionError(ArithmeticError):
    """Raised when a numeric value cannot be certified at the working precision."""

    def __init__(self, message: str, required_bits: int | None = None):
        super().__init__(message)
        self.required_bits = required_bits


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over F_p (coefficient lists, lowest degree first) ---


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _poly_trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _decode(x: int, p: int, u: int) -> list[int]:
    out = []
    for _ in range(u):
        x, r = divmod(x, p)
        out.append(r)
    return _poly_trim(out)


def _encode(coeffs: Sequence[int], p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            divisor = _decode(code, p, d)
            divisor = divisor + [0] * (d - len(divisor)) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def _smallest_irreducible(p: int, u: int) -> tuple[int, ...]:
    # monic x^u + c_{u-1}x^{u-1} + ... + c_0 ordered by the integer code of (c_0..c_{u-1})
    if u == 1:
        return (0, 1)
    for code in range(p**u):
        low = _decode(code, p, u)
        poly = low + [0] * (u - len(low)) + [1]
        if poly[0] != 0 and _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldContext:
    """The field F_q with q = p^u, a fixed generator and discrete-log tables."""

    p: int
    u: int
    modulus: tuple[int, ...]
    generator: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.u

    @property
    def qx(self) -> int:
        return self.q - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldContext) and (self.p, self.u) == (other.p, other.u)

    def __hash__(self) -> int:
        return hash((self.p, self.u))

    # -- element arithmetic ------------------------------------------------

    def from_int(self, n: int) -> int:
        return n % self.p

    def digits(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        out = np.empty(x.shape + (self.u,), dtype=np.int64)
        for i in range(self.u):
            x, out[..., i] = np.divmod(x, self.p)
        return out

    def undigits(self, d: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.u, dtype=np.int64)
        return (d * weights).sum(axis=-1)

    def add(self, a, b):
        if self.u == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p if np.ndim(a) or np.ndim(b) else (a + b) % self.p
        res = self.undigits((self.digits(a) + self.digits(b)) % self.p)
        return int(res) if res.ndim == 0 else res

    def neg(self, a):
        if self.u == 1:
            return (-np.asarray(a)) % self.p if np.ndim(a) else (-a) % self.p
        res = self.undigits((-self.digits(a)) % self.p)
        return int(res) if res.ndim == 0 else res

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if np.ndim(a) or np.ndim(b):
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            zero = (a == 0) | (b == 0)
            la = self.log_table[np.where(a == 0, 1, a)]
            lb = self.log_table[np.where(b == 0, 1, b)]
            return np.where(zero, 0, self.exp_table[(la + lb) % self.qx])
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % self.qx])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.qx])

    def inv(self, a: int) -> int:
        return self.pow(a, -1)

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("dlog of 0")
        return int(self.log_table[a])

    def from_rational(self, num: int, den: int = 1) -> int:
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
        return self.mul(self.from_int(num), self.inv(self.from_int(den)))

    def omega(self, a: int, m: int = 1) -> complex:
        """omega(a)^m as a double-precision complex number."""
        return complex(np.exp(2j * np.pi * ((self.dlog(a) * m) % self.qx) / self.qx))

    def quadratic_character(self, a: int) -> int:
        """omega(a)^{qx/2} in {+1, -1} (0 for a = 0)."""
        if a == 0:
            return 0
        return 1 if self.dlog(a) % 2 == 0 else -1

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def sqrt_minus_one(self) -> list[int]:
        """Both square roots of -1, ascending, or [] if -1 is not a square."""
        if self.qx % 4:
            return []
        k = self.qx // 4
        return sorted([int(self.exp_table[k]), int(self.exp_table[3 * k])])

    @cached_property
    def trace_by_log(self) -> np.ndarray:
        """trace_by_log[k] = Tr(g^k) as an integer in [0, p)."""
        k = np.arange(self.qx, dtype=np.int64)
        acc = np.zeros((self.qx, self.u), dtype=np.int64)
        for i in range(self.u):
            acc += self.digits(self.exp_table[(k * self.p**i) % self.qx])
        acc %= self.p
        if np.any(acc[:, 1:]):
            raise AssertionError("trace left the prime field")  # pragma: no cover
        return acc[:, 0]

    def trace(self, a: int) -> int:
        return 0 if a == 0 else int(self.trace_by_log[self.dlog(a)])

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


def make_field(p: int, u: int = 1) -> FieldContext:
    """Build F_{p^u} with the smallest irreducible modulus and the smallest generator."""
    if not isinstance(p, int) or p % 2 == 0 or not is_prime(p):
        raise InvalidPrime(f"{p} is not an odd prime")
    if not isinstance(u, int) or u < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {u}")
    q = p**u
    if q > MAX_FIELD_SIZE:
        raise ValueError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
    return _make_field_cached(p, u)


_FIELD_CACHE: dict[tuple[int, int], FieldContext] = {}


def _make_field_cached(p: int, u: int) -> FieldContext:
    key = (p, u)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    q = p**u
    qx = q - 1
    modulus = _smallest_irreducible(p, u)
    factors = prime_factors(qx)

    generator = None
    for code in range(1, q):
        a = _decode(code, p, u)
        if all(_poly_powmod(a, qx // ell, modulus, p) != [1] for ell in factors):
            generator = code
            break
    assert generator is not None

    exp_table = np.empty(qx, dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    if u == 1:
        x = 1
        for k in range(qx):
            exp_table[k] = x
            x = x * generator % p
    else:
        g = _decode(generator, p, u)
        x = [1]
        for k in range(qx):
            exp_table[k] = _encode(x, p)
            x = _poly_mulmod(x, g, modulus, p)
    log_table[exp_table] = np.arange(qx)
    if np.any(log_table[1:] < 0):
        raise AssertionError("generator does not have full order")  # pragma: no cover

    ctx = FieldContext(p, u, modulus, generator, exp_table, log_table)
    _FIELD_CACHE[key] = ctx
    return ctx


def default_precision(q: int) -> int:
    return 53 if q < 500 else 128


@dataclass(frozen=True, eq=False)
class GaussTable:
    """Gauss sums g(m) for every m in Z/qx.

    ``values`` is a complex128 array at 53 bits and an object array of
    ``mpmath.mpc`` at higher precision.  ``roots(n)`` returns the n-th roots of
    unity in the matching representation so that callers never mix precisions.
    """

    ctx: FieldContext
    values: np.ndarray = field(repr=False)
    precision_bits: int

    @property
    def high_precision(self) -> bool:
        return self.precision_bits > 53

    def __getitem__(self, m):
        return self.values[np.asarray(m) % self.ctx.qx] if np.ndim(m) else self.values[m % self.ctx.qx]

    def roots(self, n: int) -> np.ndarray:
        return _roots_of_unity(n, self.precision_bits)

    def omega_power(self, a: int, m) -> np.ndarray:
        """omega(a)^m for an array (or scalar) of exponents m."""
        qx = self.ctx.qx
        return self.roots(qx)[(self.ctx.dlog(a) * np.asarray(m, dtype=np.int64)) % qx]

    def one(self):
        return mpmath.mpc(1) if self.high_precision else 1.0 + 0j

    def workprec(self):
        return mpmath.workprec(self.precision_bits + 20)


_ROOT_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _roots_of_unity(n: int, bits: int) -> np.ndarray:
    key = (n, bits)
    if key not in _ROOT_CACHE:
        if bits <= 53:
            _ROOT_CACHE[key] = np.exp(2j * np.pi * np.arange(n) / n)
        else:
            with mpmath.workprec(bits + 20):
                arr = np.empty(n, dtype=object)
                for k in range(n):
                    arr[k] = mpmath.expjpi(mpmath.mpf(2 * k) / n)
            _ROOT_CACHE[key] = arr
    return _ROOT_CACHE[key]


_GAUSS_CACHE: dict[tuple[int, int, int], GaussTable] = {}


def gauss_table(ctx: FieldContext, precision_bits: int | None = None) -> GaussTable:
    """Gauss sums g(m) = sum_x omega^m(x) Theta(x) for all m in Z/qx.

    At 53 bits the table is one FFT of k -> Theta(g^k).  At higher precision it
    uses the F_p-linearity of the trace: the sets {k : Tr(g^k) = j} for j != 0
    are translates of the j = 1 set by dlog(j), so only two short inner sums
    per m are needed.
    """
    if precision_bits is None:
        precision_bits = default_precision(ctx.q)
    if precision_bits not in SUPPORTED_PRECISIONS:
        raise ValueError(f"precision must be one of {SUPPORTED_PRECISIONS}")
    key = (ctx.p, ctx.u, precision_bits)
    if key in _GAUSS_CACHE:
        return _GAUSS_CACHE[key]

    qx, q, p = ctx.qx, ctx.q, ctx.p
    tr = ctx.trace_by_log
    if precision_bits == 53:
        theta = np.exp(2j * np.pi * tr / p)
        values = np.fft.ifft(theta) * qx
        values[0] = -1.0
        err = np.max(np.abs(np.abs(values[1:]) ** 2 - q)) if qx > 1 else 0.0
    else:
        values = _gauss_high_precision(ctx, precision_bits)
        with mpmath.workprec(precision_bits + 20):
            err = max((abs(abs(v) ** 2 - q) for v in values[1:]), default=mpmath.mpf(0))
            err = float(err)
    if err > 1e-8 * q:
        raise PrecisionError(
            f"|g(m)|^2 deviates from q={q} by {err:.3g}", required_bits=2 * precision_bits
        )
    table = GaussTable(ctx, values, precision_bits)
    _GAUSS_CACHE[key] = table
    return table


def _gauss_high_precision(ctx: FieldContext, bits: int) -> np.ndarray:
    qx, p = ctx.qx, ctx.p
    tr = ctx.trace_by_log
    zeta = _roots_of_unity(qx, bits)
    zeta_p = _roots_of_unity(p, bits)
    k_one = np.nonzero(tr == 1)[0]
    k_zero = np.nonzero(tr == 0)[0]
    dlog_j = [ctx.dlog(j) for j in range(1, p)]
    values = np.empty(qx, dtype=object)
    with mpmath.workprec(bits + 20):
        for m in range(qx):
            a = mpmath.fsum(zeta[(k_one * m) % qx]) if len(k_one) else mpmath.mpc(0)
            b = mpmath.fsum(zeta[(k_zero * m) % qx]) if len(k_zero) else mpmath.mpc(0)
            twist = mpmath.fsum(zeta_p[j] * zeta[(dj * m) % qx] for j, dj in zip(range(1, p), dlog_j))
            values[m] = b + a * twist
        values[0] = mpmath.mpc(-1)
    return values


def hasse_davenport_residual(table: GaussTable, N: int, m: int) -> float:
    """|g(Nm) + omega(N)^{Nm} prod_j g(m + j qx/N) / g(j qx/N)|."""
    ctx = table.ctx
    qx = ctx.qx
    if N <= 0 or qx % N:
        raise InvalidDivisor(f"{N} does not divide {qx}")
    step = qx // N
    with table.workprec():
        prod = table.one() * table.omega_power(ctx.from_int(N), N * m)
        for j in range(N):
            prod = prod * table[m + j * step] / table[j * step]
        return float(abs(table[N * m] + prod))


def certify_integer(value, what: str = "value", tol: float = 1e-6) -> int:
    """Round a (complex) number to an integer, refusing if it is not within tol."""
    z = complex(value)
    n = round(z.real)
    if abs(z.real - n) > tol or abs(z.imag) > tol:
        raise PrecisionError(f"{what} = {z!r} is not within {tol} of an integer")
    return int(n)
